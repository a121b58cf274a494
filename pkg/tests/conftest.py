"""Shared builders for the test suite."""

from __future__ import annotations

import pytest

from gluesurf.fourlines import TABLE, LinePairBijections, build_four_lines
from gluesurf.gluing import (
    CurveComponent,
    GluingData,
    NormalComponent,
    ValidatedGluing,
    validate_gluing,
)

_ROWS = {row.label: row for row in TABLE}


def table_element(label: str) -> LinePairBijections:
    """The built-in classifier's stored representative for a table row."""
    return _ROWS[label].representative


def table_gluing(label: str) -> ValidatedGluing:
    return validate_gluing(build_four_lines(table_element(label)))


def toy_pair(npoints: int, shift: int) -> GluingData:
    """Two genus-0 curves on one simply connected component.

    sigma matches x_i with y_i; tau sends x_i to y_{i+shift}.  shift=1
    merges all nodes into a single point whose complement loop has order
    npoints in the fundamental group.
    """
    xs = [f"x{i}" for i in range(npoints)]
    ys = [f"y{i}" for i in range(npoints)]
    sigma: dict[str, str] = {}
    tau: dict[str, str] = {}
    for i in range(npoints):
        sigma[xs[i]] = ys[i]
        sigma[ys[i]] = xs[i]
        j = (i + shift) % npoints
        tau[xs[i]] = ys[j]
        tau[ys[j]] = xs[i]
    base = NormalComponent(id="base", chi_O=1, k_plus_d_sq=1)
    return GluingData(
        normal_components=(base,),
        curve_components=(
            CurveComponent("C1", "base", 0, tuple(xs), (1,)),
            CurveComponent("C2", "base", 0, tuple(ys), (1,)),
        ),
        sigma=sigma,
        tau_components={"C1": "C2", "C2": "C1"},
        tau_points=tau,
    )


@pytest.fixture
def x01() -> ValidatedGluing:
    return table_gluing("X0.1")


@pytest.fixture
def x02() -> ValidatedGluing:
    return table_gluing("X0.2")


@pytest.fixture
def x31() -> ValidatedGluing:
    return table_gluing("X3.1")
