"""Numerical invariants of the glued surface: irregularity, genus, K², Picard data.

The irregularity comes from a small integer matrix: rows are the
degenerate cusps, columns a basis of anti-invariant locally constant
functions on the normalized conductor, entries the alternating sums of
function values over each cusp's point cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    GeometricGenusNonzeroError,
    MissingFieldError,
    NegativeResultError,
    NormalizationIrregularError,
    SurfaceNotConnectedError,
)
from .gluing import DegenerateCusp, ValidatedGluing, cusps, euler_characteristics
from .grouptheory import Fingerprint, GroupPresentation, abelianization
from .intlinalg import AbelianGroup, IntegerMatrix, snf
from .topology import HomologyOfX, homology_of_X, pi1_presentation


def anti_invariant_basis(g: ValidatedGluing) -> tuple[tuple[str, str], ...]:
    """One (plus-component, minus-component) pair per involution orbit.

    The function is +1 on the lexicographically smaller component and -1
    on its partner; fixed components would contribute nothing and are
    rejected at validation.
    """
    return g.tau_pairs()


def cusp_matrix(g: ValidatedGluing) -> IntegerMatrix:
    """Rows: degenerate cusps in canonical order; columns: basis pairs.

    Entry = sum over the cusp's cycle of f(r_i) - f(s_i).
    """
    for n in g.normals:
        if n.q != 0:
            raise NormalizationIrregularError(
                f"normal component {n.id} has q = {n.q}; the algorithm needs q = 0"
            )
    basis = anti_invariant_basis(g)
    rows = []
    for cusp in cusps(g):
        row = []
        for plus, minus in basis:
            def value(point: str) -> int:
                comp = g.component_of(point)
                if comp == plus:
                    return 1
                if comp == minus:
                    return -1
                return 0

            row.append(
                sum(value(r) - value(s) for r, s in zip(cusp.r_cycle, cusp.s_cycle))
            )
        rows.append(row)
    return IntegerMatrix.from_rows(rows, cols=len(basis))


def irregularity(g: ValidatedGluing) -> tuple[int, int]:
    """(q, p_g) of the glued surface; requires X connected and regular normalization."""
    if g.x_component_count != 1:
        raise SurfaceNotConnectedError(
            f"X has {g.x_component_count} components; the count enters the formula"
        )
    m = len(g.normals)
    matrix = cusp_matrix(g)
    kernel_dim = matrix.cols - snf(matrix).rank
    q = kernel_dim - m + 1
    chi = euler_characteristics(g).chi_x
    p_g = chi - 1 + q
    if q < 0 or p_g < 0:
        raise NegativeResultError(f"q = {q}, p_g = {p_g}; the input is inconsistent")
    return q, p_g


def k_squared(g: ValidatedGluing) -> int:
    """Self-intersection of the canonical divisor, summed from the descriptors."""
    total = 0
    for n in g.normals:
        if n.k_plus_d_sq is None:
            raise MissingFieldError(f"normal component {n.id} lacks k_plus_d_sq")
        total += n.k_plus_d_sq
    return total


@dataclass(frozen=True)
class InvariantReport:
    """Everything the CLI reports for one glued surface."""

    chi: int
    q: int
    p_g: int
    k_squared: int
    cusp_partition: tuple[DegenerateCusp, ...]
    homology: HomologyOfX
    pi1: GroupPresentation
    pi1_abelianization: AbelianGroup
    fingerprint: Fingerprint | None = None

    def __post_init__(self):
        if self.p_g != self.chi - 1 + self.q:
            raise ValueError("p_g, chi and q are inconsistent")


def compute_report(g: ValidatedGluing, *, with_fingerprint: bool = False,
                   catalog=None, budget: int | None = None) -> InvariantReport:
    from .grouptheory import DEFAULT_BUDGET, fingerprint as _fingerprint, tietze_simplify

    chi = euler_characteristics(g).chi_x
    q, p_g = irregularity(g)
    presentation = pi1_presentation(g)
    fp = None
    if with_fingerprint:
        fp = _fingerprint(
            tietze_simplify(presentation),
            catalog=catalog,
            budget=DEFAULT_BUDGET if budget is None else budget,
        )
    return InvariantReport(
        chi=chi,
        q=q,
        p_g=p_g,
        k_squared=k_squared(g),
        cusp_partition=cusps(g),
        homology=homology_of_X(g),
        pi1=presentation,
        pi1_abelianization=abelianization(presentation),
        fingerprint=fp,
    )


@dataclass(frozen=True)
class PicardSummary:
    """Rank data of the Picard group when the geometric genus vanishes.

    ``structure`` spells out the connected component only in the clean
    case q = b1, where it is a torus of that dimension.
    """

    pic0_dim: int
    b1: int
    ns_target: AbelianGroup
    structure: str | None


def picard_summary(report: InvariantReport) -> PicardSummary:
    if report.p_g != 0:
        raise GeometricGenusNonzeroError(
            f"p_g = {report.p_g}; the exponential-sequence argument needs p_g = 0"
        )
    b1 = report.homology.h1.free_rank
    # H^2 via universal coefficients: free part of H_2 plus torsion of H_1
    ns_target = AbelianGroup(report.homology.h2.free_rank, report.homology.h1.torsion)
    structure = None
    if report.q == b1:
        if report.q == 0:
            structure = "1"
        elif report.q == 1:
            structure = "C*"
        else:
            structure = f"C*^{report.q}"
    return PicardSummary(
        pic0_dim=report.q,
        b1=b1,
        ns_target=ns_target,
        structure=structure,
    )
