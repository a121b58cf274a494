"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 search budget exceeded,
4 valid-but-unsupported configuration.  JSON output has sorted keys so
identical inputs give byte-identical documents.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from .errors import BudgetExceededError, InputError, UnsupportedError
from .fourlines import enumerate_orbits, generating_set, perm_to_cycles, pretty_node
from .gluing import gluing_from_dict, node_id, validate_gluing
from .grouptheory import (
    DEFAULT_BUDGET,
    abelianization,
    catalog_group,
    default_catalog,
    fingerprint,
    hom_count,
    presentation_from_dict,
    presentation_to_dict,
    tietze_simplify,
    word_to_str,
)
from .invariants import InvariantReport, compute_report
from .topology import homology_of_X, pi1_presentation


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _load_gluing(path: str):
    return validate_gluing(gluing_from_dict(_load_json(path)))


def _emit_json(payload) -> None:
    click.echo(json.dumps(payload, sort_keys=True, indent=2))


def _catalog_from_option(names: str | None):
    if names is None:
        return default_catalog()
    return tuple(catalog_group(n.strip()) for n in names.split(",") if n.strip())


def _with_exit_codes(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceededError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)
        except UnsupportedError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(4)
        except BrokenPipeError:
            # downstream pager closed early; silence the shutdown flush too
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
            sys.exit(0)
        except (InputError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text",
    help="Output format.",
)
budget_option = click.option(
    "--budget", type=int, default=DEFAULT_BUDGET, show_default=True,
    help="Maximum number of image tuples per homomorphism search.",
)
catalog_option = click.option(
    "--catalog", default=None,
    help="Comma-separated finite groups to fingerprint against (default: built-in list).",
)
fingerprint_option = click.option(
    "--fingerprint", "with_fingerprint", is_flag=True,
    help="Also compute the finite-quotient fingerprint.",
)


def report_to_dict(report: InvariantReport) -> dict:
    pi1 = {
        "generators": list(report.pi1.generators),
        "relators": [word_to_str(w, report.pi1.generators) for w in report.pi1.relators],
        "abelianization": report.pi1_abelianization.as_dict(),
    }
    if report.fingerprint is not None:
        pi1["fingerprint"] = report.fingerprint.as_dict()
    return {
        "chi": report.chi,
        "q": report.q,
        "pg": report.p_g,
        "k2": report.k_squared,
        "cusps": [[node_id(n) for n in c.nodes] for c in report.cusp_partition],
        "homology": [h.as_dict() for h in report.homology.as_tuple()],
        "pi1": pi1,
    }


def _render_report_text(report: InvariantReport) -> str:
    lines = [
        f"chi(O_X) = {report.chi}",
        f"q        = {report.q}",
        f"p_g      = {report.p_g}",
        f"K^2      = {report.k_squared}",
        "cusps    = " + "  ".join(
            "{" + ",".join(node_id(n) for n in c.nodes) + "}" for c in report.cusp_partition
        ),
        "homology = " + ", ".join(
            f"H{i}={h}" for i, h in enumerate(report.homology.as_tuple())
        ),
        f"pi1      = {report.pi1}",
        f"pi1 ab.  = {report.pi1_abelianization}",
    ]
    if report.fingerprint is not None:
        lines.append(f"fingerprint = {report.fingerprint}")
    return "\n".join(lines)


@click.group()
def main():
    """Invariants of non-normal surfaces described by combinatorial gluing data."""


@main.command("classify-four-lines")
@format_option
@_with_exit_codes
def cmd_classify_four_lines(fmt):
    """Classify all gluings of the plane along four general lines."""
    records = enumerate_orbits()
    if fmt == "json":
        _emit_json([_orbit_record_to_dict(r) for r in records])
        return
    header = ("surface", "orbit", "chi", "q", "degenerate cusps", "|Aut|", "Aut")
    table = [header]
    for r in records:
        partition = " ".join(
            "{" + ",".join(pretty_node(node_id(n)) for n in c.nodes) + "}"
            for c in r.report.cusp_partition
        )
        gens = generating_set(r.stabilizer)
        table.append((
            r.table_label,
            str(r.orbit_size),
            str(r.report.chi),
            str(r.report.q),
            partition,
            str(len(r.stabilizer)),
            ", ".join(perm_to_cycles(g) for g in gens) if gens else "trivial",
        ))
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        click.echo("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _orbit_record_to_dict(r) -> dict:
    return {
        "label": r.table_label,
        "orbit_size": r.orbit_size,
        "representative": {
            "phi12": list(r.representative.phi12),
            "phi34": list(r.representative.phi34),
        },
        "stabilizer": [perm_to_cycles(g) for g in r.stabilizer],
        "stabilizer_order": len(r.stabilizer),
        "report": report_to_dict(r.report),
    }


@main.command("invariants")
@click.argument("path", type=click.Path())
@format_option
@fingerprint_option
@catalog_option
@budget_option
@_with_exit_codes
def cmd_invariants(path, fmt, with_fingerprint, catalog, budget):
    """Full invariant report for a gluing-data JSON file."""
    vg = _load_gluing(path)
    report = compute_report(
        vg,
        with_fingerprint=with_fingerprint,
        catalog=_catalog_from_option(catalog),
        budget=budget,
    )
    if fmt == "json":
        _emit_json(report_to_dict(report))
    else:
        click.echo(_render_report_text(report))


@main.command("pi1")
@click.argument("path", type=click.Path())
@format_option
@fingerprint_option
@catalog_option
@budget_option
@_with_exit_codes
def cmd_pi1(path, fmt, with_fingerprint, catalog, budget):
    """Fundamental-group presentation of the glued surface."""
    vg = _load_gluing(path)
    raw = pi1_presentation(vg)
    simplified = tietze_simplify(raw)
    ab = abelianization(raw)
    fp = None
    if with_fingerprint:
        fp = fingerprint(simplified, catalog=_catalog_from_option(catalog), budget=budget)
    if fmt == "json":
        payload = {
            "presentation": presentation_to_dict(raw),
            "simplified": presentation_to_dict(simplified),
            "abelianization": ab.as_dict(),
        }
        if fp is not None:
            payload["fingerprint"] = fp.as_dict()
        _emit_json(payload)
        return
    click.echo(f"pi1        = {raw}")
    click.echo(f"simplified = {simplified}")
    click.echo(f"abelianized = {ab}")
    if fp is not None:
        click.echo(f"fingerprint = {fp}")


@main.command("homology")
@click.argument("path", type=click.Path())
@format_option
@_with_exit_codes
def cmd_homology(path, fmt):
    """Integral homology groups of the glued surface."""
    vg = _load_gluing(path)
    groups = homology_of_X(vg)
    if fmt == "json":
        _emit_json({"homology": [h.as_dict() for h in groups.as_tuple()]})
        return
    for i, h in enumerate(groups.as_tuple()):
        click.echo(f"H{i} = {h}")


@main.command("distinguish")
@click.argument("path1", type=click.Path())
@click.argument("path2", type=click.Path())
@format_option
@catalog_option
@budget_option
@_with_exit_codes
def cmd_distinguish(path1, path2, fmt, catalog, budget):
    """Compare fundamental groups of two gluings by finite-quotient counts.

    Differing counts prove the groups non-isomorphic; equal counts prove
    nothing, so the verdict is never 'isomorphic'.
    """
    groups = _catalog_from_option(catalog)
    fps = []
    for path in (path1, path2):
        vg = _load_gluing(path)
        fps.append(fingerprint(tietze_simplify(pi1_presentation(vg)),
                               catalog=groups, budget=budget))
    left, right = fps
    witness = None
    for (name, lt, ls), (_, rt, rs) in zip(left.counts, right.counts):
        if (lt, ls) != (rt, rs):
            witness = (name, (lt, ls), (rt, rs))
            break
    if fmt == "json":
        payload = {
            "verdict": "DISTINGUISHED" if witness else "INCONCLUSIVE",
            "witness": witness[0] if witness else None,
            "fingerprints": [left.as_dict(), right.as_dict()],
        }
        _emit_json(payload)
        return
    if witness:
        name, (lt, ls), (rt, rs) = witness
        click.echo(
            f"DISTINGUISHED at {name}: homomorphisms {lt} vs {rt}, "
            f"surjections {ls} vs {rs}"
        )
    else:
        click.echo("INCONCLUSIVE: fingerprints agree over the whole catalog")


@main.command("homcount")
@click.argument("path", type=click.Path())
@click.option("--group", "group_names", multiple=True,
              help="Target group name; repeatable.  Default: the whole catalog.")
@format_option
@budget_option
@_with_exit_codes
def cmd_homcount(path, group_names, fmt, budget):
    """Count homomorphisms from a presentation JSON file into finite groups."""
    presentation = presentation_from_dict(_load_json(path))
    groups = (
        tuple(catalog_group(n) for n in group_names)
        if group_names else default_catalog()
    )
    results = {g.name: hom_count(presentation, g, budget) for g in groups}
    if fmt == "json":
        _emit_json({name: list(counts) for name, counts in results.items()})
        return
    for g in groups:
        total, surj = results[g.name]
        click.echo(f"{g.name}: total {total}, surjective {surj}")


if __name__ == "__main__":
    main()
