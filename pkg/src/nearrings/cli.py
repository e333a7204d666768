"""Command-line front door: group, verify, analyze, enumerate, aut, export.

Exit codes: 0 = success / all checks pass, 1 = a mathematical check
failed (with a counterexample in the report), 2 = usage or parse error.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click
import numpy as np

from . import __version__
from .analyze import (
    check_frattini_characterization,
    check_identity_order,
    check_unit_structure,
    full_profile,
    lambda_embedding,
)
from .aut import aut_brute, aut_order_formula, check_generator_companions, closure_audit
from .cayley import frattini_pgroup, group_from_params
from .dsl import ParseError, triple_from_exprs
from .maps import MapTriple, canonical_maps, dumps_triple, loads_triple, mul_table
from .pgroup import add, add_table, elements, make_params, order_vector, rank
from .search import dedup_up_to_aut, enumerate_local
from .verify import EXHAUSTIVE, SAMPLED, check_conditions, default_mode_for, verify_all


def _params(p, m, n, d):
    try:
        return make_params(p, m, n, d)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _manifest(subcommand: str, g, t0: float, **extra) -> dict:
    return {
        "tool": "nearrings",
        "version": __version__,
        "subcommand": subcommand,
        "params": g.as_dict(),
        "wall_time_seconds": round(time.perf_counter() - t0, 6),
        **extra,
    }


def _write_json(path: Path, doc: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def params_options(f):
    for name in ("d", "n", "m", "p"):
        f = click.option(f"--{name}", type=int, required=True)(f)
    return f


def source_options(f):
    f = click.option("--canonical", is_flag=True, help="use the canonical multiplication")(f)
    f = click.option("--maps", "maps_file", type=click.Path(exists=True, dir_okay=False),
                     help="map-triple JSON file")(f)
    f = click.option("--alpha", help="expression for alpha(x)")(f)
    f = click.option("--beta", help="expression for beta(x)")(f)
    f = click.option("--gamma", help="expression for gamma(x)")(f)
    return f


def _resolve_maps(g, canonical, maps_file, alpha, beta, gamma) -> MapTriple:
    chosen = sum([bool(canonical), bool(maps_file), any([alpha, beta, gamma])])
    if chosen != 1:
        raise click.UsageError(
            "choose exactly one source: --canonical, --maps FILE, or --alpha/--beta/--gamma"
        )
    if canonical:
        return canonical_maps(g)
    if maps_file:
        try:
            triple = loads_triple(Path(maps_file).read_text())
        except (ValueError, KeyError) as exc:
            raise click.UsageError(f"malformed map file {maps_file}: {exc}")
        if triple.params != g:
            raise click.UsageError("map file parameters do not match --p/--m/--n/--d")
        return triple
    if not (alpha and beta and gamma):
        raise click.UsageError("all three of --alpha, --beta, --gamma are required")
    try:
        return triple_from_exprs(g, alpha, beta, gamma)
    except ParseError as exc:
        raise click.UsageError(str(exc))
    except ValueError as exc:
        raise click.UsageError(str(exc))


@click.group()
@click.version_option(__version__)
def main():
    """Local nearrings on the groups G(p^m, p^n, p^d)."""


@main.command("group")
@params_options
def cmd_group(p, m, n, d):
    """Print structural facts about G(p^m, p^n, p^d)."""
    g = _params(p, m, n, d)
    orders = order_vector(g)
    cg = group_from_params(g)
    phi = frattini_pgroup(cg)
    a, b = (1, 0, 0), (0, 1, 0)
    center = sum(
        1 for x in elements(g) if add(g, x, a) == add(g, a, x) and add(g, x, b) == add(g, b, x)
    )
    click.echo(f"group G({g.p}^{g.m}, {g.p}^{g.n}, {g.p}^{g.d})")
    click.echo(f"order            {g.order}")
    click.echo(f"exponent         {int(orders.max())}")
    click.echo(f"|Phi(G)|         {len(phi)}")
    click.echo(f"|Z(G)|           {center}")
    click.echo(f"|Aut(G)| formula {aut_order_formula(g)}")


@main.command("verify")
@params_options
@source_options
@click.option("--mode", type=click.Choice([EXHAUSTIVE, SAMPLED]), default=None,
              help="default: exhaustive up to order 243, sampled above")
@click.option("--samples", type=int, default=10**6, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(), default=None, help="report JSON path")
def cmd_verify(p, m, n, d, canonical, maps_file, alpha, beta, gamma, mode, samples, seed, out):
    """Verify the nearring axioms and the map conditions; exit 1 on failure."""
    t0 = time.perf_counter()
    g = _params(p, m, n, d)
    triple = _resolve_maps(g, canonical, maps_file, alpha, beta, gamma)
    mode = mode or default_mode_for(g)
    if mode == SAMPLED and seed is None:
        raise click.UsageError("sampled mode requires --seed")
    tables = (add_table(g), mul_table(g, triple))
    report = verify_all(g, triple, mode=mode, samples=samples, seed=seed, tables=tables)
    conditions = check_conditions(g, triple, tables=tables)
    profile = full_profile(g, triple, tables=tables)
    for check in report.checks + conditions.checks:
        status = "pass" if check.passed else "FAIL"
        ce = "" if check.passed else f"  counterexample: {check.counterexample}"
        click.echo(f"{check.name:<32} {status}{ce}")
    click.echo(f"local: {profile.is_local}  |R*| = {profile.unit_count}")
    if out:
        _write_json(
            Path(out),
            {
                "manifest": _manifest("verify", g, t0, mode=mode, seed=seed,
                                      samples=samples if mode == SAMPLED else None),
                "axioms": report.to_dict(),
                "conditions": conditions.to_dict(),
                "profile": profile.to_dict(),
            },
        )
    sys.exit(0 if report.passed and conditions.passed else 1)


@main.command("analyze")
@params_options
@source_options
@click.option("--out", type=click.Path(), default=None)
def cmd_analyze(p, m, n, d, canonical, maps_file, alpha, beta, gamma, out):
    """Structure analysis: units, L, embeddings, Frattini characterization."""
    t0 = time.perf_counter()
    g = _params(p, m, n, d)
    triple = _resolve_maps(g, canonical, maps_file, alpha, beta, gamma)
    tables = (add_table(g), mul_table(g, triple))
    if not verify_all(g, triple, mode=default_mode_for(g),
                      seed=0 if default_mode_for(g) == SAMPLED else None,
                      tables=tables).passed:
        click.echo("candidate fails the nearring axioms; run `verify` for details")
        sys.exit(1)
    profile = full_profile(g, triple, tables=tables)
    th1 = check_unit_structure(g, triple, profile, tables=tables)
    ident = check_identity_order(g, triple, profile, tables=tables)
    lam = lambda_embedding(g, triple, profile, tables=tables)
    fr = check_frattini_characterization(g, triple, profile, tables=tables)
    rows = [
        ("local", profile.is_local),
        ("|R*|", profile.unit_count),
        ("|L|", len(profile.nonunits)),
        ("index of L", profile.l_index),
        ("x1 criterion", profile.x1_criterion_holds),
        ("identity add. order", profile.identity_additive_order),
        ("exponent", profile.exponent),
        ("R* abelian", profile.mult_group.get("abelian")),
        ("index/criterion checks", "pass" if th1["passed"] else "FAIL"),
        ("identity-order law", "pass" if ident["passed"] else "FAIL"),
        ("left-mul embedding", "pass" if lam["passed"] else "FAIL"),
        ("Frattini charact.", fr.get("status", "ok") if not fr["passed"] else "pass"),
    ]
    for label, value in rows:
        click.echo(f"{label:<24} {value}")
    ok = th1["passed"] and ident["passed"] and lam["passed"] and fr["passed"]
    if out:
        _write_json(
            Path(out),
            {
                "manifest": _manifest("analyze", g, t0),
                "profile": profile.to_dict(),
                "structure_checks": {
                    "index_and_criterion": th1,
                    "identity_order": ident,
                    "left_mul_embedding": lam,
                    "frattini": fr,
                },
            },
        )
    sys.exit(0 if ok else 1)


@main.command("enumerate")
@params_options
@click.option("--out", type=click.Path(), required=True, help="output directory")
@click.option("--max-solutions", type=int, default=None)
@click.option("--subfamily", default=None,
              help="pin maps, e.g. 'alpha=0;beta=x1' (search runs over the rest)")
@click.option("--dedup", is_flag=True, help="also partition solutions into Aut(R+)-orbits")
@click.option("--parallel", type=int, default=1, show_default=True)
@click.option("--no-prune", is_flag=True, help="disable the locality pruning heuristics")
@click.option("--allow-non-zero-symmetric", is_flag=True)
@click.option("--max-order", type=int, default=81, show_default=True)
def cmd_enumerate(p, m, n, d, out, max_solutions, subfamily, dedup, parallel,
                  no_prune, allow_non_zero_symmetric, max_order):
    """Enumerate all local nearring multiplications on G(p^m, p^n, p^d)."""
    t0 = time.perf_counter()
    g = _params(p, m, n, d)
    fixed = None
    if subfamily:
        fixed = {}
        for part in subfamily.split(";"):
            if "=" not in part:
                raise click.UsageError(f"bad --subfamily entry {part!r}; expected name=expr")
            name, expr = part.split("=", 1)
            fixed[name.strip()] = expr.strip()
    try:
        result = enumerate_local(
            g,
            max_solutions=max_solutions,
            workers=parallel,
            prune=not no_prune,
            zero_symmetric=not allow_non_zero_symmetric,
            fixed_exprs=fixed,
            order_bound=max_order,
        )
    except (ParseError, ValueError) as exc:
        raise click.UsageError(str(exc))
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, triple in enumerate(result.solutions):
        (out_dir / f"solution_{i:05d}.json").write_text(dumps_triple(triple))
    summary = {
        "manifest": _manifest("enumerate", g, t0, options=result.options),
        "count": len(result.solutions),
        "stats": result.stats.to_dict(),
    }
    if dedup:
        orbits = dedup_up_to_aut(g, result.solutions)
        summary["dedup"] = {
            "orbit_count": orbits["orbit_count"],
            "stabilizer_size": orbits["stabilizer_size"],
            "excluded_automorphisms": orbits["excluded_automorphisms"],
            "orbit_sizes_in_input": [o["members_in_input"] for o in orbits["orbits"]],
            "representatives": [o["representative"].to_json_dict() for o in orbits["orbits"]],
        }
    _write_json(out_dir / "summary.json", summary)
    click.echo(f"{len(result.solutions)} solutions "
               f"({result.stats.nodes} nodes, {result.stats.conflicts} conflicts)")


@main.command("aut")
@params_options
@click.option("--max-order", type=int, default=729, show_default=True)
@click.option("--full-audit", is_flag=True, help="table-level homomorphism audit per candidate")
@click.option("--out", type=click.Path(), default=None)
def cmd_aut(p, m, n, d, max_order, full_audit, out):
    """Brute-force |Aut(G)| versus the closed-form order."""
    t0 = time.perf_counter()
    g = _params(p, m, n, d)
    try:
        record = aut_brute(g, bound=max_order, full_audit=full_audit)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    closure_audit(g, record)
    click.echo(f"brute-force |Aut(G)| {record.brute_order}")
    click.echo(f"formula    |Aut(G)| {record.formula_order}")
    click.echo(f"match               {record.match}")
    click.echo(f"closure audit       {'pass' if record.closure_ok else 'FAIL'}")
    if not record.match:
        click.echo("WARNING: brute-force and formula orders disagree; "
                   "the brute-force count is the computed ground truth")
    if out:
        _write_json(Path(out), {
            "manifest": _manifest("aut", g, t0, full_audit=full_audit),
            "record": record.to_dict(),
        })
    sys.exit(0 if record.closure_ok else 1)


@main.command("companions")
@params_options
@click.option("--max-order", type=int, default=729, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def cmd_companions(p, m, n, d, max_order, out):
    """Check the generator-replacement property for elements of maximal order."""
    t0 = time.perf_counter()
    g = _params(p, m, n, d)
    try:
        report = check_generator_companions(g, bound=max_order)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(f"elements of order p^m: {report['order_pm_count']}")
    click.echo(f"all admit a companion: {report['all_admit_companion']}")
    if report["failures"]:
        click.echo(f"failures (ranks): {report['failures']}")
    if out:
        report_out = dict(report)
        report_out["witnesses"] = {str(k): v for k, v in report["witnesses"].items()}
        _write_json(Path(out), {"manifest": _manifest("companions", g, t0), "report": report_out})
    sys.exit(0 if report["all_admit_companion"] else 1)


@main.command("export")
@params_options
@source_options
@click.option("--out", type=click.Path(), required=True, help="output directory")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
def cmd_export(p, m, n, d, canonical, maps_file, alpha, beta, gamma, out, fmt):
    """Export addition and multiplication tables (byte-stable across runs)."""
    t0 = time.perf_counter()
    g = _params(p, m, n, d)
    triple = _resolve_maps(g, canonical, maps_file, alpha, beta, gamma)
    A = add_table(g)
    M = mul_table(g, triple)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        _write_csv(out_dir / "addition_table.csv", A)
        _write_csv(out_dir / "multiplication_table.csv", M)
    else:
        _write_table_json(out_dir / "addition_table.json", A)
        _write_table_json(out_dir / "multiplication_table.json", M)
    (out_dir / "maps.json").write_text(dumps_triple(triple))
    _write_json(out_dir / "manifest.json", _manifest("export", g, t0, format=fmt))
    click.echo(f"wrote {g.order}x{g.order} tables to {out_dir}")


def _write_csv(path: Path, table: np.ndarray) -> None:
    lines = [",".join(str(int(v)) for v in row) for row in table]
    path.write_text("\n".join(lines) + "\n")


def _write_table_json(path: Path, table: np.ndarray) -> None:
    path.write_text(
        json.dumps([[int(v) for v in row] for row in table], separators=(",", ":")) + "\n"
    )


if __name__ == "__main__":
    main()
