"""
Command-line front end.

Exit status: 0 when every check passes, 2 when a check fails, 1 on usage or
input errors.  Reports are written atomically (temporary file, then rename),
so an interrupted run never leaves a half-written file behind.
"""
from __future__ import annotations

import json
import os
import sys
import tempfile
from pathlib import Path

import click

from . import __version__
from .lefschetz import (
    PathCapExceeded,
    UnsupportedCase,
    enumerate_path_systems,
    middle_form_reduce,
    one_step_matrix,
    path_matrix,
    path_system_sum,
    strong_lefschetz_report,
    weak_lefschetz_report,
)
from .quotient import QuotientPoset, enumerate_quotient, resolve_theta, root_rescaling
from .rootsystem import RootSystemError, build_root_system
from .scalar import ScalarError, format_scalar, parse_scalar

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class CheckFailed(Exception):
    """A verification ran to completion and found a failing check."""


# ---------------------------------------------------------------------------
# output helpers


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        click.echo(text, nl=False)


def finish(passed: bool, what: str) -> int:
    if not passed:
        click.echo(f"FAIL: {what}", err=True)
        return EXIT_FAIL
    return EXIT_OK


def load_poset(path: str) -> QuotientPoset:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return QuotientPoset.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise click.UsageError(f"cannot read poset file {path}: {exc}") from exc


def build_type(label: str):
    try:
        return build_root_system(label)
    except RootSystemError as exc:
        raise click.UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands


@click.group()
@click.version_option(version=__version__, prog_name="slp")
def cli():
    """Exact strong Lefschetz checks for coinvariant and relative coinvariant rings."""


@cli.command()
@click.option("--type", "type_", required=True, help="Coxeter type, e.g. A3, H4, I2(5).")
@click.option("--out", type=click.Path(dir_okay=False), help="Write JSON here instead of stdout.")
def roots(type_, out):
    """Simple and positive roots with the Gram matrix."""
    rs = build_type(type_)
    emit(dumps(rs.to_json()), out)
    return EXIT_OK


@cli.command()
@click.option("--type", "type_", required=True)
@click.option("--theta", default="standard", show_default=True,
              help="1-based simple indices (\"2,3\"), the standard parabolic's label, or \"standard\".")
@click.option("--rescale", is_flag=True, help="Scale rho_bar to a root when it is proportional to one.")
@click.option("--out", type=click.Path(dir_okay=False), help="Poset JSON file.")
@click.option("--dot", type=click.Path(dir_okay=False), help="DOT file, one rank per degree.")
def quotient(type_, theta, rescale, out, dot):
    """Enumerate W/W_Theta as a weighted Bruhat graph."""
    rs = build_type(type_)
    try:
        th = resolve_theta(rs, theta)
    except RootSystemError as exc:
        raise click.UsageError(str(exc)) from exc
    ts = rs.theta(th)
    scale = root_rescaling(rs, ts) if rescale else None
    P = enumerate_quotient(rs, ts, scale=scale)
    report = P.validate()
    if out:
        write_atomic(out, dumps(P.to_json()))
    if dot:
        write_atomic(dot, P.to_dot())
    summary = {
        "type": P.type,
        "theta": list(P.theta),
        "nodes": len(P.nodes),
        "edges": len(P.edges),
        "r": P.r,
        "histogram": P.histogram(),
        "validation": {"ok": report.ok, "failures": report.failures()},
    }
    click.echo(dumps(summary), nl=False)
    return finish(report.ok, "; ".join(report.failures()))


def _matrix_output(m, fmt):
    return m.to_tsv() if fmt == "tsv" else dumps(m.to_json())


def _paths_output(P: QuotientPoset, degree: int, vertex_disjoint: bool, fmt: str) -> str:
    try:
        systems = enumerate_path_systems(P, degree, vertex_disjoint=vertex_disjoint)
    except PathCapExceeded as exc:
        raise CheckFailed(f"{exc}; raise SLP_PATH_CAP or use --mode strong (determinants)") from exc
    if fmt == "tsv":
        lines = ["sigma\tsign\tweight\tpaths"]
        for p in systems:
            paths = ";".join(",".join(str(v) for v in p.vertices(P, k)) for k in range(len(p.paths)))
            lines.append(f"{','.join(map(str, p.sigma))}\t{p.sign:+d}\t{format_scalar(p.weight)}\t{paths}")
        return "\n".join(lines) + "\n"
    total = path_system_sum(systems, P.field.zero())
    det = path_matrix(P, degree, P.r - degree).det()
    return dumps({
        "degree": degree,
        "target_degree": P.r - degree,
        "vertex_disjoint_only": vertex_disjoint,
        "count": len(systems),
        "signed_sum": format_scalar(total),
        "determinant": format_scalar(det),
        "sum_equals_determinant": total == det,
    })


@cli.command()
@click.option("--poset", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["strong", "weak", "middle", "paths"]), default="strong",
              show_default=True)
@click.option("--degree", type=int, help="Single degree i (matrix V^i -> V^(r-i), or V^i -> V^(i+1) for weak).")
@click.option("--vertex-disjoint", is_flag=True, help="paths mode: only vertex-disjoint systems.")
@click.option("--format", "fmt", type=click.Choice(["json", "tsv"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
def lefschetz(poset, mode, degree, vertex_disjoint, fmt, out):
    """Lefschetz matrices and verdicts on a poset file."""
    P = load_poset(poset)
    if degree is not None and not 0 <= degree <= P.r:
        raise click.BadParameter(f"degree must lie in 0..{P.r}", param_hint="--degree")
    if mode == "paths":
        if degree is None:
            raise click.UsageError("--mode paths needs --degree")
        if 2 * degree > P.r:
            raise click.BadParameter("degree must be at most r/2", param_hint="--degree")
        text = _paths_output(P, degree, vertex_disjoint, fmt)
        emit(text, out)
        return EXIT_OK if fmt == "tsv" else finish(json.loads(text)["sum_equals_determinant"],
                                                  "path-system sum differs from determinant")
    if mode == "strong":
        if degree is not None:
            if 2 * degree > P.r:
                raise click.BadParameter("degree must be at most r/2", param_hint="--degree")
            m = path_matrix(P, degree, P.r - degree)
            emit(_matrix_output(m, fmt), out)
            return finish(m.shape[0] == m.shape[1] and bool(m.det()), f"singular in degree {degree}")
        if fmt == "tsv":
            raise click.UsageError("--format tsv needs --degree")
        rep = strong_lefschetz_report(P)
        emit(dumps(rep.to_json()), out)
        return finish(rep.passed, f"strong Lefschetz fails in degrees {rep.failing_degrees()}")
    if mode == "weak":
        if degree is not None:
            if degree >= P.r:
                raise click.BadParameter("degree must be below r", param_hint="--degree")
            m = one_step_matrix(P, degree)
            emit(_matrix_output(m, fmt), out)
            return EXIT_OK
        if fmt == "tsv":
            raise click.UsageError("--format tsv needs --degree")
        rep = weak_lefschetz_report(P)
        emit(dumps(rep.to_json()), out)
        return finish(rep.passed, f"weak Lefschetz fails in degrees {rep.failing_degrees()}")
    try:
        mf = middle_form_reduce(P)
    except UnsupportedCase as exc:
        raise click.UsageError(str(exc)) from exc
    if fmt == "tsv":
        lines = ["\t" + "\t".join(map(str, mf.node_ids))]
        lines += [f"{nid}\t" + "\t".join(format_scalar(x) for x in row)
                  for nid, row in zip(mf.node_ids, mf.matrix)]
        emit("\n".join(lines) + "\n", out)
    else:
        emit(dumps(mf.to_json()), out)
    return finish(mf.strong_verdict, "middle-form reduction does not certify strong Lefschetz")


@cli.command()
@click.option("--poset", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--degree", type=int, required=True)
@click.option("--vertex-disjoint", is_flag=True)
@click.option("--format", "fmt", type=click.Choice(["json", "tsv"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
def paths(poset, degree, vertex_disjoint, fmt, out):
    """Enumerate path systems V^i -> V^(r-i) (same as lefschetz --mode paths)."""
    P = load_poset(poset)
    if not 0 <= degree <= P.r // 2:
        raise click.BadParameter(f"degree must lie in 0..{P.r // 2}", param_hint="--degree")
    text = _paths_output(P, degree, vertex_disjoint, fmt)
    emit(text, out)
    if fmt == "tsv":
        return EXIT_OK
    return finish(json.loads(text)["sum_equals_determinant"], "path-system sum differs from determinant")


@cli.command()
@click.option("--type", "type_", required=True)
@click.option("--check-strong", is_flag=True, help="Also compute the strong Lefschetz determinants.")
@click.option("--element", default="rho", show_default=True,
              help="\"rho\" or comma-separated values of the simple coroots on l.")
@click.option("--out", type=click.Path(dir_okay=False))
def coinvariant(type_, check_strong, element, out):
    """Coinvariant ring by explicit polynomials (types A, B, D, I2)."""
    from .polyring import UnsupportedBackend, lefschetz_determinants, presentation

    rs = build_type(type_)
    try:
        if element.strip().lower() == "rho":
            l = rs.rho()
        else:
            values = [parse_scalar(x.strip(), rs.field) for x in element.split(",")]
            l = rs.weight_from_coroot_values(values)
    except (ScalarError, RootSystemError) as exc:
        raise click.BadParameter(str(exc), param_hint="--element") from exc
    try:
        pres = presentation(rs)
    except UnsupportedBackend as exc:
        raise click.UsageError(str(exc)) from exc
    report = {
        "type": rs.ctype.label,
        "dims": pres.dims,
        "top": pres.top,
        "element": [format_scalar(c) for c in l],
        "coroot_values": [format_scalar(rs.coroot_eval(a, l)) for a in rs.simple],
    }
    passed = True
    if check_strong:
        check = lefschetz_determinants(pres, l)
        report["strong"] = check.to_json()
        passed = check.passed
    emit(dumps(report), out)
    return finish(passed, "strong Lefschetz fails for this element")


@cli.command()
@click.option("--type", "type_", required=True)
@click.option("--theta", default="standard", show_default=True)
@click.option("--report", "report_path", type=click.Path(dir_okay=False))
def deform(type_, theta, report_path):
    """Validate the fibration S_W over S_W^W_Theta and deform to a Lefschetz element."""
    from .deform import ValidationError, deformation_scan, fibration_validate
    from .polyring import UnsupportedBackend

    rs = build_type(type_)
    try:
        th = resolve_theta(rs, theta)
    except RootSystemError as exc:
        raise click.UsageError(str(exc)) from exc
    try:
        fd = fibration_validate(rs, th)
    except UnsupportedBackend as exc:
        raise click.UsageError(str(exc)) from exc
    except ValidationError as exc:
        raise CheckFailed(f"fibration hypothesis fails: {exc}") from exc
    rep = deformation_scan(fd)
    emit(dumps(rep.to_json()), report_path)
    return finish(rep.passed, "deformation did not produce a Lefschetz element")


def paper_tables(progress=None) -> dict[str, str]:
    """File name -> content for every reproduced table, plus a manifest."""
    from . import tables

    files: dict[str, str] = {}
    manifest: dict[str, dict] = {}

    def note(name, payload):
        files[name] = dumps(payload)
        checks = payload.get("checks", {})
        manifest[name] = {"pass": all(checks.values()), "checks": checks}

    for t in tables.HASSE_TYPES:
        if progress:
            progress(f"hasse {t}")
        P = tables.relative_poset(t)
        note(f"hasse_{t}.json", tables.hasse_table(t))
        files[f"hasse_{t}.dot"] = P.to_dot()
        files[f"poset_{t}.json"] = dumps(P.to_json())
    if progress:
        progress("middle legs E7")
    P = tables.relative_poset("E7")
    legs = tables.middle_legs(P, range(5, 9), P.r // 2 - 1, P.r // 2 + 2)
    legs["checks"] = {
        "sign determined by leg": legs["sign_determined_by_leg"],
        "two minority-sign legs": legs["minority_sign_legs"] == 2,
    }
    note("middle_legs_E7.json", legs)
    for t in tables.MIDDLE_TYPES:
        if progress:
            progress(f"middle form {t}")
        note(f"middle_form_{t}.json", tables.middle_form_table(t))
        note(f"weak_{t}.json", tables.weak_table(t))
    files["manifest.json"] = dumps({"scope": tables.SCOPE, "tables": manifest,
                                    "pass": all(v["pass"] for v in manifest.values())})
    return files


@cli.command()
@click.option("--paper", is_flag=True, help="Regenerate the published table data.")
@click.option("--out-dir", default="tables", show_default=True, type=click.Path(file_okay=False))
@click.option("--verbose", is_flag=True)
def tables(paper, out_dir, verbose):
    """Write table data (posets, counts, matrices) and a pass/fail manifest."""
    if not paper:
        raise click.UsageError("nothing to do: pass --paper")
    progress = (lambda s: click.echo(s, err=True)) if verbose else None
    files = paper_tables(progress)
    for name, text in sorted(files.items()):
        write_atomic(Path(out_dir) / name, text)
    passed = json.loads(files["manifest.json"])["pass"]
    click.echo(f"wrote {len(files)} files to {out_dir}")
    return finish(passed, "some table check failed; see manifest.json")


@cli.command("verify-theorem")
@click.option("--max-rank", type=click.IntRange(1, 8), default=4, show_default=True)
@click.option("--max-dihedral", type=click.IntRange(5, 30), default=8, show_default=True)
@click.option("--exhaustive", is_flag=True, help="Full determinant chains for H4 and E8 too.")
@click.option("--report", "report_path", type=click.Path(dir_okay=False))
@click.option("--verbose", is_flag=True)
def verify_theorem(max_rank, max_dihedral, exhaustive, report_path, verbose):
    """Replay the rank induction: relative checks for every type up to a rank."""
    from .tables import verify_theorem as run

    progress = (lambda s: click.echo(s, err=True)) if verbose else None
    rep = run(max_rank=max_rank, exhaustive=exhaustive, max_dihedral=max_dihedral, progress=progress)
    text = dumps(rep.to_json())
    if report_path:
        write_atomic(report_path, text)
        click.echo(f"verdict: {'pass' if rep.passed else 'fail'}")
    else:
        click.echo(text, nl=False)
    return finish(rep.passed, "some induction step failed")


# ---------------------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="slp", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except CheckFailed as exc:
        click.echo(f"FAIL: {exc}", err=True)
        return EXIT_FAIL
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
