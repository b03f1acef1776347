"""Batch command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import json
import sys

import click

from . import enumeration as en
from .bressoud import MachineError, phi, psi, trace_to_jsonl
from .core import PartParseError, format_parts, parse_parts
from .partitions import Family, parts_to_obj, validate
from .qseries import product_side, series_from_counts, verify_identity
from .quaternary import QuaternaryDecomposition, from_quaternary, to_quaternary

FAILURE = 1


def _parse(text: str):
    try:
        return parse_parts(text)
    except PartParseError as exc:
        raise click.UsageError(f"parse error: {exc}") from None
    except ValueError as exc:
        raise click.UsageError(f"parse error: {exc}") from None


def _emit(obj) -> None:
    click.echo(json.dumps(obj))


@click.group()
def main():
    """Colored-partition bijections and identity checks."""


@main.command("phi")
@click.option("--input", "text", required=True, help="O partition, e.g. '2_a,1_b'.")
@click.option("--trace", is_flag=True, help="Also print the step trace as JSON lines.")
@click.option("--json", "as_json", is_flag=True)
def phi_cmd(text, trace, as_json):
    """Map an O partition to its E1 image."""
    _machine(phi, text, trace, as_json)


@main.command("psi")
@click.option("--input", "text", required=True, help="E1 partition.")
@click.option("--trace", is_flag=True)
@click.option("--json", "as_json", is_flag=True)
def psi_cmd(text, trace, as_json):
    """Map an E1 partition back to O."""
    _machine(psi, text, trace, as_json)


def _machine(fn, text, trace, as_json):
    parts = _parse(text)
    try:
        image, events = fn(parts)
    except MachineError as exc:
        raise click.UsageError(str(exc)) from None
    if as_json:
        obj = parts_to_obj(image)
        if trace:
            obj["trace"] = [ev.to_obj() for ev in events]
        _emit(obj)
        return
    click.echo(format_parts(image))
    if trace:
        click.echo(trace_to_jsonl(events), nl=False)


@main.command("to-quat")
@click.option("--input", "text", required=True, help="E1 partition.")
@click.option("--json", "as_json", is_flag=True)
def to_quat_cmd(text, as_json):
    """Sum the pattern pairs of an E1 partition into quaternary parts."""
    parts = _parse(text)
    try:
        qd = to_quaternary(parts)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    click.echo(json.dumps(qd.to_obj()) if as_json else qd.format())


@main.command("from-quat")
@click.option("--input", "text", required=True, help="'QUATS | RESIDUAL', e.g. '22_abcd,11_abcd | 7_c,4_d'.")
@click.option("--json", "as_json", is_flag=True)
def from_quat_cmd(text, as_json):
    """Rebuild the E1 partition of a quaternary decomposition."""
    try:
        qd = QuaternaryDecomposition.parse(text)
    except ValueError as exc:
        raise click.UsageError(f"parse error: {exc}") from None
    try:
        parts = from_quaternary(qd)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if as_json:
        _emit(parts_to_obj(parts))
    else:
        click.echo(format_parts(parts))


@main.command("validate")
@click.option("--family", type=click.Choice([f.value for f in Family]), required=True)
@click.option("--input", "text", required=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def validate_cmd(ctx, family, text, as_json):
    """Check membership in O, E, E1 or E2."""
    result = validate(_parse(text), family)
    if as_json:
        obj = {"family": family, "valid": bool(result)}
        if not result:
            obj.update(index=result.index, relation=result.relation,
                       parts=parts_to_obj(result.parts)["parts"])
        _emit(obj)
    else:
        click.echo(result.describe())
    if not result:
        ctx.exit(FAILURE)


@main.command("enumerate")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--family", type=click.Choice(["O", "E", "E1", "E2", "Q"]), default="E1", show_default=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False, writable=True), help="Write the count table here.")
@click.option("--count-only", is_flag=True)
def enumerate_cmd(n, family, csv_path, count_only):
    """List every partition of size N in a family (Q: quaternary decompositions)."""
    if family == "Q":
        items = list(en.gen_quaternary(n))
        table = en.CountTable(qd.stats().key for qd in items)
        lines = [qd.format() for qd in items]
    else:
        items = list(en.gen_family(family, n))
        table = en.CountTable.of(items)
        lines = [format_parts(p) for p in items]
    if not count_only:
        for line in lines:
            click.echo(line)
    click.echo(f"total {len(lines)}")
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            table.to_csv(fh)


@main.command("verify-theorem")
@click.option("--max-n", type=click.IntRange(min=0), required=True)
@click.option("--specialize", type=click.Choice(["t0", "wt0"]), default=None)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def verify_theorem_cmd(ctx, max_n, specialize, as_json):
    """Compare refined counts of O, E1 and quaternary partitions for n <= MAX_N."""
    reports = [en.verify_a_equals_b(max_n, specialize)]
    if specialize is None:
        reports.append(en.verify_b_equals_quaternary(max_n))
    if as_json:
        _emit([{"name": r.name, "passed": r.passed, "totals": r.totals,
                "mismatch": list(r.mismatch) if r.mismatch else None} for r in reports])
    else:
        for r in reports:
            click.echo(r.summary())
    if not all(r.passed for r in reports):
        ctx.exit(FAILURE)


@main.command("verify-identity")
@click.option("--max-ijkl", type=click.IntRange(min=0), required=True)
@click.option("--qmax", type=click.IntRange(min=0), required=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def verify_identity_cmd(ctx, max_ijkl, qmax, as_json):
    """Check the four-parameter q-series identity coefficientwise."""
    report = verify_identity(max_ijkl, qmax)
    if as_json:
        _emit({"passed": report.passed, "checked": report.checked,
               "failure": report.failure, "product_failure": report.product_failure})
    else:
        click.echo(report.summary())
    if not report.passed:
        ctx.exit(FAILURE)


@main.command("verify-corollary")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--sweep", type=click.IntRange(min=0), default=None,
              help="Also compare counts of both kinds for every size up to this bound.")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def verify_corollary_cmd(ctx, n, sweep, as_json):
    """List both kinds of congruence partitions of N and compare them."""
    report = en.verify_corollary(n)
    ok = report.passed
    sweep_fail = None
    if sweep is not None:
        s = en.corollary_sweep(sweep)
        sweep_fail = s.failures()
        ok = ok and not sweep_fail
    if as_json:
        obj = {"n": n, "passed": report.passed, "first": report.first,
               "second_rule": report.second_rule, "second_dilated": report.second_dilated}
        if sweep is not None:
            obj["sweep"] = {"max_n": sweep, "failures": sweep_fail}
        _emit(obj)
    else:
        click.echo(report.summary())
        if sweep is not None:
            click.echo(f"sweep n<={sweep}: " + ("pass" if not sweep_fail else f"FAIL at {sweep_fail[:10]}"))
    if not ok:
        ctx.exit(FAILURE)


@main.command("gf")
@click.option("--qmax", type=click.IntRange(min=0), required=True)
@click.pass_context
def gf_cmd(ctx, qmax):
    """Print monomials where the product and the enumerated counts differ (empty on success)."""
    prod = product_side(qmax)
    bad = False
    for label, counter in (("A", en.count_A), ("B", en.count_B)):
        table = en.CountTable()
        for n in range(qmax + 1):
            table.update(counter(n))
        diff = series_from_counts(table, qmax) - prod
        for key, c in diff.terms():
            bad = True
            click.echo(f"{label} {key} {c:+d}")
    if bad:
        ctx.exit(FAILURE)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
