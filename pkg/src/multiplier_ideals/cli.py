"""Command line front end.

Exit codes: 0 success, 1 validation failure, 2 malformed input,
3 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import io
from .builders import cluster_to_resolution, monomial_ideal
from .core import (
    Divisor,
    ResolutionData,
    arithmetic_genus,
    as_rational,
    fundamental_cycle,
    validate,
)
from .errors import CrossCheckError, InvalidResolution, MalformedInput
from .jumping import (
    candidates,
    growth_check,
    multiplicity,
    multiplicity_by_closure,
    structure_check,
)
from .poincare import expand, poincare_series, render
from .spectrum import rooted, spectrum_table
from .unloading import antinef_closure, ideal_codim, virtual_codim

EXIT_INVALID = 1
EXIT_MALFORMED = 2
EXIT_CROSSCHECK = 3


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("THREADS", "1")))
    except ValueError:
        return 1


def _sweep(fn: Callable[[Fraction, ResolutionData], Any], cs: Sequence[Fraction], rd: ResolutionData) -> list[Any]:
    workers = _threads()
    if workers == 1 or len(cs) < 64:
        return [fn(c, rd) for c in cs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cs, [rd] * len(cs), chunksize=32))


def _label(i: int) -> str:
    return f"E{i + 1}"


def _parse_divisor(text: str, n: int) -> Divisor:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != n:
        raise MalformedInput(f"--divisor needs {n} comma-separated values, got {len(parts)}")
    return Divisor.of(parts)


def _load(path: str) -> ResolutionData:
    """Read a resolution file and refuse to go on unless it validates."""
    rd = io.read_resolution(path, check_excess=False)
    report = validate(rd)
    if not report.ok:
        raise InvalidResolution(
            "; ".join(f"{c.name} check failed ({c.detail})" for c in report.failures)
        )
    return rd


class Output:
    def __init__(self, as_json: bool) -> None:
        self.as_json = as_json
        self.lines: list[str] = []

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def emit(self, doc: dict[str, Any]) -> None:
        if self.as_json:
            print(io.dump_json(doc))
        else:
            print("\n".join(self.lines))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace, out: Output) -> int:
    doc = io.load_json(args.file)
    note = None
    try:
        rd = io.resolution_from_doc(doc, check_excess=False)
    except InvalidResolution as exc:
        # K could not be solved; still report the structural checks
        note = str(exc)
        rd = io.resolution_from_doc(
            dict(doc, K=["0"] * len(doc.get("components", []))), check_excess=False
        )
    report = validate(rd)
    checks = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks]
    if note:
        checks.append({"name": "relative_canonical", "passed": False, "detail": note})
    ok = report.ok and note is None
    for c in checks:
        status = "ok" if c["passed"] else "FAILED"
        detail = f" ({c['detail']})" if c["detail"] else ""
        out.line(f"{c['name']}: {status}{detail}")
        if not c["passed"]:
            out.line(f"  {c['name'].replace('_', ' ')} check failed")
    out.line("valid" if ok else "invalid")
    out.emit({"command": "validate", "valid": ok, "checks": checks})
    return 0 if ok else EXIT_INVALID


def cmd_info(args: argparse.Namespace, out: Output) -> int:
    rd = _load(args.file)
    g = rd.graph
    Z = fundamental_cycle(g)
    pa = arithmetic_genus(Z, rd)
    rows = []
    out.line(f"components: {rd.n}")
    out.line(f"{'comp':>5} {'E^2':>4} {'k':>8} {'e':>6} {'rho':>4}  flags")
    for i in range(rd.n):
        flags = []
        if rd.rho[i] > 0:
            flags.append("dicritical")
        if g.degree(i) >= 3:
            flags.append("rupture")
        if rd.root == i:
            flags.append("root")
        rows.append({
            "id": i + 1,
            "self_int": g.self_int[i],
            "k": io.rat(rd.K[i]),
            "e": io.rat(rd.F[i]),
            "rho": io.rat(rd.rho[i]),
            "neighbors": [j + 1 for j in g.neighbors(i)],
            "dicritical": rd.rho[i] > 0,
            "rupture": g.degree(i) >= 3,
        })
        out.line(
            f"{_label(i):>5} {g.self_int[i]:>4} {str(rd.K[i]):>8} {str(rd.F[i]):>6} "
            f"{str(rd.rho[i]):>4}  {' '.join(flags)}"
        )
    out.line(f"edges: {' '.join(f'{_label(i)}-{_label(j)}' for i, j in g.edges)}")
    out.line(f"total excess: {rd.rho_total}")
    out.line(f"fundamental cycle: {Z}")
    out.line(f"p_a(Z): {pa}")
    out.emit({
        "command": "info",
        "n": rd.n,
        "components": rows,
        "edges": [[i + 1, j + 1] for i, j in g.edges],
        "rho_total": io.rat(rd.rho_total),
        "fundamental_cycle": [io.rat(z) for z in Z],
        "arithmetic_genus_Z": io.rat(pa),
        "smooth_origin": rd.smooth_origin,
        "root": None if rd.root is None else rd.root + 1,
    })
    return 0


def cmd_unload(args: argparse.Namespace, out: Output) -> int:
    rd = _load(args.file)
    D = _parse_divisor(args.divisor, rd.n)
    trace = antinef_closure(D, rd)
    steps = []
    out.line(f"start: {D.ceil()}  C = {virtual_codim(D, rd)}")
    for k, s in enumerate(trace.steps, start=1):
        before, after = virtual_codim(s.before, rd), virtual_codim(s.after, rd)
        theta = [i + 1 for i in sorted(s.theta)]
        steps.append({
            "theta": theta,
            "added": list(s.added),
            "tame": s.tame,
            "before": [io.rat(x) for x in s.before],
            "after": [io.rat(x) for x in s.after],
            "codim_before": io.rat(before),
            "codim_after": io.rat(after),
        })
        out.line(
            f"step {k}: theta={{{', '.join(f'E{t}' for t in theta)}}} "
            f"-> {s.after}  C {before} -> {after}  {'tame' if s.tame else 'not tame'}"
        )
    codim = virtual_codim(trace.result, rd)
    out.line(f"antinef closure: {trace.result}  codimension {codim}")
    out.emit({
        "command": "unload",
        "divisor": [io.rat(x) for x in D],
        "steps": steps,
        "closure": [io.rat(x) for x in trace.result],
        "codimension": io.rat(codim),
    })
    return 0


def cmd_codim(args: argparse.Namespace, out: Output) -> int:
    rd = _load(args.file)
    D = _parse_divisor(args.divisor, rd.n)
    value = ideal_codim(D, rd)
    out.line(f"codimension: {value}")
    out.emit({"command": "codim", "divisor": [io.rat(x) for x in D], "codimension": io.rat(value)})
    return 0


def _verify_point(c: Fraction, rd: ResolutionData) -> None:
    rec = multiplicity(c, rd)
    if multiplicity_by_closure(c, rd) != rec.m:
        raise CrossCheckError(f"antinef-closure multiplicity disagrees at c={c}")
    structure_check(c, rd)
    growth_check(c, rd)


def cmd_jn(args: argparse.Namespace, out: Output) -> int:
    rd = _load(args.file)
    hi = as_rational(args.up_to)
    if hi <= 0:
        raise MalformedInput("--up-to must be positive")
    cs = candidates(rd, 0, hi)
    records = _sweep(multiplicity, cs, rd)
    if args.verify:
        _sweep(_verify_point, cs, rd)
    rows = []
    out.line(f"{'c':>10} {'m(c)':>5}  check")
    for rec in records:
        if rec.m == 0:
            continue
        # records that reach here have passed the three-way comparison
        rows.append({
            "c": io.rat(rec.c),
            "m": rec.m,
            "m_by_intersection": rec.m_by_intersection,
            "m_by_sum": rec.m_by_sum,
            "m_by_virtual": rec.m_by_virtual,
            "cross_check": "ok",
        })
        out.line(f"{str(rec.c):>10} {rec.m:>5}  ok")
    out.emit({"command": "jn", "up_to": io.rat(hi), "jumping_numbers": rows})
    return 0


def cmd_poincare(args: argparse.Namespace, out: Output) -> int:
    rd = _load(args.file)
    ps = poincare_series(rd)
    if args.verify:
        _sweep(_verify_point, candidates(rd, 0, 1), rd)
    closed = render(ps, "closed")
    rational = render(ps, "rational-function")
    out.line(f"P(t) = {closed}")
    out.line(f"P = {rational}, e={ps.e}  (z = t^(1/{ps.e}))")
    doc: dict[str, Any] = {
        "command": "poincare",
        "e": ps.e,
        "terms": [{"c": io.rat(t.c), "m": t.m, "rho_c": io.rat(t.rho)} for t in ps.terms],
        "closed": closed,
        "rational_function": rational,
        "numerator": {str(d): v for d, v in ps.numerator().items()},
    }
    if args.expand is not None:
        table = expand(ps, args.expand)
        out.line(f"expansion up to t^{args.expand}:")
        for c, m in table:
            out.line(f"  {str(c):>10} {m:>5}")
        doc["expansion"] = [{"c": io.rat(c), "m": m} for c, m in table]
    out.emit(doc)
    return 0


def cmd_spectrum(args: argparse.Namespace, out: Output) -> int:
    rd = _load(args.file)
    table = spectrum_table(rooted(rd))
    total = sum(n for _, n in table)
    out.line(f"{'c':>10} {'n(c)':>5}")
    for c, n in table:
        out.line(f"{str(c):>10} {n:>5}")
    out.line(f"sum of multiplicities: {total}")
    out.emit({
        "command": "spectrum",
        "spectrum": [{"c": io.rat(c), "n": n} for c, n in table],
        "total": total,
    })
    return 0


def _write_built(rd: ResolutionData, args: argparse.Namespace, out: Output) -> int:
    doc = io.resolution_to_doc(rd)
    if args.output:
        io.write_resolution(rd, args.output)
        out.line(f"wrote {args.output} ({rd.n} components)")
        out.emit({"command": "build", "output": args.output, "resolution": doc})
    elif out.as_json:
        out.emit({"command": "build", "resolution": doc})
    else:
        print(io.dump_json(doc))
    return 0


def cmd_build_monomial(args: argparse.Namespace, out: Output) -> int:
    rd = cluster_to_resolution(monomial_ideal(args.a, args.b))
    return _write_built(rd, args, out)


def cmd_build_cluster(args: argparse.Namespace, out: Output) -> int:
    rd = cluster_to_resolution(io.read_cluster(args.clusterfile))
    return _write_built(rd, args, out)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--verify", action="store_true", default=argparse.SUPPRESS,
                        help="run every redundant cross-check")

    parser = argparse.ArgumentParser(
        prog="multiplier-ideals",
        description="Jumping numbers, Poincaré series and spectra from resolution data.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--verify", action="store_true", help="run every redundant cross-check")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a resolution file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", parents=[common], help="summarize a resolution")
    p.add_argument("file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("unload", parents=[common], help="antinef closure with trace")
    p.add_argument("file")
    p.add_argument("--divisor", required=True, help="comma-separated coefficients")
    p.set_defaults(func=cmd_unload)

    p = sub.add_parser("codim", parents=[common], help="codimension of a complete ideal")
    p.add_argument("file")
    p.add_argument("--divisor", required=True, help="comma-separated coefficients")
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("jn", parents=[common], help="jumping numbers with multiplicities")
    p.add_argument("file")
    p.add_argument("--up-to", default="1", help="upper bound P/Q (default 1)")
    p.set_defaults(func=cmd_jn)

    p = sub.add_parser("poincare", parents=[common], help="Poincaré series")
    p.add_argument("file")
    p.add_argument("--expand", type=int, metavar="N", help="list terms up to t^N")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("spectrum", parents=[common], help="Hodge spectrum (smooth origin)")
    p.add_argument("file")
    p.set_defaults(func=cmd_spectrum)

    build = sub.add_parser("build", help="write a resolution file")
    bsub = build.add_subparsers(dest="kind", required=True)
    p = bsub.add_parser("monomial", parents=[common], help="ideal (x^A, y^B)")
    p.add_argument("a", type=int, metavar="A")
    p.add_argument("b", type=int, metavar="B")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_monomial)
    p = bsub.add_parser("cluster", parents=[common], help="Enriques cluster file")
    p.add_argument("clusterfile")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_cluster)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json)
    try:
        return args.func(args, out)
    except CrossCheckError as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except MalformedInput as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except InvalidResolution as exc:
        print(f"invalid resolution: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
