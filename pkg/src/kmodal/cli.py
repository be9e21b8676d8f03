"""Command-line entry point.

Exit codes: 0 success; 1 failed check under --strict; 2 usage, parse,
or file errors.  Output goes to stdout unless --out is given.  JSON is
pretty-printed with stable key order so fixtures diff cleanly.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import (
    KmodalError,
    Permutation,
    format_permutation,
    parse_permutation,
)
from .experiments import (
    SweepConfig,
    Theorem,
    check_theorem,
    minima_table,
    sweep,
    tightness_report,
)
from .generators import Family, generate
from .labeling import label_pairs, theorem1_scheme, theorem2_scheme, theorem3_scheme
from .lattice import (
    LatticePointSet,
    condition_scan,
    max_condition_free,
    shift_into_triangle,
)
from .solver import SolveMode, longest_kmodal

_SCHEMES = {"t1": theorem1_scheme, "t2": theorem2_scheme, "t3": theorem3_scheme}
_MODES = {"inc": SolveMode.INC_FIRST, "dec": SolveMode.DEC_FIRST, "any": SolveMode.ANY}


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _read_permutation(path: str) -> Permutation:
    return parse_permutation(Path(path).read_text())


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _cmd_solve(args) -> int:
    p = _read_permutation(args.input)
    w = longest_kmodal(p, args.k, _MODES[args.mode])
    if args.json:
        report = {
            "n": p.n,
            "k": args.k,
            "mode": args.mode,
            "length": w.length,
            "indices": list(w.indices),
            "profile": {
                "min_changes": w.profile.min_changes,
                "first_direction": w.profile.first_direction.value,
            },
        }
        _emit(_json_dump(report), args.out)
    else:
        lines = [f"length {w.length}"]
        if args.witness:
            lines.append("indices " + " ".join(str(i) for i in w.indices))
        _emit("\n".join(lines), args.out)
    return 0


def _cmd_labels(args) -> int:
    p = _read_permutation(args.input)
    ls = label_pairs(p, _SCHEMES[args.scheme](args.k))
    rows = ["pos,value,x,y"]
    for pos, ((x, y), v) in enumerate(zip(ls.pairs, p.values), start=1):
        rows.append(f"{pos},{v},{x},{y}")
    _emit("\n".join(rows), args.out)
    return 0


def _cmd_generate(args) -> int:
    p = generate(Family(args.family), args.k, args.t)
    _emit(format_permutation(p), args.out)
    return 0


def _cmd_check(args) -> int:
    p = _read_permutation(args.input)
    report = check_theorem(p, args.k, Theorem(args.theorem), args.slack)
    if args.json:
        _emit(
            _json_dump(
                {
                    "theorem": report.theorem.value,
                    "n": report.n,
                    "k": report.k,
                    "achieved_N": report.achieved_N,
                    "target": report.target,
                    "slack": report.slack,
                    "pass": report.passed,
                }
            ),
            args.out,
        )
    else:
        _emit(
            f"{report.theorem.value}: achieved {report.achieved_N} "
            f"target {report.target:.6f} slack {report.slack} "
            f"{'PASS' if report.passed else 'FAIL'}",
            args.out,
        )
    return 1 if args.strict and not report.passed else 0


def _cmd_minimize(args) -> int:
    table = minima_table(args.n, args.k)
    theorem = Theorem(args.theorem)
    value, argmin = table[theorem]
    if args.json:
        _emit(
            _json_dump(
                {
                    "theorem": theorem.value,
                    "n": args.n,
                    "k": args.k,
                    "minimum": value,
                    "argmin": list(argmin.values),
                }
            ),
            args.out,
        )
    else:
        _emit(f"minimum {value} argmin {format_permutation(argmin)}", args.out)
    return 0


def _cmd_tightness(args) -> int:
    report = tightness_report(Family(args.family), args.k, args.t)
    if args.json:
        _emit(
            _json_dump(
                {
                    "family": report.family.value,
                    "k": report.k,
                    "t": report.t,
                    "n": report.n,
                    "achieved_N": report.achieved_N,
                    "paper_cap": report.paper_cap,
                    "ratio": report.ratio,
                    "pass": report.passed,
                }
            ),
            args.out,
        )
    else:
        _emit(
            f"n {report.n} achieved {report.achieved_N} cap {report.paper_cap} "
            f"ratio {report.ratio:.4f} {'PASS' if report.passed else 'FAIL'}",
            args.out,
        )
    return 1 if args.strict and not report.passed else 0


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def _cmd_sweep(args) -> int:
    theorems = tuple(Theorem(t) for t in args.theorems.split(",")) if args.theorems else (
        Theorem.T1,
        Theorem.T2,
        Theorem.T3,
    )
    cfg = SweepConfig(
        theorems=theorems,
        k_values=_parse_int_list(args.k),
        n_values=_parse_int_list(args.n) if args.n else None,
        family=Family(args.family) if args.family else None,
        t_values=_parse_int_list(args.t) if args.t else None,
        samples=args.samples,
        base_seed=args.seed,
        slack=args.slack,
    )
    rows = sweep(cfg, parallel=args.parallel)
    _emit("\n".join(rows), args.out)
    return 0


def _read_points(path: str) -> list[tuple[int, int]]:
    pts = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        x, y = line.split()
        pts.append((int(x), int(y)))
    return pts


def _cmd_lattice(args) -> int:
    if args.mode == "maxfree":
        size, witness = max_condition_free(args.N)
        payload = {
            "N": args.N,
            "mode": "maxfree",
            "max_size": size,
            "witness": sorted(witness.points),
        }
        if args.json:
            _emit(_json_dump(payload), args.out)
        else:
            _emit(f"max condition-free size {size}", args.out)
        return 0

    if not args.points:
        raise KmodalError("--points FILE is required for scan/shift modes")
    s = LatticePointSet.of(args.N, _read_points(args.points))
    if args.mode == "scan":
        scan = condition_scan(s)
        payload = {
            "N": args.N,
            "mode": "scan",
            "triggered": scan.triggered,
            "triggered_at": list(scan.triggered_at) if scan.triggered_at else None,
            "a_count": scan.a_count,
            "b_count": scan.b_count,
        }
        if args.json:
            _emit(_json_dump(payload), args.out)
        else:
            _emit(
                f"triggered at {scan.triggered_at}" if scan.triggered else "not triggered",
                args.out,
            )
        return 0

    trace = shift_into_triangle(s)
    payload = {
        "N": args.N,
        "mode": "shift",
        "success": trace.success,
        "moves": [[list(a), list(b)] for a, b in trace.moves()],
        "failed_point": list(trace.failed_point) if trace.failed_point else None,
    }
    if args.json:
        _emit(_json_dump(payload), args.out)
    else:
        _emit("shift ok" if trace.success else f"shift failed at {trace.failed_point}", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmodal", description="k-modal subsequence toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="longest k-modal subsequence of a permutation")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--mode", choices=sorted(_MODES), default="any")
    sp.add_argument("--input", required=True)
    sp.add_argument("--witness", action="store_true", help="emit witness indices")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("labels", help="emit per-position label pairs as CSV")
    sp.add_argument("--input", required=True)
    sp.add_argument("--scheme", choices=sorted(_SCHEMES), default="t2")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_labels)

    sp = sub.add_parser("generate", help="emit an extremal family permutation")
    sp.add_argument("--family", choices=[f.value for f in Family], required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_generate)

    sp = sub.add_parser("check", help="check a theorem bound on a permutation")
    sp.add_argument("--input", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--theorem", choices=[t.value for t in Theorem], required=True)
    sp.add_argument("--slack", type=int, default=1)
    sp.add_argument("--strict", action="store_true", help="exit 1 on a failed check")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("minimize", help="exact minimum achieved_N over all n! permutations")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--theorem", choices=[t.value for t in Theorem], required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_minimize)

    sp = sub.add_parser("tightness", help="construction tightness report")
    sp.add_argument("--family", choices=[f.value for f in Family], required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--strict", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_tightness)

    sp = sub.add_parser("sweep", help="seeded sweep emitting CSV rows")
    sp.add_argument("--theorems", help="comma list, e.g. t1,t3")
    sp.add_argument("--k", required=True, help="comma list of k values")
    sp.add_argument("--n", help="comma list of n values (random sweep)")
    sp.add_argument("--family", choices=[f.value for f in Family])
    sp.add_argument("--t", help="comma list of t values (family sweep)")
    sp.add_argument("--samples", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--slack", type=int, default=1)
    sp.add_argument("--parallel", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("lattice", help="condition scan / max condition-free / shift")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--mode", choices=["scan", "maxfree", "shift"], required=True)
    sp.add_argument("--points", help="file of 'x y' lines")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_lattice)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except OSError as exc:
        print(f"file error: {getattr(exc, 'filename', '')}: {exc.strerror or exc}", file=sys.stderr)
        return 2
    except KmodalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
