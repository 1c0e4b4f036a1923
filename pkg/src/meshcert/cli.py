"""Command-line entry point.

Exit codes: 0 claim certified (or check passed), 1 not certified (or check
failed), 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .algebra import Point, V
from .arrangement import global_min, meshitup
from .certificate import CLAIMS, METHODS, Certificate, InconsistentMethods, certify, frac_text, run_config
from .expansion import (
    IDENTITY,
    ROT_YZX,
    ROT_ZYX,
    SWAP_XY,
    alpha,
    build_delta,
    build_level_diff,
    evaluate,
    evaluate_many,
    expand_h,
)
from .milp import Status, build_milp_h_diff, model_from_sum, solve
from .parse import ParseError, parse_region, parse_substitution
from .simulator import SimConfig, exact_h, exact_partial_sum, simulate

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("meshcert")


class InputError(Exception):
    pass


def _out(args, text: str) -> None:
    print(text, file=args.stdout)


def _pair(args):
    try:
        s = parse_substitution(args.s)
        t = parse_substitution(args.t)
        ambient = parse_region(args.ambient)
    except ParseError as e:
        raise InputError(e.pretty()) from e
    return s, t, ambient


def _fmt_point(p: Optional[Point]) -> str:
    if p is None:
        return "-"
    return "(" + ", ".join(str(v) for v in p.as_tuple()) + ")"


# ---------------------------------------------------------------------------


def cmd_certify(args) -> int:
    if args.from_cert:
        try:
            old = Certificate.from_text(Path(args.from_cert).read_text())
        except (OSError, ValueError, KeyError) as e:
            raise InputError(f"cannot read certificate: {e}") from e
        cert = run_config(old.config, threads=args.threads)
        same = cert.result_text() == old.result_text()
        _out(args, f"rerun of {args.from_cert}: bound {frac_text(cert.bound)} "
                   f"({'identical' if same else 'DIFFERENT'})")
        if not same:
            return EXIT_FAIL
    else:
        try:
            cert = certify(
                args.claim, args.method, args.n, threads=args.threads,
                s=args.s if args.claim == "custom" else None,
                t=args.t if args.claim == "custom" else None,
                ambient=args.ambient if args.claim == "custom" else None,
                cross_check=args.cross_check,
            )
        except ParseError as e:
            raise InputError(e.pretty()) from e
        except InconsistentMethods as e:
            print(f"cross-check failed: {e}", file=sys.stderr)
            return EXIT_FAIL
    verdict = "CERTIFIED" if cert.certified else "NOT CERTIFIED"
    _out(args, f"{cert.claim} n={cert.n} method={cert.method}: Delta_n >= {frac_text(cert.bound)}, "
               f"alpha_n = {frac_text(cert.alpha_n)}, margin {frac_text(cert.margin)} -> {verdict}")
    for part in cert.parts:
        if "value" in part:
            _out(args, f"  {part['name']}: {part['value']}")
    if args.out:
        Path(args.out).write_text(cert.to_text())
        _out(args, f"certificate written to {args.out}")
    return EXIT_OK if cert.certified else EXIT_FAIL


def _run_mesh(args, s, t, ambient) -> int:
    res = meshitup(s, t, ambient, max_n=args.max_n, weak=args.weak, threads=args.threads)
    rel = ">=" if args.weak else ">"
    for st in res.steps:
        ok = st.min_value >= st.alpha if args.weak else st.passed
        _out(args, f"n={st.n}: min Delta_n = {frac_text(st.min_value)}, alpha_n = {frac_text(st.alpha)}, "
                   f"{'pass' if ok else 'fail'}, witness {_fmt_point(st.witness)}, "
                   f"{st.hyperplane_count} hyperplanes, {st.cell_count} faces")
    if res.found:
        _out(args, f"found n={res.n}: min Delta_n = {frac_text(res.bound)} {rel} alpha_n")
        return EXIT_OK
    _out(args, f"not found within max_n={res.max_n}")
    return EXIT_FAIL


def cmd_meshitup(args) -> int:
    s, t, ambient = _pair(args)
    return _run_mesh(args, s, t, ambient)


def cmd_conjecture(args) -> int:
    args.s, args.t = "(x,y,z)", "(y,y,z)"
    s, t, ambient = _pair(args)
    return _run_mesh(args, s, t, ambient)


def cmd_minimize(args) -> int:
    s, t, ambient = _pair(args)
    if args.what == "delta":
        ps = build_delta(args.n, s, t, ambient).shifted(-alpha(args.n) if args.minus_alpha else 0)
    else:
        ps = build_level_diff(args.n, s, t, ambient)
    label = {"delta": "Delta_n" + (" - alpha_n" if args.minus_alpha else ""), "hdiff": "h_n(s) - h_n(t)"}
    if args.method == "oracle":
        rep = global_min(ps, threads=args.threads)
        _out(args, f"min {label[args.what]} = {frac_text(rep.min_value)} at {_fmt_point(rep.witness)} "
                   f"({rep.hyperplane_count} hyperplanes, {rep.cell_count} faces)")
        return EXIT_OK
    model = model_from_sum(ps, include_cap=args.cap)
    res = solve(model, node_budget=args.budget, threads=args.threads)
    value = "-" if res.value is None else frac_text(res.value)
    _out(args, f"{res.status.value}: {label[args.what]} {'>=' if res.status is Status.BOUND_ONLY else '='} "
               f"{value} at {_fmt_point(res.witness)} ({res.node_count} nodes)")
    return EXIT_OK


def cmd_heatmap(args) -> int:
    if args.total < 6:
        raise InputError("total must be at least 6")
    s, t, ambient = _pair(args)
    ps = build_delta(args.n, s, t, ambient).shifted(-alpha(args.n))
    pts = [(x, y, args.total - x - y)
           for x in range(1, args.total // 3 + 1)
           for y in range(x + 1, args.total)
           if y < args.total - x - y]
    pts = [p for p in pts if ambient.sat(Point.of(*p))]
    vals = evaluate_many(ps, pts)
    out = Path(args.out)
    try:
        with out.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "y", "z", "delta_minus_alpha", "delta_minus_alpha_decimal"])
            for p, v in zip(pts, vals):
                w.writerow([*p, frac_text(v), f"{float(v):.10f}"])
    except OSError as e:
        raise InputError(f"cannot write {out}: {e}") from e
    lo = min(vals) if vals else None
    _out(args, f"wrote {len(pts)} rows to {out}; minimum {frac_text(lo) if lo is not None else '-'}")
    return EXIT_OK


def _sim_report(args, start, stats) -> bool:
    total = sum(start)
    _out(args, f"start {start}: {stats.trials} episodes, seed {args.seed}, censored {stats.censored}")
    for p in range(3):
        f, se = stats.loser(p)
        w, wse = stats.winner(p)
        _out(args, f"  player {p + 1}: first out {f:.6f} +- {se:.6f}   wins {w:.6f} +- {wse:.6f} "
                   f"(martingale {start[p] / total:.6f})")
    ok = True
    for p in range(3):
        w, wse = stats.winner(p)
        ok &= abs(w - start[p] / total) <= 3 * wse + 1e-12
    _out(args, f"  martingale check: {'pass' if ok else 'FAIL'}")
    for r in range(1, 5):
        fr, se = stats.round_freq(r)
        _out(args, f"  player 1 out in round {r}: {fr:.6f} +- {se:.6f}  (exact {float(exact_h(r, start)):.6f})")
    return ok


def cmd_simulate(args) -> int:
    start = tuple(args.start)
    if min(start) < 1:
        raise InputError("stacks must be positive integers")
    cfg = SimConfig(seed=args.seed, trials=args.trials, max_rounds=args.max_rounds, workers=args.threads)
    ok = _sim_report(args, start, simulate(start, cfg))
    if args.ordering:
        x, y, z = start
        starts = [(x, y, z), (y, x, z), (z, x, y)]
        est = [simulate(st, cfg).loser(0) for st in starts]
        for st, (f, se) in zip(starts, est):
            _out(args, f"  f{st} ~ {f:.6f} +- {se:.6f}")
        dec = est[0][0] > est[1][0] > est[2][0]
        _out(args, f"  ordering f(x,y,z) > f(y,x,z) > f(z,x,y): {'yes' if dec else 'NO'}")
        ok &= dec
    return EXIT_OK if ok else EXIT_FAIL


def cmd_selfcheck(args) -> int:
    checks: list[tuple[str, bool]] = []
    pairs = [("xy", IDENTITY, SWAP_XY), ("yz", ROT_YZX, ROT_ZYX)]
    for name, s, t in pairs:
        for n in (1, 2, 3):
            ps = build_delta(n, s, t, V).shifted(-alpha(n))
            oracle = global_min(ps).min_value
            model = model_from_sum(ps)
            if args.inject_fault:
                k = next(i for i, r in enumerate(model.regions) if r.coef > 0)
                flipped = list(model.regions)
                flipped[k] = type(flipped[k])(-flipped[k].coef, flipped[k].literals, flipped[k].level)
                model.regions = tuple(flipped)
            res = solve(model, threads=args.threads)
            checks.append((f"oracle = MILP, {name} n={n}", res.value == oracle))
    rng = random.Random(args.seed)
    agree = True
    scale = True
    for _ in range(30):
        x = Fraction(rng.randint(1, 60), rng.randint(1, 9))
        y = x + Fraction(rng.randint(1, 60), rng.randint(1, 9))
        z = y + Fraction(rng.randint(1, 60), rng.randint(1, 9))
        p = Point(x, y, z)
        for n in (1, 2, 3):
            ps = build_delta(n, IDENTITY, SWAP_XY, V)
            v = evaluate(ps, p)
            agree &= v == exact_partial_sum(n, (x, y, z)) - exact_partial_sum(n, (y, x, z))
            scale &= v == evaluate(ps, p.scale(Fraction(7, 5)))
    checks.append(("symbolic = pointwise recursion", agree))
    checks.append(("scale invariance", scale))
    counts = True
    for n in (1, 2, 3, 4):
        counts &= len(expand_h(n, IDENTITY, V)) <= 6**n
        counts &= len(build_delta(n, IDENTITY, SWAP_XY, V).terms) <= Fraction(12, 5) * (6**n - 1)
    checks.append(("term-count bounds", counts))
    det = solve(build_milp_h_diff(3, IDENTITY, SWAP_XY), threads=1)
    det2 = solve(build_milp_h_diff(3, IDENTITY, SWAP_XY), threads=max(2, args.threads))
    checks.append(("thread-count independence", (det.value, det.witness) == (det2.value, det2.witness)))
    for label, ok in checks:
        _out(args, f"{'PASS' if ok else 'FAIL'}  {label}")
    failed = sum(1 for _, ok in checks if not ok)
    _out(args, f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes")
    common.add_argument("-v", "--verbose", action="store_true")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--s", default="(x,y,z)", help="first substitution, e.g. '(y,z,x)'")
    pair.add_argument("--t", default="(y,x,z)", help="second substitution")
    pair.add_argument("--ambient", default="0<x<y<z", help="homogeneous constraints")

    p = argparse.ArgumentParser(prog="meshcert", description="Exact certification for the maximal-bet game.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", parents=[common, pair], help="certify a lemma or the theorem")
    c.add_argument("claim", nargs="?", choices=CLAIMS, default="lemma-xy")
    c.add_argument("--method", choices=METHODS, default="decomposed")
    c.add_argument("--n", type=int, default=4)
    c.add_argument("--out", help="write the certificate (.cert) here")
    c.add_argument("--cross-check", action="store_true", help="compare against the face oracle")
    c.add_argument("--from-cert", help="rerun the configuration echoed in a certificate")
    c.set_defaults(func=cmd_certify)

    m = sub.add_parser("meshitup", parents=[common, pair], help="find the first n with min Delta_n > alpha_n")
    m.add_argument("--max-n", type=int, default=6)
    m.add_argument("--weak", action="store_true", help="accept min Delta_n >= alpha_n")
    m.set_defaults(func=cmd_meshitup)

    mn = sub.add_parser("minimize", parents=[common, pair], help="exact minimum by oracle or MILP")
    mn.add_argument("--n", type=int, default=3)
    mn.add_argument("--what", choices=("delta", "hdiff"), default="delta")
    mn.add_argument("--minus-alpha", action="store_true", help="minimise Delta_n - alpha_n")
    mn.add_argument("--method", choices=("oracle", "milp"), default="oracle")
    mn.add_argument("--cap", action="store_true", help="MILP: require objective <= 0")
    mn.add_argument("--budget", type=int, help="MILP node budget")
    mn.set_defaults(func=cmd_minimize)

    h = sub.add_parser("heatmap", parents=[common, pair], help="CSV of Delta_n - alpha_n on a lattice slice")
    h.add_argument("--total", type=int, default=2000)
    h.add_argument("--n", type=int, default=4)
    h.add_argument("--out", default="heatmap.csv")
    h.set_defaults(func=cmd_heatmap)

    sm = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimates")
    sm.add_argument("start", nargs=3, type=int, metavar=("X", "Y", "Z"))
    sm.add_argument("--trials", type=int, default=100_000)
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--max-rounds", type=int, default=64)
    sm.add_argument("--ordering", action="store_true", help="also compare f(x,y,z), f(y,x,z), f(z,x,y)")
    sm.set_defaults(func=cmd_simulate)

    sc = sub.add_parser("selfcheck", parents=[common], help="cross-validation suite")
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--inject-fault", action="store_true", help="flip one indicator sign in the MILP")
    sc.set_defaults(func=cmd_selfcheck)

    cj = sub.add_parser("conjecture", parents=[common], help="meshitup with s=(x,y,z), t=(y,y,z)")
    cj.add_argument("--ambient", default="0<x<y<z")
    cj.add_argument("--max-n", type=int, default=4)
    cj.add_argument("--weak", action="store_true")
    cj.set_defaults(func=cmd_conjecture)
    return p


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    args.stdout = stdout or sys.stdout
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
