"""Command-line front end: selftest, mul, bench, gabidulin.

Exit codes: 0 success, 1 mismatch or failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import os
import statistics
import sys
import time

import numpy as np

from . import fastmult, io, modmult, selftest
from .fields import ExtField, FieldError, default_modulus
from .gabidulin import DecodingFailure, GabidulinCode, plant_and_recover
from .skew import SkewPoly, skew_mul_naive

BENCH_HEADER = ["p", "r", "d", "mode", "nanos", "crt_retries"]
MODES = ("naive", "cyclic", "crt", "small", "auto")


class UsageError(Exception):
    pass


def _text(arg):
    """Contents of ``arg`` when it names a file, otherwise ``arg`` itself."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read().strip()
    return arg.strip()


def _field(arg, seed):
    p, f = io.parse_field(_text(arg))
    return ExtField(p, f, rng=np.random.default_rng(seed))


def _int_list(text):
    return [int(v) for v in text.split(",") if v.strip()]


def _product(mode, a, b, rng, workers=1, stats=None):
    if mode == "naive":
        return skew_mul_naive(a, b)
    if mode == "cyclic":
        return modmult.mod_mul_cyclic(a, b)
    if mode == "crt":
        return fastmult.mult_crt(a, b, rng, stats=stats, workers=workers)
    if mode == "small":
        return fastmult.mult_small_degree(a, b)
    if mode == "auto":
        return fastmult.multiply(a, b, rng, stats=stats, workers=workers)
    raise UsageError(f"unknown mode {mode!r}")


# -- selftest


def cmd_selftest(args):
    primes = _int_list(args.primes)
    degrees = _int_list(args.degrees)
    suites = args.suite or None
    for s in suites or []:
        if s not in selftest.SUITES:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(selftest.SUITES)}")
    out = open(args.report, "w", encoding="utf-8") if args.report else sys.stdout
    failed = total = 0
    try:
        for line in selftest.run(args.seed, primes, degrees, args.max_degree, args.trials, suites, args.inject_fault):
            total += 1
            failed += line["verdict"] != "pass"
            out.write(selftest.format_line(line) + "\n")
            if line["verdict"] != "pass" and not args.quiet:
                print(f"FAIL {line['suite']}/{line['check']} p={line['params']['p']} r={line['params']['r']}"
                      + (f" ({line['error']})" if "error" in line else ""), file=sys.stderr)
    finally:
        if args.report:
            out.close()
    print(f"{total - failed}/{total} checks passed", file=sys.stderr)
    return 1 if failed else 0


# -- mul


def cmd_mul(args):
    ring = _field(args.field, args.seed)
    a = io.parse_poly(_text(args.a), ring)
    b = io.parse_poly(_text(args.b), ring)
    if args.mode == "small" and not (a.is_zero() or b.is_zero()) and a.degree + b.degree >= ring.r:
        raise UsageError("mode 'small' needs deg A + deg B < r")
    prod = _product(args.mode, a, b, np.random.default_rng(args.seed))
    print(io.format_poly(prod))
    return 0


# -- bench


def _slope(xs, ys):
    lx, ly = np.log(xs), np.log(ys)
    return float(np.polyfit(lx, ly, 1)[0])


def bench_rows(primes, rs, degrees, modes, reps=5, seed=0, workers=1):
    """Yield (p, r, d, mode, nanos, crt_retries): median of ``reps`` timed runs after one warm-up."""
    for p in primes:
        for r in rs:
            ring = ExtField(p, default_modulus(p, r), rng=np.random.default_rng([seed, p, r]))
            for d in degrees:
                for mode in modes:
                    if mode == "small" and 2 * d >= r:
                        raise UsageError(f"mode 'small' needs 2d < r (d={d}, r={r})")
                    rng = np.random.default_rng([seed, p, r, d])
                    a = SkewPoly.random(ring, d, rng)
                    b = SkewPoly.random(ring, d, rng)
                    mrng = np.random.default_rng([seed, p, r, d, 1])
                    _product(mode, a, b, mrng, workers)  # warm-up
                    times, stats = [], {}
                    for _ in range(reps):
                        t0 = time.perf_counter_ns()
                        _product(mode, a, b, mrng, workers, stats)
                        times.append(time.perf_counter_ns() - t0)
                    yield p, r, d, mode, int(statistics.median(times)), stats.get("retries", 0)


def slope_summary(rows):
    """Log-log slope of nanos against d for every (p, r, mode) with at least two degrees."""
    groups = {}
    for p, r, d, mode, nanos, _ in rows:
        groups.setdefault((p, r, mode), []).append((d, nanos))
    out = {}
    for key, pts in groups.items():
        if len(pts) >= 2:
            ds, ns = zip(*pts)
            out[key] = _slope(ds, ns)
    return out


def cmd_bench(args):
    if args.scenario == "scaling":
        primes, rs, degrees = [2], [16], [16, 32, 64, 128]
    else:
        primes, rs, degrees = _int_list(args.primes), _int_list(args.degrees), _int_list(args.d)
    modes = [m.strip() for m in args.modes.split(",")]
    for m in modes:
        if m not in MODES:
            raise UsageError(f"unknown mode {m!r}")
    workers = (os.cpu_count() or 1) if args.parallel else 1
    if args.parallel:
        print("note: --parallel on, timings measure wall clock", file=sys.stderr)
    fh = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else sys.stdout
    rows = []
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BENCH_HEADER)
        for row in bench_rows(primes, rs, degrees, modes, args.reps, args.seed, workers):
            writer.writerow(row)
            fh.flush()
            rows.append(row)
    finally:
        if args.csv:
            fh.close()
    summary = sys.stderr if fh is sys.stdout else sys.stdout
    for (p, r, mode), s in slope_summary(rows).items():
        print(f"slope p={p} r={r} mode={mode}: {s:.3f}", file=summary)
    return 0


# -- gabidulin


def _code(args):
    if args.field:
        ring = _field(args.field, args.seed)
    else:
        ring = ExtField(args.p, default_modulus(args.p, args.r), rng=np.random.default_rng(args.seed))
    if not 1 <= args.k <= args.n <= ring.r:
        raise UsageError(f"need 1 <= k <= n <= r, got k={args.k}, n={args.n}, r={ring.r}")
    return GabidulinCode.power_points(ring, args.n, args.k)


def _write(path, text):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_gabidulin(args):
    code = _code(args)
    ring = code.ring
    if args.action == "encode":
        if not args.input:
            raise UsageError("encode needs --input (message polynomial)")
        msg = io.parse_poly(_text(args.input), ring)
        if not msg.is_zero() and msg.degree >= code.k:
            raise UsageError(f"message degree {msg.degree} is not below k={code.k}")
        _write(args.output, io.format_elements(code.encode(msg), ring))
        return 0
    if args.action == "decode":
        if not args.input:
            raise UsageError("decode needs --input (received word)")
        received = io.parse_elements(_text(args.input), ring)
        if len(received) != code.n:
            raise UsageError(f"received word has {len(received)} entries, code length is {code.n}")
        out = code.decode(received)
        if isinstance(out, DecodingFailure):
            print(f"decoding failure: {out.reason}", file=sys.stderr)
            return 1
        _write(args.output, io.format_poly(out))
        return 0
    # demo
    t = code.t_max if args.t is None else args.t
    counts = plant_and_recover(code, t, args.trials, np.random.default_rng(args.seed))
    print(f"n={code.n} k={code.k} t={t} t_max={code.t_max} field={ring.describe()}")
    print(f"{counts['recovered']}/{args.trials} decoded")
    print(f"failures reported: {counts['failure']}, other codeword within radius: {counts['nearby']}, "
          f"wrong: {counts['wrong']}")
    if counts["wrong"] or (t <= code.t_max and counts["recovered"] != args.trials):
        return 1
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="skewpoly", description="Skew polynomial arithmetic over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    st = sub.add_parser("selftest", help="run the property suites over a (p, r) grid")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--primes", default="2,3,5,7")
    st.add_argument("--degrees", default="1,2,3,4,5,6,7,8", help="extension degrees r")
    st.add_argument("--max-degree", type=int, default=64, help="largest polynomial degree")
    st.add_argument("--trials", type=int, default=2, help="random instances per check")
    st.add_argument("--suite", action="append", help="restrict to a suite (repeatable)")
    st.add_argument("--report", help="JSON-lines report path (default: stdout)")
    st.add_argument("--quiet", action="store_true")
    st.add_argument("--inject-fault", action="store_true", help="corrupt the reference product (testing only)")
    st.set_defaults(func=cmd_selftest)

    mu = sub.add_parser("mul", help="multiply two skew polynomials")
    mu.add_argument("field", help="field text or file: p=<prime>;f=c0,...,cr")
    mu.add_argument("a", help="polynomial text or file")
    mu.add_argument("b", help="polynomial text or file")
    mu.add_argument("--mode", choices=MODES, default="auto")
    mu.add_argument("--seed", type=int, default=0)
    mu.set_defaults(func=cmd_mul)

    be = sub.add_parser("bench", help="time multiplication and print CSV")
    be.add_argument("--scenario", choices=("scaling", "grid"), default="scaling")
    be.add_argument("--primes", default="2")
    be.add_argument("--degrees", default="16", help="extension degrees r (grid scenario)")
    be.add_argument("--d", default="16,32,64,128", help="polynomial degrees (grid scenario)")
    be.add_argument("--modes", default="naive,crt")
    be.add_argument("--reps", type=int, default=5)
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--csv", help="output path (default: stdout)")
    be.add_argument("--parallel", action="store_true", help="thread the CRT residue products")
    be.set_defaults(func=cmd_bench)

    ga = sub.add_parser("gabidulin", help="Gabidulin encode, decode or demo")
    ga.add_argument("action", choices=("encode", "decode", "demo"))
    ga.add_argument("--field", help="field text or file (default: first irreducible of degree r)")
    ga.add_argument("--p", type=int, default=2)
    ga.add_argument("--r", type=int, default=8)
    ga.add_argument("--n", type=int, default=8)
    ga.add_argument("--k", type=int, default=4)
    ga.add_argument("--t", type=int, help="planted error rank (demo; default t_max)")
    ga.add_argument("--trials", type=int, default=100)
    ga.add_argument("--seed", type=int, default=0)
    ga.add_argument("--input", help="message (encode) or received word (decode), text or file")
    ga.add_argument("--output", help="output file (default: stdout)")
    ga.set_defaults(func=cmd_gabidulin)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, io.ParseError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
