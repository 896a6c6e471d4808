"""Command-line front end.

Exit status: 0 when a recognizer accepts, 1 when all reject, 2 on input or
validation errors (including triangle violations).
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import recognizers as rec
from .errors import MetricError, OrderError
from .matrix import DEFAULT_EPS, DistanceMatrix, to_fraction
from .matrix_io import FORMATS, parse_matrix
from .oracle import GeneratorSpec, dump_fixture, gen_weighted

EXIT_ACCEPT, EXIT_REJECT, EXIT_ERROR = 0, 1, 2

FAMILY_CHOICES = ("hypercube", "hypercube-layers", "q3", "petersen", "tree", "auto")
GEN_FAMILY_RECOGNIZER = {
    "hypercube": "hypercube",
    "petersen": "petersen",
    "tree": "tree",
    "q3-with-useless": "q3",
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="metric-recognizer",
        description="Recognize distance matrices of weighted hypercubes, Q3, Petersen graphs and trees.",
    )
    p.add_argument("input", nargs="?", default="-", help="matrix file, '-' for stdin (default)")
    p.add_argument("--family", choices=FAMILY_CHOICES, default="auto")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--eps", default=None, help="float-mode tolerance, rational or decimal (default 1e-9)")
    p.add_argument("--format", choices=FORMATS, default=None, dest="fmt",
                   help="input format (default: from file extension, else text)")
    p.add_argument("--output", choices=("json", "human"), default="json")
    p.add_argument("--bench", action="store_true", help="run the O(m^3) scaling benchmark")
    p.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--gen", metavar="FAMILY[:SIZE]",
                   help="write a fixture: hypercube:N, petersen, tree:M or q3-with-useless:T")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".", help="output directory for --gen")
    return p


# --- benchmark ----------------------------------------------------------------------

def unit_hypercube_matrix(m: int) -> DistanceMatrix:
    """Hamming-distance matrix of Q_n for m = 2**n."""
    v = np.arange(m)
    x = v[:, None] ^ v[None, :]
    dist = np.zeros((m, m), dtype=np.int64)
    while x.any():
        dist += x & 1
        x = x >> 1
    return DistanceMatrix._trusted(dist, 1, None)


def bench(sizes, repetitions: int = 3, seed: int = 0) -> dict:
    """Time classification plus the edge-count and (0,2) checks per size.

    Returns the best wall time per size and the least-squares slope of
    log(time) against log(m) over sizes of at least 4.
    """
    for m in sizes:
        if m < 2 or m > 1024 or m & (m - 1):
            raise ValueError(f"benchmark sizes must be powers of two in 2..1024, got {m}")
    seconds, accepted = [], []
    for m in sizes:
        D = unit_hypercube_matrix(m)
        best = float("inf")
        for _ in range(max(1, repetitions)):
            t0 = time.perf_counter()
            ok = rec.hypercube_count_kernel(D)
            best = min(best, time.perf_counter() - t0)
        seconds.append(best)
        accepted.append(ok)
    fit = [(m, t) for m, t in zip(sizes, seconds) if m >= 4]
    slope = None
    if len(fit) >= 2:
        slope = float(np.polyfit(np.log([m for m, _ in fit]), np.log([t for _, t in fit]), 1)[0])
    return {"sizes": list(sizes), "seconds": seconds, "accepted": accepted, "slope": slope, "seed": seed}


# --- output ---------------------------------------------------------------------------

def _human(verdict: rec.Verdict) -> str:
    head = "ACCEPTED" if verdict.accepted else "REJECTED"
    facts = ", ".join(f"{k}={v}" for k, v in (("n", verdict.n), ("r", verdict.r)) if v is not None)
    lines = [f"{verdict.family}: {head}" + (f" ({facts})" if facts else "")]
    for cond, passed in verdict.trail:
        mark = "pass" if passed else "FAIL"
        line = f"  [{mark}] {cond}"
        if not passed and verdict.rejection is not None:
            d = verdict.to_dict()["rejection"]
            line += f"  witness {d['witness']}  values {d['values']}"
        lines.append(line)
    if verdict.certificate is not None:
        emb = verdict.certificate.embedding
        lines.append("  embedding: " + " ".join(f"{i + 1}->{lab}" for i, lab in enumerate(emb.labels)))
        for u, v, w in verdict.certificate.graph.edges():
            lines.append(f"  edge {u + 1}-{v + 1}  w={rec._value_str(w)}")
    return "\n".join(lines)


def _emit(payload, text: str, args, out) -> None:
    if args.output == "json":
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(text + "\n")


def _error(exc: Exception, args, out, err) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    err.write(f"metric-recognizer: {exc}\n")
    if args.output == "json":
        out.write(json.dumps(payload) + "\n")
    return EXIT_ERROR


def _verdict_status(verdicts) -> int:
    if any(v.accepted for v in verdicts):
        return EXIT_ACCEPT
    if verdicts and all(v.rejection and v.rejection.condition == "triangle" for v in verdicts):
        return EXIT_ERROR
    return EXIT_REJECT


def _run_gen(args, out) -> int:
    family, _, size = args.gen.partition(":")
    spec = GeneratorSpec(family, int(size) if size else None, seed=args.seed)
    _, D = gen_weighted(spec)
    verdict = rec.recognize(D, GEN_FAMILY_RECOGNIZER[family])
    paths = dump_fixture(spec.name, D, verdict.to_dict(), args.out)
    _emit({"fixture": spec.name, "files": list(paths), "accepted": verdict.accepted},
          f"wrote {paths[0]} and {paths[1]}", args, out)
    return EXIT_ACCEPT


def _run_bench(args, out) -> int:
    report = bench(args.sizes, args.repetitions, args.seed)
    lines = [f"m={m:5d}  {t * 1e3:10.2f} ms  accepted={ok}"
             for m, t, ok in zip(report["sizes"], report["seconds"], report["accepted"])]
    if report["slope"] is not None:
        lines.append(f"log-log slope: {report['slope']:.3f}")
    _emit(report, "\n".join(lines), args, out)
    return EXIT_ACCEPT


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.gen:
            return _run_gen(args, out)
        if args.bench:
            return _run_bench(args, out)
        eps = None
        if args.mode == "float":
            eps = float(to_fraction(args.eps)) if args.eps is not None else DEFAULT_EPS
            if eps <= 0:
                raise ValueError("--eps must be positive")
        if args.input == "-":
            text, fmt = stdin.read(), args.fmt or "text"
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
            fmt = args.fmt or ("csv" if args.input.endswith(".csv")
                               else "json" if args.input.endswith(".json") else "text")
        P = parse_matrix(text, fmt, eps=eps)
        if args.family != "auto":
            verdict = rec.recognize(P, args.family)
            _emit(verdict.to_dict(), _human(verdict), args, out)
            return _verdict_status([verdict])
        verdicts, skipped = [], []
        runnable = rec.applicable(P.m)
        for family in ("hypercube", "q3", "petersen", "tree"):
            if family in runnable:
                verdicts.append(rec.recognize(P, family))
            else:
                reason = {"hypercube": "OrderNotPowerOfTwo", "q3": "OrderNot8", "petersen": "OrderNot10"}[family]
                skipped.append({"family": family, "reason": reason})
        payload = {"verdicts": [v.to_dict() for v in verdicts], "skipped": skipped}
        text_out = "\n".join([_human(v) for v in verdicts]
                             + [f"{s['family']}: not applicable ({s['reason']})" for s in skipped])
        _emit(payload, text_out, args, out)
        return _verdict_status(verdicts)
    except (MetricError, OrderError, ValueError, OSError) as exc:
        return _error(exc, args, out, err)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
