"""Compare the compiled GF(p) kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Both backends are imported directly, so one process times both.  Results are
checked for equality before timing.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from rml.kernels import _pykernels

try:
    from rml.kernels import _ckernels
except ImportError:  # pragma: no cover - depends on build
    _ckernels = None


def workloads(rng: np.random.Generator):
    """(name, function name, args) triples sized to take milliseconds each."""
    return [
        ("rref 40x60 over GF(2)", "rref_modp", (rng.integers(0, 2, (40, 60)), 2)),
        ("rref 30x30 over GF(3)", "rref_modp", (rng.integers(0, 3, (30, 30)), 3)),
        ("batch rank 20000 3x3 over GF(2)", "batch_rank_modp", (rng.integers(0, 2, (20000, 3, 3)), 2)),
        ("batch rank 20000 3x3 over GF(3)", "batch_rank_modp", (rng.integers(0, 3, (20000, 3, 3)), 3)),
        ("rank distribution dim 12 in Mat_3x4(GF(2))", "rank_distribution_modp", (rng.integers(0, 2, (12, 12)), 3, 4, 2)),
        ("rank distribution dim 8 in Mat_3x3(GF(3))", "rank_distribution_modp", (rng.integers(0, 3, (8, 9)), 3, 3, 3)),
    ]


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'workload':<46}{'numpy ms':>10}{'cython ms':>11}{'speedup':>9}")
    for name, fn, fargs in workloads(rng):
        py, cy = getattr(_pykernels, fn), getattr(_ckernels, fn)
        if not _same(py(*fargs), cy(*fargs)):
            raise SystemExit(f"backends disagree on {name}")
        t_py = min(timeit.repeat(lambda: py(*fargs), number=1, repeat=args.repeat)) * 1e3
        t_cy = min(timeit.repeat(lambda: cy(*fargs), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<46}{t_py:>10.2f}{t_cy:>11.2f}{t_py / t_cy:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
