"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--cells N] [--repeat R]
"""
import argparse
import timeit

import numpy as np

from neurohex._kernels import _pykernels

try:
    from neurohex._kernels import _ckernels
except ImportError:
    _ckernels = None

BITS = 6


def cases(k, cells, anchor):
    pos = k.ring_positions(cells, anchor)
    scalar = [tuple(int(v) for v in c) for c in cells[:2000]]
    return {
        "disc(r=60)": lambda: k.disc((0, 0, 0), 60),
        "ring_positions": lambda: k.ring_positions(cells, anchor),
        "decode_many": lambda: k.decode_many(pos),
        "quantized_angles": lambda: k.quantized_angles(cells, anchor, BITS),
        "distances": lambda: k.distances(cells, anchor),
        "rotate_many": lambda: k.rotate_many(cells, 77, BITS),
        "coarsen_many(m=4)": lambda: k.coarsen_many(cells, 4),
        "encode_ring x2000": lambda: [k.encode_ring(*c) for c in scalar],
        "rotate x2000": lambda: [k.rotate(*c, 77, BITS) for c in scalar],
        "orientation x2000": lambda: [k.orientation(*c, 1, -2, 1, 100, BITS) for c in scalar],
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cells", type=int, default=50_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    q = rng.integers(-300, 300, args.cells)
    r = rng.integers(-300, 300, args.cells)
    cells = np.stack([q, r, -q - r], axis=1).astype(np.int64)
    anchor = (3, -5, 2)

    py = cases(_pykernels, cells, anchor)
    cy = cases(_ckernels, cells, anchor) if _ckernels else {}
    print(f"{'kernel':<20}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in py.items():
        tp = best(fn, args.repeat) * 1e3
        if name in cy:
            tc = best(cy[name], args.repeat) * 1e3
            print(f"{name:<20}{tp:>12.2f}{tc:>12.2f}{tp / tc:>9.1f}x")
        else:
            print(f"{name:<20}{tp:>12.2f}{'n/a':>12}{'':>10}")


if __name__ == "__main__":
    main()
