"""Time the compiled and pure-Python candidate scanners on the same searches.

    python benchmarks/bench_kernel.py [--repeat N] [--max-python-candidates N]

Both scanners run over an identical candidate range and must return the same
result; the range is cut to ``--max-python-candidates`` so the Python side stays short.
"""
import argparse
import time

from curvedop.corpus import lookup
from curvedop.search import SearchSpec, prepare, scan_compiled, scan_python

CASES = [
    ("ex2.3-frame", "curved_oos", ("R", "S", "omega"), 3),
    ("ex2.3-frame-2dim", "curved_oos", ("R", "S"), 3),
    ("regular-frame", "curved_rbs", ("R", "S", "omega"), 2),
    ("regular-frame", "associativity", ("mu",), 3),
    ("dcrbs-frame", "double_curved_rbs", ("R", "S", "omega1"), 2),
    ("grb-frame", "generalized_rb", ("R",), 5),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-python-candidates", type=int, default=20000)
    args = ap.parse_args(argv)
    if scan_compiled is None:
        print("compiled kernel not built; only the Python scanner is available")
    print(f"{'template':18} {'structure':18} {'p':>2} {'range':>9} {'python s':>9} {'compiled s':>10} {'speedup':>8}")
    for template, structure, unknowns, p in CASES:
        prep = prepare(SearchSpec(lookup(template).bundle, structure, unknowns, p))
        stop = min(prep.total, args.max_python_candidates)
        common = (prep.kernel, prep.buf, prep.offs, prep.dims, prep.slots, p, 0, stop, -1)
        tp, rp = best_of(lambda: scan_python(*common), args.repeat)
        if scan_compiled is not None:
            tc, rc = best_of(lambda: scan_compiled(*common), args.repeat)
            assert rc == rp, f"scanners disagree on {template}/{structure}"
            speed = f"{tp / tc:8.1f}x" if tc else "     inf"
            tcs = f"{tc:10.4f}"
        else:
            tcs, speed = f"{'-':>10}", f"{'-':>8}"
        print(f"{template:18} {structure:18} {p:>2} {stop:>9} {tp:9.4f} {tcs} {speed}")


if __name__ == "__main__":
    main()
