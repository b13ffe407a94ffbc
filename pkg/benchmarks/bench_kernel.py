"""Compare the compiled and pure-Python kernels on the three hot loops.

    python benchmarks/bench_kernel.py [--repeat 3]
"""
import argparse
import itertools
import timeit

from conolly import _pykernel
from conolly.reference import definitional_sequence

try:
    from conolly import _ckernel
except ImportError:
    _ckernel = None


def workloads(impl):
    target = impl.prepare_target(definitional_sequence(2, 1, 1000))
    pairs = list(itertools.combinations_with_replacement(range(1, 13), 2))
    bpairs = list(itertools.combinations_with_replacement(range(1, 31), 2))[:200]

    def evaluate():
        impl.evaluate([0, 1], [[1], [2]], [1, 2], 100_000)

    def search_slice():
        for a in pairs:
            for b in bpairs:
                impl.match_prefix([0, 3], [list(a), list(b)], target, 20, 1000)

    def ceiling_sweep():
        for a in pairs:
            for b in pairs:
                impl.formal_satisfy([0, 2], [list(a), list(b)], 4, -32, 32)

    return {"evaluate 1e5 terms": evaluate,
            "search slice (15600 specs)": search_slice,
            "ceiling oracle (6084 specs)": ceiling_sweep}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = [("python", _pykernel)] + ([("cython", _ckernel)] if _ckernel else [])
    results = {name: {k: min(timeit.repeat(fn, number=1, repeat=args.repeat))
                      for k, fn in workloads(impl).items()} for name, impl in impls}
    print(f"{'workload':32s}" + "".join(f"{n:>12s}" for n, _ in impls) + ("   speedup" if _ckernel else ""))
    for key in results["python"]:
        row = f"{key:32s}" + "".join(f"{results[n][key]:11.4f}s" for n, _ in impls)
        if _ckernel:
            row += f"{results['python'][key] / results['cython'][key]:9.1f}x"
        print(row)
    if _ckernel is None:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
