"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--pairs N] [--repeat R]

Kernel timings run in-process against both modules. End-to-end cleaning runs
in subprocesses so each one picks its backend at import time.
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import timeit

from catclean import _kernels_py
from catclean.synthetic import generate_planted

try:
    from catclean import _kernels as compiled
except ImportError:
    compiled = None

_END_TO_END = """
import json, sys, time
from catclean import kernels
from catclean.cleaner import clean_dataset
from catclean.synthetic import generate_planted
ds = generate_planted({n}, seed=0).dataset
t = time.perf_counter()
clean_dataset(ds)
print(json.dumps({{"backend": kernels.BACKEND, "seconds": time.perf_counter() - t}}))
"""


def _workload(n: int):
    pairs = generate_planted(n, seed=0).dataset.pairs
    sources = [(p.code, p.language.value == "python") for p in pairs]
    words = [p.comment.split() for p in pairs]
    names = [name for p in pairs for name in p.code.replace("(", " ").split() if name.isidentifier()]
    return sources, words, names


def _bench(impl, sources, words, names, repeat: int) -> dict:
    def scan():
        for src, py in sources:
            try:
                impl.scan(src, py)
            except Exception:
                pass

    def lcs():
        for a, b in zip(words, words[1:]):
            impl.lcs_length(a, b)

    def split():
        for name in names:
            impl.split_identifier(name)

    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in
            (("scan", scan), ("lcs_length", lcs), ("split_identifier", split))}


def _end_to_end(n: int, pure: bool) -> dict:
    env = dict(os.environ)
    env.pop("CATCLEAN_PURE_PYTHON", None)
    if pure:
        env["CATCLEAN_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", _END_TO_END.format(n=n)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=5000, help="synthetic pairs per workload")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--no-end-to-end", action="store_true")
    args = parser.parse_args(argv)

    sources, words, names = _workload(args.pairs)
    backends = [("python", _kernels_py)] + ([("cython", compiled)] if compiled else [])
    results = {name: _bench(impl, sources, words, names, args.repeat) for name, impl in backends}

    print(f"{'kernel':<18}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if compiled else ""))
    for kernel in ("scan", "lcs_length", "split_identifier"):
        row = f"{kernel:<18}" + "".join(f"{results[name][kernel]:>11.3f}s" for name, _ in backends)
        if compiled:
            row += f"{results['python'][kernel] / results['cython'][kernel]:>11.1f}x"
        print(row)

    if not args.no_end_to_end:
        print()
        for pure in (True, False):
            if not pure and compiled is None:
                continue
            r = _end_to_end(args.pairs, pure)
            rate = args.pairs / r["seconds"]
            print(f"clean_dataset[{r['backend']}]: {r['seconds']:.2f}s for {args.pairs} pairs ({rate:,.0f} pairs/s)")
    if compiled is None:
        print("compiled kernels not built; run: python setup.py build_ext --inplace")
    return 0


if __name__ == "__main__":
    sys.exit(main())
