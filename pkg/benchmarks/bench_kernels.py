"""Compare the compiled kernels with the pure-Python twin.

    python3 benchmarks/bench_kernels.py [--n 12] [--seed 1] [--repeat 3]

Times ``subset_betti`` on the full vertex set of random edge ideals, then a
complete Hochster table in a subprocess per backend (the backend is fixed
at import, so the switch goes through ``EDGEREG_PURE_PYTHON``).
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from edgereg import _pykernels
from edgereg.graph import Graph
from edgereg.ideal import edge_ideal

try:
    from edgereg import _ckernels
except ImportError:
    _ckernels = None

TABLE_SNIPPET = """
import random, time
from edgereg import kernels
from edgereg.betti import hochster_table
from edgereg.graph import Graph
from edgereg.homology import FieldSpec
from edgereg.ideal import edge_ideal
rng = random.Random({seed})
g = Graph.from_edges({n}, [(u, v) for u in range({n}) for v in range(u + 1, {n}) if rng.random() < 0.5])
t0 = time.perf_counter()
t = hochster_table(edge_ideal(g), FieldSpec.parse("{field}"))
print(kernels.BACKEND, time.perf_counter() - t0, t.regularity())
"""


def random_gens(n, rng, p=0.5):
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
    return edge_ideal(g).gens


def bench_subset(n, seed, repeat):
    rng = random.Random(seed)
    cases = [random_gens(n, rng) for _ in range(5)]
    w = (1 << n) - 1
    print(f"subset_betti, {len(cases)} random ideals on {n} variables, full vertex set")
    for p in (2, 1073741789):
        py = min(timeit.repeat(lambda: [_pykernels.subset_betti(c, w, p) for c in cases], number=1, repeat=repeat))
        line = f"  p={p:<11} python {py * 1e3:9.2f} ms"
        if _ckernels is not None:
            for c in cases:
                assert _ckernels.subset_betti(c, w, p) == _pykernels.subset_betti(c, w, p)
            cy = min(timeit.repeat(lambda: [_ckernels.subset_betti(c, w, p) for c in cases], number=1, repeat=repeat))
            line += f"   cython {cy * 1e3:8.2f} ms   speedup {py / cy:6.1f}x"
        print(line)


def bench_table(n, seed, field):
    print(f"hochster_table, G({n}, 0.5), field {field}")
    results = {}
    for pure in ("0", "1"):
        env = dict(os.environ, EDGEREG_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", TABLE_SNIPPET.format(n=n, seed=seed, field=field)],
                             env=env, capture_output=True, text=True, check=True).stdout.split()
        backend, secs, reg = out[0], float(out[1]), int(out[2])
        results[backend] = (secs, reg)
        print(f"  {backend:<7} {secs:8.3f} s   reg {reg}")
    if len({r for _, r in results.values()}) > 1:
        raise SystemExit("backends disagree on the regularity")
    if len(results) == 2:
        print(f"  speedup {results['python'][0] / results['cython'][0]:.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--field", default="f2")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; timing the Python twin only")
    bench_subset(args.n, args.seed, args.repeat)
    bench_table(args.n, args.seed, args.field)


if __name__ == "__main__":
    main()
