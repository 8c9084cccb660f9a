"""Benchmark: numba kernels vs the pure-numpy fallback.

Times the Gram-matrix peeling DP (all degrees up to a depth) and the
permutation-sum oracle (all word pairs of one degree) on each backend, and
checks that both backends return identical matrices.

    python benchmarks/bench_kernels.py --cartan A2 --depth 6 --repeat 3
"""
import argparse
import itertools
import time

from shapovalov import _kernels
from shapovalov.cartan import degrees_up_to, preset
from shapovalov.free_algebra import FreeAlgebra, gram_matrix, perm_form
from shapovalov.scalars import make_ring


def use_backend(name):
    peel, match, perm = _kernels.BACKENDS[name]
    _kernels.gram_peel_block = peel
    _kernels.matching_positions = match
    _kernels.perm_sum_counts = perm


def run_gram(cartan, l, depth, lam):
    F = FreeAlgebra(cartan, make_ring(l))
    return {nu: gram_matrix(F, nu, lam) for nu in degrees_up_to(cartan.rank, depth)}


def run_perm(cartan, l, nu, lam):
    F = FreeAlgebra(cartan, make_ring(l))
    ws = F.words(nu)
    return [[perm_form(F, x, y, lam) for y in ws] for x in ws]


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cartan", default="A2")
    ap.add_argument("--l", default="5")
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--weight", default="2,-1")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    cartan = preset(args.cartan)
    l = args.l if args.l == "generic" else int(args.l)
    lam = tuple(int(x) for x in args.weight.split(","))
    top = max(degrees_up_to(cartan.rank, args.depth), key=lambda nu: (sum(nu), min(nu)))

    backends = ["numpy"] + (["numba"] if _kernels.NUMBA_AVAILABLE else [])
    results = {}
    for name in backends:
        use_backend(name)
        # warm up the JIT on a tiny instance
        run_gram(cartan, l, 2, lam)
        run_perm(cartan, l, tuple(1 for _ in range(cartan.rank)), lam)
        t_gram, g = best_of(lambda: run_gram(cartan, l, args.depth, lam), args.repeat)
        t_perm, p = best_of(lambda: run_perm(cartan, l, top, lam), args.repeat)
        results[name] = (t_gram, t_perm, g, p)

    print(f"{args.cartan}  l={l}  depth<={args.depth}  Lambda={lam}  perm degree={top}")
    print(f"{'backend':<8} {'gram DP (s)':>12} {'perm sums (s)':>14}")
    for name, (tg, tp, _, _) in results.items():
        print(f"{name:<8} {tg:>12.4f} {tp:>14.4f}")
    if len(results) == 2:
        (g0, p0), (g1, p1) = ((r[2], r[3]) for r in results.values())
        same = g0 == g1 and p0 == p1
        ratio = lambda k: results["numpy"][k] / results["numba"][k]
        print(f"speedup  {ratio(0):>12.2f}x {ratio(1):>13.2f}x")
        print(f"identical results: {same}")
    else:
        print("numba unavailable; only the numpy path was timed")
    use_backend("numba" if _kernels.USING_NUMBA else "numpy")


if __name__ == "__main__":
    main()
