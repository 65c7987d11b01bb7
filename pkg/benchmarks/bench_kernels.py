"""Time the compiled and numpy kernels on growing time grids.

    python benchmarks/bench_kernels.py [--sizes 2001 20001 200001] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from spinbattery import kernels
from spinbattery.linalg import eigh
from spinbattery.model import ModelParams, Preset, build_all, initial_state


def bench(impl, n, repeat):
    hs = build_all(ModelParams(J=1.0, delta=2.0, D=1.7), Preset.XXZ)
    d = eigh(hs.h_total)
    times = np.linspace(0.0, 2 * np.pi, n)
    psi = initial_state()
    states = impl.evolve_states(d.eigenvalues, d.eigenvectors, psi, times)
    t_evolve = min(timeit.repeat(lambda: impl.evolve_states(d.eigenvalues, d.eigenvectors, psi, times),
                                 number=1, repeat=repeat))
    t_obs = min(timeit.repeat(lambda: impl.pure_state_observables(states, hs.h_free), number=1, repeat=repeat))
    return t_evolve, t_obs


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[2001, 20001, 200001])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available()
    print(f"{'points':>8} {'backend':>8} {'evolve ms':>10} {'observables ms':>15}")
    for n in args.sizes:
        res = {}
        for name in backends:
            res[name] = bench(kernels.load(name), n, args.repeat)
            te, to = res[name]
            print(f"{n:>8} {name:>8} {te * 1e3:>10.2f} {to * 1e3:>15.2f}")
        if len(res) == 2:
            (pe, po), (ce, co) = res["python"], res["cython"]
            print(f"{'':>8} {'speedup':>8} {pe / ce:>9.1f}x {po / co:>14.1f}x")


if __name__ == "__main__":
    main()
