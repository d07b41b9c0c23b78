"""Time the compiled and numpy cavity kernels on representative force integrals.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each case is run once per backend to warm up, then ``--repeat`` times; the
best wall time is reported together with the largest relative difference
between backends.
"""
import argparse
import time

from cavityforce import _kernels
from cavityforce.dispersion import VACUUM, AtomSpecies, Constant, Drude, Medium, Plasma, PolarizabilityModel
from cavityforce.forces import CavityConfig, SlabConfig, atom_force, slab_force
from cavityforce.stratified import Layer, Stack


def cases():
    metal = Stack(Medium(Drude(3.0, 0.05)))
    coated = Stack(Medium(Plasma(2.0)), (Layer(Medium(Constant(3.0), Constant(1.5)), 0.1),
                                         Layer(Medium(Constant(2.0)), 0.05)))
    fluid = Medium(Constant(1.8), Constant(1.1))
    atom = AtomSpecies(PolarizabilityModel.single(0.5, 1.0), PolarizabilityModel.single(0.1, 2.0))
    return {
        "atom, half-space, vacuum": lambda: atom_force(CavityConfig.half_space(VACUUM, metal, 0.3), atom),
        "atom, fluid cavity, layered": lambda: atom_force(CavityConfig(fluid, metal, coated, 0.7, 0.2), atom),
        "slab, fluid cavity, layered": lambda: slab_force(CavityConfig(fluid, metal, coated, 0.5, 0.3),
                                                          SlabConfig(Medium(Constant(4.0)), 0.2)),
    }


def best_time(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = _kernels.implementations()
    if "cython" not in impls:
        print("compiled kernel not built; only the numpy fallback is available")
    original = _kernels.cavity_moments
    print(f"{'case':32s}" + "".join(f"{name:>12s}" for name in impls) + f"{'speedup':>10s}{'max rel diff':>14s}")
    try:
        for label, fn in cases().items():
            times, totals = {}, {}
            for name, impl in impls.items():
                _kernels.cavity_moments = impl
                times[name], res = best_time(fn, args.repeat)
                totals[name] = res.total
            speed = times["python"] / times["cython"] if "cython" in times else 1.0
            ref = totals["python"]
            diff = max(abs(v - ref) / abs(ref) for v in totals.values())
            print(f"{label:32s}" + "".join(f"{times[n]*1e3:10.1f}ms" for n in impls) + f"{speed:9.1f}x{diff:14.2e}")
    finally:
        _kernels.cavity_moments = original


if __name__ == "__main__":
    main()
