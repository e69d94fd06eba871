"""Time the compiled and pure-Python cell-sweep kernels on the same graph energies."""
import argparse
import time
from fractions import Fraction

from gasket import kernels
from gasket.harmonic import HarmonicFunction
from gasket.pwharmonic import from_harmonic, graph_energy, loop_potential


def workloads():
    yield "harmonic (3,-1,7)", from_harmonic(HarmonicFunction((3, -1, 7)))
    yield "psi_root + psi_01/3", loop_potential("") + loop_potential("01").scale(Fraction(1, 3))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - t0)
    return min(times), value


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--level", type=int, default=12)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    backends = ["python"] + (["cython"] if kernels.compiled is not None else [])
    print(f"level {args.level} ({3 ** args.level} cells); compiled kernel available: {kernels.compiled is not None}")
    for name, u in workloads():
        results = {}
        for b in backends:
            results[b] = best_of(lambda: graph_energy(u, args.level, backend=b), args.repeat)
        values = {v for _, v in results.values()}
        assert len(values) == 1, f"backends disagree on {name}: {values}"
        line = "  ".join(f"{b} {t:.3f}s" for b, (t, _) in results.items())
        if len(results) == 2:
            line += f"  speedup x{results['python'][0] / results['cython'][0]:.1f}"
        print(f"{name:24s} E = {values.pop()}  {line}")


if __name__ == "__main__":
    main()
