"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from hardyshell import _kernels
from hardyshell.scatter import PotentialSpec, coefficients_array


def cases():
    rng = np.random.default_rng(0)
    pot = PotentialSpec(1.0, 2.0, 1.0)
    r = np.sort(rng.uniform(0, 40, 800))
    k = np.sort(rng.uniform(0.01, 20, 1200)) + 0j
    args = coefficients_array(pot, k).kernel_args()
    cr = rng.normal(size=r.size) + 0j
    ck = rng.normal(size=k.size) + 0j
    t = np.sort(rng.uniform(0, 2, 600))
    amp = rng.normal(size=t.size) + 0j
    z = np.linspace(-100, 100, 2001) - 1j
    return {
        "chi_matrix 800x1200": lambda b: b.chi_matrix(r, *args),
        "chi_apply_k 800x1200": lambda b: b.chi_apply_k(r, cr, *args),
        "chi_apply_r 800x1200": lambda b: b.chi_apply_r(r, ck, *args),
        "laplace_sum 600x2001": lambda b: b.laplace_sum(t, amp, z),
        "laplace_sum_uniform 600x2001": lambda b: b.laplace_sum_uniform(t, amp, -100.0, 0.1, 2001, -1.0),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = [("numpy", _kernels.python_backend)]
    if _kernels.compiled_backend is not None:
        backends.append(("cython", _kernels.compiled_backend))
    else:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':32s}" + "".join(f"{name:>12s}" for name, _ in backends) + "     speedup")
    for label, fn in cases().items():
        times = [min(timeit.repeat(lambda b=b: fn(b), number=1, repeat=args.repeat)) for _, b in backends]
        row = f"{label:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
