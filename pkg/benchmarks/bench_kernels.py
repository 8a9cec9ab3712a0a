"""Compare the compiled and pure-Python kernel backends.

Kernel timings call both backends directly on the same random inputs.  The
end-to-end timings run a small workload in a subprocess, once per backend,
with ``LAURICELLA_DMOD_PURE`` selecting the fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--seed S]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from lauricella_dmod import kernels
from lauricella_dmod.polyalg import BITS, PolyRing, QQ
from lauricella_dmod.weyl import weyl_algebra

WORKLOADS = {
    "singular locus A, m=4": "sing_product('A', 4)",
    "singular locus B, m=4": "sing_product('B', 4)",
    "groebner check B, m=5": "check_family('B', 5)",
    "groebner check C, m=3": "check_family('C', 3)",
}

SETUP = """
from lauricella_dmod.singlocus import sing_product
from lauricella_dmod.families import FamilySpec, operator_family
from lauricella_dmod.groebner import buchberger_check
from lauricella_dmod.orders import GLOBAL01, LOCAL01

def check_family(family, m):
    order = GLOBAL01 if family == 'B' else LOCAL01
    return buchberger_check(operator_family(FamilySpec(family, m)), order)
"""


def random_poly(rng, ring, terms, max_exp):
    return ring.from_terms(
        {
            tuple(rng.randint(0, max_exp) for _ in range(ring.nvars)): QQ(rng.randint(-50, 50), rng.randint(1, 9))
            for _ in range(terms)
        }
    )


def kernel_cases(rng):
    ring = PolyRing(["x1", "x2", "x3", "xi1", "xi2", "xi3"])
    p = random_poly(rng, ring, 40, 3)
    q = random_poly(rng, ring, 40, 3)
    prod = (p * q)._t
    alg = weyl_algebra(3)

    def op():
        return alg.element(
            {
                (tuple(rng.randint(0, 3) for _ in range(3)), tuple(rng.randint(0, 3) for _ in range(3))): rng.randint(
                    1, 9
                )
                for _ in range(12)
            }
        )

    P, Q = op(), op()
    return {
        "poly_mul 40x40 terms": lambda impl: impl.poly_mul(p._t, q._t),
        "poly_divexact": lambda impl: impl.poly_divexact(prod, q._t, ring.guard),
        "weyl_mul 12x12 terms": lambda impl: impl.weyl_mul(P._t, Q._t, 3, BITS),
    }


def time_kernels(repeat, seed):
    cases = kernel_cases(random.Random(seed))
    backends = kernels.available_backends()
    rows = []
    for name, fn in cases.items():
        timings = {}
        for label, impl in backends.items():
            timer = timeit.Timer(lambda: fn(impl))
            number, _ = timer.autorange()
            timings[label] = min(timer.repeat(repeat, number)) / number
        rows.append((name, timings))
    return rows


def time_workload(stmt, pure, repeat):
    code = (
        "import timeit, sys\n"
        f"setup = {SETUP!r}\n"
        f"t = min(timeit.repeat({stmt!r}, setup=setup, repeat={repeat}, number=1))\n"
        "from lauricella_dmod import kernels\n"
        "print(kernels.BACKEND, t)\n"
    )
    env = dict(os.environ)
    env.pop("LAURICELLA_DMOD_PURE", None)
    if pure:
        env["LAURICELLA_DMOD_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, t = out.stdout.split()
    return backend, float(t)


def time_end_to_end(repeat):
    has_cython = "cython" in kernels.available_backends()
    rows = []
    for name, stmt in WORKLOADS.items():
        timings = {}
        for pure in (False, True) if has_cython else (True,):
            backend, t = time_workload(stmt, pure, repeat)
            timings[backend] = t
        rows.append((name, timings))
    return rows


def fmt_time(t):
    if t is None:
        return "n/a"
    if t < 1e-3:
        return f"{t * 1e6:.1f} us"
    if t < 1:
        return f"{t * 1e3:.2f} ms"
    return f"{t:.2f} s"


def print_table(title, rows):
    print(title)
    print(f"  {'case':<26}{'cython':>12}{'python':>12}{'speedup':>10}")
    for name, timings in rows:
        c, p = timings.get("cython"), timings.get("python")
        speed = f"{p / c:.2f}x" if c and p else "n/a"
        print(f"  {name:<26}{fmt_time(c):>12}{fmt_time(p):>12}{speed:>10}")
    print()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args(argv)
    print(f"active backend: {kernels.BACKEND}\n")
    print_table("kernels (best per call)", time_kernels(args.repeat, args.seed))
    if not args.skip_end_to_end:
        print_table("end to end (best of runs)", time_end_to_end(max(1, args.repeat // 2)))


if __name__ == "__main__":
    main()
