"""Time the two scalar backends on representative workloads.

Run once per backend; the backend is fixed at import time, so the script
re-executes itself with PHINLAB_BACKEND overridden instead of reloading
modules in place.

    python3 scripts/benchmark_backends.py
"""

import os
import random
import subprocess
import sys
import time


def bench_one():
    from phinlab.hecke import HeckeParams, theta_closed, theta_enumerated
    from phinlab.linalg import Matrix, det, jordan_partition
    from phinlab.sampling import random_nilpotent, random_psi, random_wa_module
    from phinlab.modules import is_weakly_admissible
    from phinlab.scalars import BACKEND

    rng = random.Random(0)
    results = [("backend", BACKEND)]

    t0 = time.perf_counter()
    for _ in range(40):
        n = rng.randint(2, 5)
        h = HeckeParams(n, rng.choice([2, 3, 5]), rng.randint(1, n))
        psi = random_psi(rng, n)
        assert theta_closed(psi, h) == theta_enumerated(psi, h)
    results.append(("theta both routes x40", time.perf_counter() - t0))

    t0 = time.perf_counter()
    for _ in range(30):
        d = random_wa_module(rng, n=3)
        assert is_weakly_admissible(d).admissible
    results.append(("weak admissibility x30", time.perf_counter() - t0))

    t0 = time.perf_counter()
    for _ in range(60):
        nil, shape = random_nilpotent(rng, 6)
        assert jordan_partition(nil) == shape
    results.append(("jordan partition 6x6 x60", time.perf_counter() - t0))

    t0 = time.perf_counter()
    m = Matrix([[rng.randint(-9, 9) for _ in range(7)] for _ in range(7)])
    for _ in range(25):
        det(m)
    results.append(("7x7 determinant x25", time.perf_counter() - t0))

    return results


def main():
    if os.environ.get("PHINLAB_BENCH_CHILD"):
        for label, value in bench_one():
            if isinstance(value, float):
                print(f"  {label:28s} {value:7.3f}s")
            else:
                print(f"  {label:28s} {value}")
        return

    for backend in ("gmpy2", "fraction"):
        env = dict(os.environ, PHINLAB_BACKEND=backend, PHINLAB_BENCH_CHILD="1")
        print(f"--- {backend} ---", flush=True)
        code = subprocess.call([sys.executable, __file__], env=env)
        if code:
            print(f"  (backend {backend} unavailable, exit {code})")


if __name__ == "__main__":
    main()
