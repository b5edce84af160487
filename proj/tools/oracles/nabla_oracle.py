#!/usr/bin/env python3
"""Term-by-term evaluation of nabla with exact rationals.

Checks the two branch dichotomy values, the relative invariance of nabla
under the generator group (computed from the bilinear form, not from the
library), and, when given the nilgrade binary, the value the CLI reports.
"""
import json
import random
import subprocess
import sys
from fractions import Fraction as F

# (coefficient, exponents of a1..a6)
TERMS = [
    (1, (0, 0, 3, 1, 0, 0)),
    (1, (0, 0, 2, 1, 1, 0)),
    (-1, (1, 0, 2, 1, 1, 0)),
    (1, (0, 1, 1, 2, 1, 0)),
    (-1, (1, 0, 1, 1, 2, 0)),
    (-1, (1, 0, 2, 0, 0, 1)),
    (-3, (0, 1, 1, 1, 0, 1)),
    (1, (1, 1, 1, 1, 0, 1)),
    (-1, (0, 2, 0, 2, 0, 1)),
    (1, (0, 0, 1, 0, 1, 1)),
    (1, (2, 0, 1, 0, 1, 1)),
    (1, (0, 1, 0, 1, 1, 1)),
    (1, (1, 1, 0, 1, 1, 1)),
    (-1, (1, 0, 0, 0, 2, 1)),
    (-1, (0, 1, 0, 0, 0, 2)),
    (2, (1, 1, 0, 0, 0, 2)),
    (-1, (2, 1, 0, 0, 0, 2)),
]


def nabla(a):
    total = F(0)
    for coef, exps in TERMS:
        term = F(coef)
        for x, e in zip(a, exps):
            term *= F(x) ** e
        total += term
    return total


def form(a, x, y):
    m = [[0, 1, 0], [a[0], a[1], a[2]], [a[3], a[4], a[5]]]
    return sum(x[i] * m[i][j] * y[j] for i in range(3) for j in range(3))


def transform(a, A1, A2, A3, B2, B3, c):
    e = a[2] * A2 + a[5] * A3
    d1 = A1 + a[1] * A2 + a[4] * A3
    e1 = (A1, A2, A3)
    f = (0, B2, B3)
    g = (0, -c * e, c * d1)
    d2 = form(a, e1, f)
    assert form(a, e1, g) == 0
    return [form(a, u, v) / d2 for u, v in ((f, e1), (f, f), (f, g), (g, e1), (g, f), (g, g))], d1, d2


def rand_q(rng):
    return F(rng.randint(-4, 4), rng.randint(1, 3))


def main():
    failures = []
    rng = random.Random(2024)

    for k in range(10):
        d = F(k + 1, 1 + k % 3) * (-1 if k % 2 else 1)
        v = nabla([1, 1, 0, 0, 1, d])
        if v != -d:
            failures.append(f"nabla(1,1,0,0,1,{d}) = {v}")
        g = F(k + 2, k + 3) if k % 2 else F(k + 3)
        v = nabla([0, 1, 0, g, 1, g * (1 - g)])
        if v != 0:
            failures.append(f"nabla(0,1,0,{g},1,g(1-g)) = {v}")

    checked = 0
    while checked < 200:
        a = [rand_q(rng) for _ in range(6)]
        A1, A2, A3, B2, B3, c = (rand_q(rng) for _ in range(6))
        if A1 == 0 or c == 0:
            continue
        d2 = form(a, (A1, A2, A3), (0, B2, B3))
        if d2 == 0:
            continue
        b, d1, d2 = transform(a, A1, A2, A3, B2, B3, c)
        c3 = c * d1
        if nabla(b) * d2 != nabla(a) * A1 ** 2 * c ** 4:
            failures.append(f"law fails at a={a}")
        if d1 != 0 and nabla(b) * d1 ** 4 * d2 != nabla(a) * A1 ** 2 * c3 ** 4:
            failures.append(f"chart law fails at a={a}")
        checked += 1

    if len(sys.argv) > 1:
        for _ in range(10):
            a = [rand_q(rng) for _ in range(6)]
            arg = ",".join(str(x) for x in a)
            out = subprocess.run([sys.argv[1], "classify", "--family", "a6", "--params", arg],
                                 capture_output=True, text=True)
            if out.returncode == 1 and '"DegenerateParams"' in out.stdout:
                continue
            if out.returncode != 0:
                failures.append(f"classify {arg} exited {out.returncode}")
                continue
            reported = F(json.loads(out.stdout)["invariants"]["nabla"])
            if reported != nabla(a):
                failures.append(f"CLI nabla at {arg}: {reported} != {nabla(a)}")

    for f in failures[:10]:
        print("FAIL", f)
    print(f"nabla oracle: {len(failures)} failures, {checked} invariance checks")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
