#!/usr/bin/env python3
"""Independent oracle for the lacunarity density baselines.

Computes b_9(n) mod 8 from Euler's pentagonal recurrence for p(n) followed by
a sparse convolution with f_9, then counts vanishing coefficients of
b_9(2n+1) (mod 2, 4, 8) and b_9(4n) (mod 2) over 1 <= n <= X.

Usage: density_oracle.py [--xmax 1000000] > tests/data/density_baselines.csv
"""
import argparse
import math
import sys

import numba
import numpy as np


@numba.njit(cache=True)
def partitions_mod(limit, mask):
    p = np.zeros(limit + 1, dtype=np.int64)
    p[0] = 1
    for n in range(1, limit + 1):
        acc = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if (k & 1) else -1
            acc += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                acc += sign * p[n - g2]
            k += 1
        p[n] = acc & mask
    return p


@numba.njit(cache=True)
def regular_mod(ell, limit, mask):
    p = partitions_mod(limit, mask)
    b = np.zeros(limit + 1, dtype=np.int64)
    # f_ell = sum_k (-1)^k q^{ell k(3k-1)/2}, k in Z
    for n in range(limit + 1):
        b[n] = p[n]
    k = 1
    while ell * (k * (3 * k - 1) // 2) <= limit:
        sign = -1 if (k & 1) else 1
        for e in (ell * (k * (3 * k - 1) // 2), ell * (k * (3 * k + 1) // 2)):
            for n in range(e, limit + 1):
                b[n] += sign * p[n - e]
        k += 1
    for n in range(limit + 1):
        b[n] &= mask
    return b


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--xmax", type=int, default=1_000_000)
    args = ap.parse_args()
    checkpoints = []
    x = 1000
    while x <= args.xmax:
        checkpoints.append(x)
        x *= 10
    xmax = checkpoints[-1]
    b9 = regular_mod(9, 4 * xmax, 7)
    streams = {
        "b9odd": b9[1:2 * xmax + 2:2],
        "b9mult4": b9[0:4 * xmax + 1:4],
    }
    cases = [("b9odd", 2), ("b9odd", 4), ("b9odd", 8), ("b9mult4", 2)]
    out = sys.stdout
    out.write("series,X,M,r,count,delta_num,delta_den\n")
    for name, mod in cases:
        a = streams[name]
        for X in checkpoints:
            window = a[1:X + 1] % mod
            count = int(np.count_nonzero(window == 0))
            g = math.gcd(count, X)
            out.write(f"{name},{X},{mod},0,{count},{count // g},{X // g}\n")


if __name__ == "__main__":
    main()
