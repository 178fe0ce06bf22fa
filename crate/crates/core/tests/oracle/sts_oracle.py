#!/usr/bin/env python3
"""Independent reference for the seven statistical tests.

Written against numpy/scipy only; shares nothing with the Rust code except
the SplitMix64 input generator, which both sides use to rebuild the exact
same bit sequences from a seed.

Regenerate the fixture with:

    python3 crates/core/tests/oracle/sts_oracle.py > crates/core/tests/data/sts_oracle.json
"""

import json
import math
import sys

import numpy as np
from scipy.special import erfc, gammaincc
from scipy.stats import norm

MASK64 = (1 << 64) - 1


def splitmix_bits(seed, n):
    state = seed & MASK64
    out = np.empty(n, dtype=np.uint8)
    filled = 0
    while filled < n:
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        z ^= z >> 31
        take = min(64, n - filled)
        for j in range(take):
            out[filled + j] = (z >> (63 - j)) & 1
        filled += take
    return out


def frequency(bits):
    n = len(bits)
    s = int(np.sum(2 * bits.astype(np.int64) - 1))
    return [float(erfc(abs(s) / math.sqrt(2 * n)))]


def trunc_div(a, b):
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b > 0) else -q


def cusum_one(bits):
    n = len(bits)
    walk = np.cumsum(2 * bits.astype(np.int64) - 1)
    z = int(np.max(np.abs(walk)))
    sq = math.sqrt(n)
    s1 = 0.0
    for k in range(trunc_div(trunc_div(-n, z) + 1, 4), trunc_div(trunc_div(n, z) - 1, 4) + 1):
        s1 += norm.cdf((4 * k + 1) * z / sq) - norm.cdf((4 * k - 1) * z / sq)
    s2 = 0.0
    for k in range(trunc_div(trunc_div(-n, z) - 3, 4), trunc_div(trunc_div(n, z) - 1, 4) + 1):
        s2 += norm.cdf((4 * k + 3) * z / sq) - norm.cdf((4 * k + 1) * z / sq)
    return min(1.0, max(0.0, 1.0 - s1 + s2))


def cusum(bits):
    return [cusum_one(bits), cusum_one(bits[::-1].copy())]


def cyclic_counts(bits, m):
    n = len(bits)
    ext = np.concatenate([bits, bits[: m - 1]]).astype(np.int64)
    idx = np.zeros(n, dtype=np.int64)
    for j in range(m):
        idx = (idx << 1) | ext[j : j + n]
    return np.bincount(idx, minlength=1 << m)


def phi(bits, m):
    n = len(bits)
    c = cyclic_counts(bits, m)
    c = c[c > 0] / n
    return float(np.sum(c * np.log(c)))


def approx_entropy(bits, m):
    n = len(bits)
    apen = phi(bits, m) - phi(bits, m + 1)
    chi2 = 2.0 * n * (math.log(2) - apen)
    return [float(gammaincc(2 ** (m - 1), chi2 / 2.0))]


def psi2(bits, m):
    if m <= 0:
        return 0.0
    n = len(bits)
    c = cyclic_counts(bits, m).astype(np.float64)
    return float((2 ** m) / n * np.sum(c * c) - n)


def serial(bits, m):
    p0, p1, p2 = psi2(bits, m), psi2(bits, m - 1), psi2(bits, m - 2)
    d1 = p0 - p1
    d2 = p0 - 2 * p1 + p2
    return [
        float(gammaincc(2 ** (m - 2), d1 / 2.0)),
        float(gammaincc(2 ** (m - 3), d2 / 2.0)),
    ]


def linear_complexity_of(block):
    # Massey's algorithm on python ints; bit i of `c` is the coefficient of x^i
    c, b = 1, 1
    length, shift = 0, 1
    rev = 0
    for nidx, s in enumerate(block):
        rev = (rev << 1) | int(s)  # bit k of rev is s_{nidx-k}
        d = bin(c & rev).count("1") & 1
        if d:
            t = c
            c ^= b << shift
            if 2 * length <= nidx:
                length = nidx + 1 - length
                b = t
                shift = 1
            else:
                shift += 1
        else:
            shift += 1
    return length


LC_PI = [1 / 96, 1 / 32, 1 / 8, 1 / 2, 1 / 4, 1 / 16, 1 / 48]


def linear_complexity(bits, block):
    nblocks = len(bits) // block
    mu = block / 2.0 + (9.0 + (-1) ** (block + 1)) / 36.0 - (block / 3.0 + 2.0 / 9.0) / 2.0 ** block
    sign = 1 if block % 2 == 0 else -1
    nu = [0] * 7
    for i in range(nblocks):
        l = linear_complexity_of(bits[i * block : (i + 1) * block])
        t = sign * (l - mu) + 2.0 / 9.0
        if t <= -2.5:
            nu[0] += 1
        elif t <= -1.5:
            nu[1] += 1
        elif t <= -0.5:
            nu[2] += 1
        elif t <= 0.5:
            nu[3] += 1
        elif t <= 1.5:
            nu[4] += 1
        elif t <= 2.5:
            nu[5] += 1
        else:
            nu[6] += 1
    chi2 = sum((nu[i] - nblocks * LC_PI[i]) ** 2 / (nblocks * LC_PI[i]) for i in range(7))
    return [float(gammaincc(3, chi2 / 2.0))]


def longest_run(bits):
    n = len(bits)
    if n < 6272:
        block, lo, pi = 8, 1, [0.21484375, 0.3671875, 0.23046875, 0.1875]
    elif n < 750000:
        block, lo = 128, 4
        pi = [0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847]
    else:
        block, lo = 10000, 10
        pi = [0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727]
    k = len(pi) - 1
    nblocks = n // block
    nu = [0] * (k + 1)
    for i in range(nblocks):
        best = run = 0
        for b in bits[i * block : (i + 1) * block]:
            run = run + 1 if b else 0
            best = max(best, run)
        nu[min(max(best - lo, 0), k)] += 1
    chi2 = sum((nu[i] - nblocks * pi[i]) ** 2 / (nblocks * pi[i]) for i in range(k + 1))
    return [float(gammaincc(k / 2.0, chi2 / 2.0))]


def runs(bits):
    n = len(bits)
    pi = float(np.mean(bits))
    if abs(pi - 0.5) >= 2.0 / math.sqrt(n):
        return None
    v = 1 + int(np.sum(bits[1:] != bits[:-1]))
    num = abs(v - 2.0 * n * pi * (1 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1 - pi)
    return [float(erfc(num / den))]


def main():
    cases = []
    for i in range(100):
        seed = 1000 + i
        n = 140_000 + 397 * i
        m_serial = 2 + i % 13
        m_apen = 1 + i % 12
        lc_block = 500 + (i % 5) * 40
        bits = splitmix_bits(seed, n)
        cases.append(
            {
                "seed": seed,
                "n": n,
                "m_serial": m_serial,
                "m_apen": m_apen,
                "lc_block": lc_block,
                "frequency": frequency(bits),
                "cusum": cusum(bits),
                "approx_entropy": approx_entropy(bits, m_apen),
                "linear_complexity": linear_complexity(bits, lc_block),
                "serial": serial(bits, m_serial),
                "longest_run": longest_run(bits),
                "runs": runs(bits),
            }
        )
    # the main cases all sit in the 128-bit block regime; cover the other two
    longest = []
    for i, n in enumerate([128, 500, 1000, 4000, 6271, 750_000, 800_000]):
        seed = 5000 + i
        longest.append({"seed": seed, "n": n, "longest_run": longest_run(splitmix_bits(seed, n))})
    json.dump({"cases": cases, "longest_run_regimes": longest}, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
