#!/usr/bin/env python3
"""Brute-force enumeration used to freeze expected values in the C++ tests.

Everything here is computed from definitions with plain trial division and
Python's exact Fraction arithmetic; nothing is shared with the C++ code.
"""
from fractions import Fraction
from math import isqrt


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def distinct_primes(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def D(n):
    return Fraction(len(divisors(n)), 2 ** len(distinct_primes(n)))


def s(n):
    m = 0
    while m * m < n:
        m += 1
    return m * m - n


def S(x):
    return sum((D(n + s(n)) for n in range(1, x + 1)), Fraction(0))


def T(N):
    return sum((D(m * m) for m in range(1, N + 1)), Fraction(0))


def W(N):
    return sum((m * D(m * m) for m in range(1, N + 1)), Fraction(0))


def literal(x):
    N = isqrt(x)
    body = sum(((2 * k + 1) * D((k + 1) ** 2) for k in range(1, N)), Fraction(0))
    return body + (x - N * N + 1) * D((N + 1) ** 2)


if __name__ == "__main__":
    print("s(1..8) =", [s(n) for n in range(1, 9)])
    for x in (1, 3, 4, 8):
        print(f"S({x}) =", S(x))
    for N in (1, 3, 6):
        print(f"T({N}) =", T(N))
    print("W(3) =", W(3))
    print("D(m^2), m=1..10:", [str(D(m * m)) for m in range(1, 11)])
    for x in (1, 2, 3, 4, 8, 10):
        print(f"literal({x}) =", literal(x), " direct =", S(x))
    print("S(100) =", S(100), " S(1000) =", S(1000))
    print("T(100) =", T(100), " W(100) =", W(100))
