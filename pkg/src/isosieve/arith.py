"""Exact integer utilities: primes, factorisation, symbols, modular square roots.

Everything is arbitrary-precision integer arithmetic; no floating point is
used anywhere in the pipeline.
"""

from __future__ import annotations

import math
from itertools import count
from typing import Iterator

isqrt = math.isqrt

# Deterministic Miller-Rabin witness set, valid for n < 3.317e24.  Above that
# the test is still used and is probabilistic with negligible error.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_small_prime_cache: list[int] = []


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, n + 1) if sieve[i]]


def _small_primes() -> list[int]:
    global _small_prime_cache
    if not _small_prime_cache:
        _small_prime_cache = primes_up_to(10_000)
    return _small_prime_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    k = n + 1
    while not is_prime(k):
        k += 1
    return k


def iter_primes(start: int = 2) -> Iterator[int]:
    """Unbounded prime iterator, ascending from `start`."""
    p = start - 1
    while True:
        p = next_prime(p)
        yield p


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    return all(e == 1 for e in factor(n).values())


def valuation(n: int, p: int) -> int:
    """Largest e with p^e | n.  Requires n != 0."""
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for any integers, n != 0."""
    if n == 0:
        raise ValueError("Kronecker symbol undefined for n = 0")
    if n < 0:
        return (1 if a >= 0 else -1) * kronecker(a, -n)
    # strip factors of 2 from n
    t = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            t = -t
    # Jacobi symbol on odd n
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int | None:
    """Smaller nonnegative square root of a mod prime p, or None.

    Tonelli-Shanks; the smaller of the two roots is returned so that callers
    get a deterministic choice.
    """
    a %= p
    if p == 2:
        return a
    if a == 0:
        return 0
    if kronecker(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # write p-1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while kronecker(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, t2i = 0, t
        while t2i != 1:
            t2i = t2i * t2i % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(x, p - x)


def _pollard_brent(n: int, c: int) -> int:
    """One Brent-cycle attempt at a nontrivial factor of composite odd n."""
    f = lambda x: (x * x + c) % n
    y, r, q = 2, 1, 1
    g = 1
    while g == 1:
        x = y
        for _ in range(r):
            y = f(y)
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(128, r - k)):
                y = f(y)
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += 128
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = f(ys)
            g = math.gcd(abs(x - ys), n)
    return g


def factor(n: int, *, trial_limit: int = 10_000) -> dict[int, int]:
    """Full factorisation of |n| as {prime: exponent}.

    Trial division up to `trial_limit`, then deterministic Brent-Pollard rho
    (the polynomial constant runs through c = 1, 2, 3, ...).
    """
    fac, leftovers = factor_with_budget(abs(n), trial_limit=trial_limit, rho_budget=None)
    if leftovers:
        raise ArithmeticError(f"failed to factor cofactor(s) {leftovers}")
    return fac


def factor_with_budget(
    n: int, *, trial_limit: int = 10_000, rho_budget: int | None = 64
) -> tuple[dict[int, int], list[int]]:
    """Factor |n| with a bounded effort.

    Returns (prime factorisation found, list of unfactored composite
    cofactors).  With rho_budget=None the rho stage retries indefinitely.
    """
    n = abs(n)
    fac: dict[int, int] = {}
    if n <= 1:
        return fac, []
    for p in _small_primes():
        if p > trial_limit or p * p > n:
            break
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
    if n == 1:
        return fac, []
    if is_prime(n) or n < trial_limit * trial_limit:
        # below trial_limit^2 any remaining n is prime
        fac[n] = fac.get(n, 0) + 1
        return fac, []
    stack, leftovers = [n], []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            fac[m] = fac.get(m, 0) + 1
            continue
        if is_square(m):
            r = isqrt(m)
            stack.extend([r, r])
            continue
        g = 1
        attempts = count(1) if rho_budget is None else range(1, rho_budget + 1)
        for c in attempts:
            g = _pollard_brent(m, c)
            if 1 < g < m:
                break
        if 1 < g < m:
            stack.extend([g, m // g])
        else:
            leftovers.append(m)
    return fac, sorted(leftovers)


def prime_divisors(n: int) -> list[int]:
    return sorted(factor(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of |n|, ascending."""
    divs = [1]
    for p, e in factor(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def format_factored(n: int) -> str:
    """Ascending `p^e * ...` rendering of |n|; exponent 1 is left bare."""
    if n == 0:
        return "0"
    n = abs(n)
    if n == 1:
        return "1"
    parts = []
    for p in sorted(factor(n)):
        e = valuation(n, p)
        parts.append(f"{p}^{e}" if e > 1 else f"{p}")
    return " * ".join(parts)
