"""Resultants of Frobenius polynomials against power polynomials.

The fast path evaluates Res(X^2 - aX + n, X^m - beta) through the Lucas
V-sequence of (a, n); a fraction-free Sylvester determinant provides the
independent slow oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import kronecker, sqrt_mod


@dataclass(frozen=True)
class FrobeniusPoly:
    """X^2 - a*X + n_q, the characteristic polynomial of Frobenius."""

    a: int
    n_q: int

    def discriminant(self) -> int:
        return self.a * self.a - 4 * self.n_q


@dataclass(frozen=True)
class TraceRootPair:
    """Reductions mod p of the two roots of a Frobenius polynomial."""

    p: int
    gamma1: int
    gamma2: int

    def __post_init__(self) -> None:
        if self.gamma1 > self.gamma2:
            raise ValueError("roots must be ordered gamma1 <= gamma2")


def lucas_v(a: int, n: int, m: int) -> int:
    """V_m with V_0 = 2, V_1 = a, V_{k+1} = a*V_k - n*V_{k-1}.

    Equals theta1^m + theta2^m for the roots of X^2 - aX + n.  Computed by
    binary doubling, so m in the thousands stays cheap:

        V_{2k}   = V_k^2 - 2 n^k
        V_{2k+1} = V_k V_{k+1} - a n^k
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return 2
    vk, vk1 = 2, a  # V_0, V_1
    nk = 1  # n^k alongside V_k
    for bit in bin(m)[2:]:
        if bit == "1":
            vk, vk1 = vk * vk1 - a * nk, vk1 * vk1 - 2 * nk * n
            nk = nk * nk * n
        else:
            vk, vk1 = vk * vk - 2 * nk, vk * vk1 - a * nk
            nk = nk * nk
    return vk


def res_power(f: FrobeniusPoly, m: int, beta):
    """(theta1^m - beta) * (theta2^m - beta) for the roots theta_i of f.

    This is Res(f, X^m - beta) exactly (f is monic), evaluated without
    touching the roots:  n^m - beta * V_m(a, n) + beta^2.  `beta` may be a
    rational integer or any ring element mixing with integers (field
    elements in particular).
    """
    if m < 1:
        raise ValueError("m must be positive")
    v = lucas_v(f.a, f.n_q, m)
    return beta * beta - beta * v + f.n_q**m


def sylvester_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of two integer polynomials via the Sylvester determinant.

    Coefficient lists are ascending (f[i] is the X^i coefficient).  The
    determinant is computed with fraction-free Bareiss elimination, so the
    result is exact for arbitrarily large entries.
    """
    f = _strip(f)
    g = _strip(g)
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    df, dg = len(f) - 1, len(g) - 1
    if df == 0:
        return f[0] ** dg
    if dg == 0:
        return g[0] ** df
    size = df + dg
    rows = []
    frev, grev = f[::-1], g[::-1]
    for i in range(dg):
        rows.append([0] * i + list(frev) + [0] * (size - df - 1 - i))
    for i in range(df):
        rows.append([0] * i + list(grev) + [0] * (size - dg - 1 - i))
    return _bareiss_det(rows)


def _strip(coeffs: Sequence[int]) -> list[int]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def roots_mod_p(f: FrobeniusPoly, p: int) -> TraceRootPair | None:
    """Both residues of the roots of f mod p, or None when they do not exist.

    Exists iff a^2 - 4n is a square mod p (a double root when it is zero).
    """
    if f.n_q % p == 0:
        raise ValueError("p must not divide n_q")
    if p == 2:
        roots = [x for x in (0, 1) if (x * x - f.a * x + f.n_q) % 2 == 0]
        if not roots:
            return None
        g1 = roots[0]
        g2 = roots[-1]
        return TraceRootPair(p, g1, g2)
    disc = f.discriminant() % p
    s = sqrt_mod(disc, p)
    if s is None:
        return None
    half = pow(2, -1, p)
    g1 = (f.a + s) * half % p
    g2 = (f.a - s) * half % p
    if g1 > g2:
        g1, g2 = g2, g1
    return TraceRootPair(p, g1, g2)
