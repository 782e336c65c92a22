"""Per-prime elimination criteria.

Everything here is a pure function of its arguments: trace sets, the R_q and
M_q divisibility integers, the fine Frobenius-root congruence test, the
admissibility predicate for cusp-reduction arguments, unit conditions and
torsion-style bounds, and the signature algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .arith import factor_with_budget, kronecker, sqrt_mod, isqrt
from .polyres import FrobeniusPoly, lucas_v, res_power, roots_mod_p
from .quadfield import AuxPrimeData, OKElement, QuadField, Splitting, splitting_type


@dataclass(frozen=True)
class IsogenySignature:
    """Ramification exponents (a, b), each 0 or 12, of the twelfth power of
    the isogeny character at the two primes above p."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a not in (0, 12) or self.b not in (0, 12):
            raise ValueError("signature entries must be 0 or 12")


SIG_00 = IsogenySignature(0, 0)
SIG_12_0 = IsogenySignature(12, 0)
SIG_0_12 = IsogenySignature(0, 12)
SIG_12_12 = IsogenySignature(12, 12)


def sig_is_constant(sig: IsogenySignature) -> bool:
    return sig.a == sig.b


def sig_tau(sig: IsogenySignature) -> IsogenySignature:
    return IsogenySignature(sig.b, sig.a)


def sig_atkin_lehner(sig: IsogenySignature) -> IsogenySignature:
    return IsogenySignature(12 - sig.a, 12 - sig.b)


class Status(Enum):
    ELIMINATED = "eliminated"
    SURVIVES = "survives"
    UNRESOLVED = "unresolved"


class Reason(Enum):
    RQ_GCD = "rq_gcd"
    PCRIT = "pcrit"
    MQ_CHECK = "mq_check"
    EPS_CONDITION = "eps_condition"
    SPLIT_CHECK = "split_check"
    RED2 = "red2"
    OESTERLE_BOUND = "oesterle_bound"
    EXCEPTIONAL_POINTS_TABLE = "exceptional_points_table"
    CURATED_TABLE = "curated_table"
    KNOWN_WITNESS = "known_witness"


@dataclass(frozen=True)
class EliminationOutcome:
    p: int
    status: Status
    reason: Reason | None
    evidence: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.status is Status.ELIMINATED and not self.evidence:
            raise ValueError("an elimination must carry evidence")
        if self.status is Status.SURVIVES and not self.evidence:
            raise ValueError("a surviving prime must carry a witness citation")


def trace_set(n_q: int) -> list[int]:
    """All integers a with a^2 <= 4*n_q (the Weil window), ascending."""
    if n_q < 2:
        raise ValueError("n_q must be at least 2")
    bound = isqrt(4 * n_q)
    return list(range(-bound, bound + 1))


def trace_set_mod_p(n_q: int, p: int) -> list[int]:
    """Traces in the Weil window whose discriminant is a square mod p."""
    if n_q % p == 0:
        raise ValueError("p must not divide n_q")
    if p == 2:
        return trace_set(n_q)
    return [a for a in trace_set(n_q) if kronecker(a * a - 4 * n_q, p) >= 0]


def _beta(data: AuxPrimeData, sig: IsogenySignature) -> OKElement:
    if data.alpha is None:
        raise ValueError("non-constant signatures require a generator alpha")
    return data.alpha**sig.a * data.alpha.conj() ** sig.b


def compute_Rq(data: AuxPrimeData, sig: IsogenySignature) -> int:
    """q * lcm over the trace window of the power-resultant divisibility bound.

    For signature (0, 0) the resultants are plain rational integers; for any
    other signature each resultant lives in O_K and its norm is taken.
    """
    m = 12 * data.r
    acc = 1
    if sig == SIG_00:
        for a in trace_set(data.n_q):
            acc = math.lcm(acc, abs(res_power(FrobeniusPoly(a, data.n_q), m, 1)))
    else:
        beta = _beta(data, sig)
        for a in trace_set(data.n_q):
            res = res_power(FrobeniusPoly(a, data.n_q), m, beta)
            acc = math.lcm(acc, abs(res.norm()))
    return data.q * acc


def compute_Mq(data: AuxPrimeData, sig: IsogenySignature) -> int:
    """q * |Norm((beta - 1) * (beta - n_q^{12r}))|; zero for constant signatures."""
    if sig_is_constant(sig):
        return 0
    m = 12 * data.r
    beta = _beta(data, sig)
    val = (beta - 1) * (beta - data.n_q**m)
    return data.q * abs(val.norm())


class _ResidueField:
    """Residue arithmetic mod a prime of K above p.

    Degree 1 (p split or ramified): O_K -> F_p through the smaller
    nonnegative root of the minimal polynomial of w mod p.  Degree 2
    (p inert): pairs (x, y) representing x + y*w in F_{p^2}.
    """

    def __init__(self, F: QuadField, p: int):
        self.p = p
        self.tr, self.nm = F.omega_minpoly()
        disc_root = sqrt_mod((self.tr * self.tr - 4 * self.nm) % p, p)
        if disc_root is None:
            self.w = None  # inert: quadratic residue extension
        else:
            half = pow(2, -1, p) if p != 2 else None
            if p == 2:
                # tiny field: pick the smaller root by enumeration
                roots = [x for x in (0, 1) if (x * x - self.tr * x + self.nm) % 2 == 0]
                self.w = roots[0]
            else:
                r1 = (self.tr + disc_root) * half % p
                r2 = (self.tr - disc_root) * half % p
                self.w = min(r1, r2)

    def embed(self, x: OKElement):
        if self.w is not None:
            return (x.u + x.v * self.w) % self.p
        return (x.u % self.p, x.v % self.p)

    def embed_int(self, k: int):
        if self.w is not None:
            return k % self.p
        return (k % self.p, 0)


def pcrit_eliminates(p: int, data: AuxPrimeData, sig: IsogenySignature,
                     F: QuadField | None = None) -> bool:
    """True when prime p is ruled out by the Frobenius-root congruences at q.

    For every trace a in the mod-p window both labellings of the root pair
    must fail; an empty window eliminates vacuously.  Constant signatures
    need only rational residues; non-constant ones compare against the
    generator powers inside the residue field of p (which requires `F` when
    p is inert, and `data.alpha` in all cases).
    """
    if p == data.q or data.n_q % p == 0:
        raise ValueError("pcrit requires q != p and p coprime to n_q")
    m = 12 * data.r
    window = trace_set_mod_p(data.n_q, p)
    if not window:
        return True
    if sig_is_constant(sig):
        t1 = 1 % p
        t2 = pow(data.n_q, m, p)
        for a in window:
            pair = roots_mod_p(FrobeniusPoly(a, data.n_q), p)
            assert pair is not None
            g1 = pow(pair.gamma1, m, p)
            g2 = pow(pair.gamma2, m, p)
            if (g1, g2) in ((t1, t2), (t2, t1)):
                return False
        return True
    if data.alpha is None:
        raise ValueError("non-constant pcrit requires a generator alpha")
    if F is None:
        raise ValueError("non-constant pcrit requires the field")
    rf = _ResidueField(F, p)
    b1 = rf.embed(_beta(data, sig))
    b2 = rf.embed(_beta(data, sig_atkin_lehner(sig)))
    for a in window:
        pair = roots_mod_p(FrobeniusPoly(a, data.n_q), p)
        assert pair is not None
        g1 = rf.embed_int(pow(pair.gamma1, m, p))
        g2 = rf.embed_int(pow(pair.gamma2, m, p))
        if (g1 == b1 and g2 == b2) or (g2 == b1 and g1 == b2):
            return False
    return True


def admissible_pair(q: int, p: int, q2_limit: int = 2357) -> bool:
    """Primes (q, p) for which the cusp-reduction formal-immersion argument
    applies (verified data of Banwait-Derickx; Derickx-Kamienny-Stein-Stoll
    for the rational case)."""
    if q == 2:
        return 23 <= p <= q2_limit and p not in (37, 41)
    return q not in (2, p) and p >= 23 and p != 37


def unit_norm_prime_factors(F: QuadField) -> list[int]:
    """Prime factors of Norm(eps^12 - 1) for the fundamental unit eps.

    The norm is factored piecewise over the cyclotomic factorisation of
    x^12 - 1, which keeps every piece near the size of eps^4 instead of
    eps^12.
    """
    eps = F.fundamental_unit
    if eps is None:
        raise ValueError("imaginary fields have no fundamental unit")
    e2 = eps * eps
    e4 = e2 * e2
    pieces = [
        eps - 1,
        eps + 1,
        e2 + eps + 1,
        e2 + 1,
        e2 - eps + 1,
        e4 - e2 + 1,
    ]
    full = (eps**12 - 1).norm()
    assert full != 0
    prod = 1
    primes: set[int] = set()
    for piece in pieces:
        n = piece.norm()
        prod *= n
        fac, leftovers = factor_with_budget(n, rho_budget=80)
        if leftovers:
            raise RuntimeError(
                f"unfactored cofactor(s) {leftovers} in the unit norm condition"
            )
        primes.update(fac)
    assert prod == full
    return sorted(primes)


def eps_split_primes(F: QuadField, floor_p: int = 23) -> list[int]:
    """Split primes >= floor_p dividing Norm(eps^12 - 1).

    Only these primes can carry a non-constant signature over a real field.
    """
    if F.d < 0:
        raise ValueError("the unit condition only exists for real fields")
    return [
        p
        for p in unit_norm_prime_factors(F)
        if p >= floor_p and splitting_type(F, p) is Splitting.SPLIT
    ]


def oesterle_bound(n: int) -> int:
    """Exclusive bound (1 + 3^{6n})^2 on unramified constant-signature primes
    over fields of class-group exponent n (Oesterle-type torsion bound)."""
    if n < 1:
        raise ValueError("n must be positive")
    return (1 + 3 ** (6 * n)) ** 2


def n1_refinement(p: int) -> bool:
    """Survival filter in the class-number-exponent-1 case: p = 1 mod 12 or p <= 19."""
    return p % 12 == 1 or p <= 19


def red2_holds(p: int, r: int) -> bool:
    """Whether p | 2^{12r} - 1 (the split-2 doubly-multiplicative escape)."""
    return pow(2, 12 * r, p) == 1 % p
