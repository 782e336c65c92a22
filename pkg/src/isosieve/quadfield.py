"""Exact arithmetic in quadratic fields Q(sqrt(d)).

Elements are stored over the canonical integral basis {1, w}, where w is
sqrt(d), or (1+sqrt(d))/2 when d = 1 mod 4.  Field invariants (class group,
fundamental unit) are computed once at construction and the field object is
immutable afterwards, so it can be shared freely between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .arith import factor, is_prime, is_squarefree, isqrt
from .classgroup import Form, FormClassGroup, reduce_form

_CF_PERIOD_CAP = 1_000_000


class FieldError(ValueError):
    """Invalid field construction or misuse of field-specific operations."""


class InternalSearchError(RuntimeError):
    """A search that must succeed for valid inputs failed; indicates a bug."""


class Splitting(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def _is_half_basis(d: int) -> bool:
    return d % 4 == 1


@dataclass(frozen=True)
class OKElement:
    """u + v*w in the ring of integers of Q(sqrt(d))."""

    u: int
    v: int
    d: int

    @property
    def half_basis(self) -> bool:
        return _is_half_basis(self.d)

    def _check(self, other: "OKElement") -> None:
        if self.d != other.d:
            raise FieldError(f"mixed fields: d={self.d} vs d={other.d}")

    def _coerce(self, other) -> "OKElement | None":
        if isinstance(other, int):
            return OKElement(other, 0, self.d)
        if isinstance(other, OKElement):
            self._check(other)
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return OKElement(self.u + o.u, self.v + o.v, self.d)

    __radd__ = __add__

    def __neg__(self):
        return OKElement(-self.u, -self.v, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        u1, v1, u2, v2 = self.u, self.v, o.u, o.v
        if self.half_basis:
            # w^2 = w + (d-1)/4
            c = (self.d - 1) // 4
            return OKElement(
                u1 * u2 + v1 * v2 * c, u1 * v2 + v1 * u2 + v1 * v2, self.d
            )
        return OKElement(u1 * u2 + v1 * v2 * self.d, u1 * v2 + v1 * u2, self.d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in O_K")
        result = OKElement(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "OKElement":
        if self.half_basis:
            return OKElement(self.u + self.v, -self.v, self.d)
        return OKElement(self.u, -self.v, self.d)

    def trace(self) -> int:
        return 2 * self.u + (self.v if self.half_basis else 0)

    def norm(self) -> int:
        if self.half_basis:
            return self.u * self.u + self.u * self.v - self.v * self.v * (self.d - 1) // 4
        return self.u * self.u - self.d * self.v * self.v

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def as_sqrt_pair(self) -> tuple[int, int, int]:
        """(A, B, den) with the element equal to (A + B*sqrt(d))/den."""
        if self.half_basis:
            return (2 * self.u + self.v, self.v, 2)
        return (self.u, self.v, 1)

    def __str__(self) -> str:
        a, b, den = self.as_sqrt_pair()
        if den == 2 and a % 2 == 0 and b % 2 == 0:
            a, b, den = a // 2, b // 2, 1
        core = f"{a} + {b}*sqrt({self.d})" if b >= 0 else f"{a} - {-b}*sqrt({self.d})"
        return core if den == 1 else f"({core})/2"


def _sign_sqrt_combo(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for d > 0, exact."""
    if a >= 0 and b >= 0:
        return 1 if (a or b) else 0
    if a <= 0 and b <= 0:
        return -1 if (a or b) else 0
    if a > 0:
        return 1 if a * a > d * b * b else -1
    return 1 if d * b * b > a * a else -1


def _exceeds_one(x: OKElement) -> bool:
    a, b, den = x.as_sqrt_pair()
    return _sign_sqrt_combo(a - den, b, x.d) > 0


@dataclass(frozen=True)
class QuadField:
    """A quadratic field with its class group and unit data precomputed."""

    d: int
    disc: int
    omega_is_half: bool
    class_order: int
    class_exponent: int
    class_structure: tuple[int, ...]
    fundamental_unit: OKElement | None
    narrow_group: FormClassGroup = field(repr=False, compare=False)
    principal_kernel: frozenset[int] = field(repr=False, compare=False)

    def element(self, u: int, v: int = 0) -> OKElement:
        return OKElement(u, v, self.d)

    @property
    def omega(self) -> OKElement:
        return OKElement(0, 1, self.d)

    def omega_minpoly(self) -> tuple[int, int]:
        """(trace, norm) of w: its minimal polynomial is x^2 - t*x + n."""
        if self.omega_is_half:
            return (1, (1 - self.d) // 4)
        return (0, -self.d)


@dataclass(frozen=True)
class AuxPrimeData:
    """Per auxiliary prime data: splitting, residue norm, class order, generator.

    `alpha` generates the r-th power of the fixed prime above q.  It may be
    None for synthetic family-mode data, which only ever feeds the
    constant-signature formulas (those use no generator).
    """

    q: int
    splitting: Splitting | None
    n_q: int
    r: int
    alpha: OKElement | None


def make_field(d: int) -> QuadField:
    """Construct Q(sqrt(d)) for squarefree d not in {0, 1}."""
    if d in (0, 1):
        raise FieldError(f"d = {d} does not define a quadratic field")
    if not is_squarefree(d):
        raise FieldError(f"d = {d} is not squarefree")
    disc = d if d % 4 == 1 else 4 * d
    unit = _cf_fundamental_unit(d) if d > 0 else None
    narrow = FormClassGroup(disc)
    if d > 0 and unit is not None and unit.norm() == 1:
        # units are all totally positive: the class group is the quotient of
        # the narrow group by the class of the principal ideals of negative norm
        neg = narrow.negated_identity_class()
        kernel = frozenset({narrow.identity, neg})
    else:
        kernel = frozenset({narrow.identity})
    structure = narrow.structure_mod(kernel)
    order = 1
    for inv in structure:
        order *= inv
    exponent = structure[-1] if structure else 1
    return QuadField(
        d=d,
        disc=disc,
        omega_is_half=_is_half_basis(d),
        class_order=order,
        class_exponent=exponent,
        class_structure=structure,
        fundamental_unit=unit,
        narrow_group=narrow,
        principal_kernel=kernel,
    )


def splitting_type(F: QuadField, q: int) -> Splitting:
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    from .arith import kronecker

    k = kronecker(F.disc, q)
    if k == 0:
        return Splitting.RAMIFIED
    return Splitting.SPLIT if k == 1 else Splitting.INERT


def fundamental_unit(F: QuadField) -> OKElement:
    if F.fundamental_unit is None:
        raise FieldError("imaginary fields have no fundamental unit")
    return F.fundamental_unit


def class_group(F: QuadField) -> tuple[int, int, tuple[int, ...]]:
    return (F.class_order, F.class_exponent, F.class_structure)


def _cf_fundamental_unit(d: int) -> OKElement:
    """Fundamental unit of Q(sqrt(d)), d > 0, via the continued fraction of w.

    The expansion of w = sqrt(d) (or (1+sqrt(d))/2) is run with the exact PQa
    recurrence until the state (P, Q) repeats; the convergent matrices at the
    two visits combine to a matrix fixing w, whose bottom row is a unit of
    Z + Z*w = O_K.  The first state repetition closes exactly one period, so
    the unit is fundamental.
    """
    D = d if d % 4 == 1 else 4 * d
    s = isqrt(D)
    P, Q = D % 2, 2
    pm2, pm1 = 0, 1  # p_{i-2}, p_{i-1}
    qm2, qm1 = 1, 0
    states: dict[tuple[int, int], tuple[int, int, int, int]] = {}
    for _ in range(_CF_PERIOD_CAP):
        key = (P, Q)
        if key in states:
            pj2, pj1, qj2, qj1 = states[key]
            c = qm1 * qj2 - qm2 * qj1
            dm = -qm1 * pj2 + qm2 * pj1
            cand = OKElement(dm, c, d)
            for x in (cand, -cand, cand.conj(), -cand.conj()):
                if _exceeds_one(x):
                    if abs(x.norm()) != 1:
                        raise InternalSearchError("unit extraction produced a non-unit")
                    return x
            raise InternalSearchError("no unit > 1 among candidates")
        states[key] = (pm2, pm1, qm2, qm1)
        a = (P + s) // Q
        pm2, pm1 = pm1, a * pm1 + pm2
        qm2, qm1 = qm1, a * qm1 + qm2
        P = a * Q - P
        Q = (D - P * P) // Q
    raise RuntimeError(f"continued-fraction period cap exceeded for d = {d}")


def _prime_form_b(D: int, q: int) -> int:
    """Smallest b in [0, 2q) with b = D mod 2 and 4q | b^2 - D."""
    for b in range(0, 2 * q):
        if (b - D) % 2 == 0 and (b * b - D) % (4 * q) == 0:
            return b
    raise InternalSearchError(f"no prime form above {q} for discriminant {D}")


def _hensel_root(t0: int, tr: int, nm: int, q: int, r: int) -> int:
    """Lift the simple root t0 of x^2 - tr*x + nm mod q to mod q^r."""
    t, mod = t0, q
    while mod < q**r:
        mod = min(mod * mod, q**r)
        fval = (t * t - tr * t + nm) % mod
        fprime = (2 * t - tr) % mod
        t = (t - fval * pow(fprime, -1, mod)) % mod
    return t % (q**r)


def _floor_quot(P: int, s: int, Q: int) -> int:
    """floor((P + sqrt(D)) / Q) given s = isqrt(D), any sign of Q."""
    if Q > 0:
        return (P + s) // Q
    return (P + s + 1) // Q


def _generator_real(Fq: QuadField, A: int, bhat: int) -> OKElement:
    """Generator of the principal ideal Z*A + Z*(bhat + w) in a real field.

    Walks the continued-fraction reduction of (bhat + w)/A, accumulating the
    multipliers; at the step where the accumulated element lands in the ideal
    with |norm| = A it is a generator.  A state repeat without success means
    the ideal is not principal (cannot happen when A is the correct class
    order power).
    """
    D = Fq.disc
    sig = D % 2
    s = isqrt(D)
    P, Q = 2 * bhat + sig, 2 * A
    gx, gy, gden = A, 0, 1  # g = (gx + gy*sqrt(D)) / gden
    seen: set[tuple[int, int]] = set()
    for _ in range(_CF_PERIOD_CAP):
        cand = _to_element(Fq, gx, gy, gden)
        if cand is not None and abs(cand.norm()) == A and (cand.u - cand.v * bhat) % A == 0:
            return cand
        key = (P, Q)
        if key in seen:
            raise InternalSearchError("ideal is not principal")
        seen.add(key)
        a = _floor_quot(P, s, Q)
        Pn = a * Q - P
        # multiply g by (alpha - a) = (-Pn + sqrt(D)) / Q
        gx, gy = -Pn * gx + D * gy, gx - Pn * gy
        gden *= Q
        g = math.gcd(math.gcd(gx, gy), gden)
        if g > 1:
            gx, gy, gden = gx // g, gy // g, gden // g
        Q = (D - Pn * Pn) // Q
        P = Pn
    raise RuntimeError("generator walk exceeded the iteration cap")


def _to_element(Fq: QuadField, gx: int, gy: int, gden: int) -> OKElement | None:
    """(gx + gy*sqrt(D))/gden as an O_K element, or None if not integral."""
    sig = Fq.disc % 2
    # sqrt(D) = 2w - sig
    un, vn = gx - sig * gy, 2 * gy
    if gden < 0:
        gden, un, vn = -gden, -un, -vn
    if un % gden or vn % gden:
        return None
    return OKElement(un // gden, vn // gden, Fq.d)


def _generator_imag(Fq: QuadField, A: int, bhat: int) -> OKElement:
    """Shortest vector of the ideal lattice Z*A + Z*(bhat + w), d < 0.

    The norm form is positive definite, so Lagrange-Gauss reduction finds the
    minimum; a principal ideal attains |norm| = A there.
    """
    tr, nm = Fq.omega_minpoly()

    def qf(v: tuple[int, int]) -> int:
        x, y = v
        return x * x + tr * x * y + nm * y * y

    def bil2(v: tuple[int, int], w: tuple[int, int]) -> int:
        # twice the polar form
        return 2 * v[0] * w[0] + tr * (v[0] * w[1] + v[1] * w[0]) + 2 * nm * v[1] * w[1]

    v1, v2 = (A, 0), (bhat, 1)
    if qf(v1) < qf(v2):
        v1, v2 = v2, v1
    for _ in range(_CF_PERIOD_CAP):
        t = bil2(v1, v2)
        m = (t + qf(v2)) // (2 * qf(v2)) if t >= 0 else -((-t + qf(v2)) // (2 * qf(v2)))
        v1 = (v1[0] - m * v2[0], v1[1] - m * v2[1])
        if qf(v1) >= qf(v2):
            break
        v1, v2 = v2, v1
    cand = OKElement(v2[0], v2[1], Fq.d)
    if abs(cand.norm()) != A or (cand.u - cand.v * bhat) % A != 0:
        raise InternalSearchError("ideal is not principal")
    return cand


def _unit_orbit_imag(x: OKElement) -> list[OKElement]:
    if x.d == -1:
        i = OKElement(0, 1, -1)
        return [x, x * i, -x, -(x * i)]
    if x.d == -3:
        z = OKElement(0, 1, -3)  # sixth root of unity
        orbit, y = [], x
        for _ in range(6):
            orbit.append(y)
            y = y * z
        return orbit
    return [x, -x]


def _canonical_key(x: OKElement) -> tuple[int, int, int, int]:
    return (abs(x.u), abs(x.v), 0 if x.u > 0 else 1, 0 if x.v > 0 else 1)


def _canonicalize_generator(F: QuadField, x: OKElement) -> OKElement:
    """Canonical associate: minimal |u|, then |v|, preferring positive signs."""
    if F.d < 0:
        return min(_unit_orbit_imag(x), key=_canonical_key)
    eps = F.fundamental_unit
    assert eps is not None
    inv = eps.conj() if eps.norm() == 1 else -eps.conj()

    def best_sign(y: OKElement) -> OKElement:
        return min((y, -y), key=_canonical_key)

    cur = best_sign(x)
    while True:
        for step in (eps, inv):
            nxt = best_sign(cur * step)
            if _canonical_key(nxt) < _canonical_key(cur):
                cur = nxt
                break
        else:
            break
    window = {cur}
    up = down = cur
    for _ in range(2):
        up = up * eps
        down = down * inv
        window.add(best_sign(up))
        window.add(best_sign(down))
    return min(window, key=_canonical_key)


def aux_prime_data(F: QuadField, q: int) -> AuxPrimeData:
    """Splitting, class order r, and canonical generator of q^r above q.

    The prime above q is fixed deterministically as the ideal
    Z*q + Z*((b + sqrt(disc))/2) for the smallest admissible b in [0, 2q);
    report values downstream are invariant under the conjugate choice.
    """
    split = splitting_type(F, q)
    if split is Splitting.INERT:
        return AuxPrimeData(q, split, q * q, 1, F.element(q))
    b = _prime_form_b(F.disc, q)
    form: Form = (q, b, (b * b - F.disc) // (4 * q))
    cls = F.narrow_group.class_of(form)
    r = F.narrow_group.order_of_mod(cls, F.principal_kernel)
    sig = F.disc % 2
    t0 = ((sig - b) // 2) % q
    if split is Splitting.RAMIFIED and r == 2:
        # q^2 = (q); q itself is the canonical generator
        alpha = F.element(q)
        return AuxPrimeData(q, split, q, r, alpha)
    tr, nm = F.omega_minpoly()
    T = t0 if r == 1 else _hensel_root(t0, tr, nm, q, r)
    A = q**r
    bhat = (-T) % A
    raw = _generator_real(F, A, bhat) if F.d > 0 else _generator_imag(F, A, bhat)
    alpha = _canonicalize_generator(F, raw)
    if abs(alpha.norm()) != A or (alpha.u - alpha.v * bhat) % A != 0:
        raise InternalSearchError("canonical generator lost ideal membership")
    return AuxPrimeData(q, split, q, r, alpha)


def conjugate_aux_prime_data(F: QuadField, data: AuxPrimeData) -> AuxPrimeData:
    """The same data built from the other prime above q (for invariance checks)."""
    if data.alpha is None:
        raise ValueError("no generator to conjugate")
    return AuxPrimeData(
        data.q, data.splitting, data.n_q, data.r, data.alpha.conj()
    )


def ramified_primes(F: QuadField) -> list[int]:
    return sorted(factor(abs(F.disc)))
