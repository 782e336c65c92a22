"""Form class groups of quadratic discriminants.

Classes are represented by reduced binary quadratic forms (a, b, c) of
discriminant D = b^2 - 4ac.  For D < 0 each class has a unique reduced
representative; for D > 0 the reduced forms of a class constitute a cycle
under the rho operator, and the narrow class group is the set of cycles.
Composition is textbook Dirichlet composition: move to a representative
whose leading coefficient is coprime to the other form's, align the middle
coefficients by CRT, and multiply the now-concordant pair directly.
"""

from __future__ import annotations

import math
from typing import Callable

from .arith import isqrt

Form = tuple[int, int, int]

_REDUCTION_CAP = 1_000_000


def discriminant(f: Form) -> int:
    a, b, c = f
    return b * b - 4 * a * c


def principal_form(D: int) -> Form:
    s = D % 2
    return (1, s, (s * s - D) // 4)


def negated_principal_form(D: int) -> Form:
    """The form of discriminant D > 0 representing -1."""
    s = D % 2
    return (-1, s, (D - s * s) // 4)


def is_reduced(f: Form, D: int) -> bool:
    a, b, c = f
    if D < 0:
        return (-a < b <= a < c) or (0 <= b <= a == c)
    # indefinite: |sqrt(D) - 2|a|| < b < sqrt(D), tested exactly
    if b <= 0 or b * b >= D:
        return False
    t = 2 * abs(a)
    if (t + b) ** 2 <= D:
        return False
    if t > b and (t - b) ** 2 >= D:
        return False
    return True


def reduce_form(f: Form, D: int) -> Form:
    return _reduce_definite(f) if D < 0 else _reduce_indefinite(f, D)


def _reduce_definite(f: Form) -> Form:
    a, b, c = f
    for _ in range(_REDUCTION_CAP):
        if b <= -a or b > a:
            k = (a - b) // (2 * a)
            b, c = b + 2 * a * k, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return (a, b, c)
    raise RuntimeError("definite reduction did not terminate")


def rho(f: Form, D: int) -> Form:
    """One indefinite reduction/cycle step."""
    a, b, c = f
    s = isqrt(D)
    u = abs(c) if abs(c) > s else s
    b2 = u - (u + b) % (2 * abs(c))
    return (c, b2, (b2 * b2 - D) // (4 * c))


def _reduce_indefinite(f: Form, D: int) -> Form:
    for _ in range(_REDUCTION_CAP):
        if is_reduced(f, D):
            return f
        f = rho(f, D)
    raise RuntimeError("indefinite reduction did not terminate")


def form_cycle(f: Form, D: int) -> list[Form]:
    """The full rho-cycle through a reduced indefinite form."""
    cycle = [f]
    g = rho(f, D)
    while g != f:
        cycle.append(g)
        g = rho(g, D)
        if len(cycle) > _REDUCTION_CAP:
            raise RuntimeError("runaway form cycle")
    return cycle


def enumerate_reduced_forms(D: int) -> list[Form]:
    """Every reduced form of discriminant D, sorted."""
    forms: list[Form] = []
    if D < 0:
        amax = isqrt(-D // 3)
        for a in range(1, amax + 1):
            for b in range(-a + 1, a + 1):
                if (b - D) % 2:
                    continue
                if (b * b - D) % (4 * a):
                    continue
                c = (b * b - D) // (4 * a)
                if c < a:
                    continue
                if a == c and b < 0:
                    continue
                forms.append((a, b, c))
    else:
        s = isqrt(D)
        for b in range(1, s + 1):
            if (b - D) % 2:
                continue
            m = (D - b * b) // 4
            for aa in range(1, isqrt(m) + 1):
                if m % aa:
                    continue
                for t in (aa, m // aa):
                    if (2 * t + b) ** 2 <= D:
                        continue
                    if 2 * t > b and (2 * t - b) ** 2 >= D:
                        continue
                    for a in (t, -t):
                        forms.append((a, b, -m // a))
        forms = list(set(forms))
    return sorted(forms)


def _transform(f: Form, x: int, y: int, z: int, w: int) -> Form:
    """Action of the SL2 matrix [[x, z], [y, w]] on a form."""
    a, b, c = f
    a2 = a * x * x + b * x * y + c * y * y
    c2 = a * z * z + b * z * w + c * w * w
    b2 = 2 * a * x * z + b * (x * w + y * z) + 2 * c * y * w
    return (a2, b2, c2)


def _with_leading_coprime_to(f: Form, n: int) -> Form:
    """An SL2-equivalent of f whose leading coefficient is coprime to n.

    A primitive form represents values coprime to any fixed modulus; a tiny
    deterministic search over primitive (x, y) finds one.
    """
    a, b, c = f
    if math.gcd(a, n) == 1:
        return f
    if math.gcd(c, n) == 1:
        return _transform(f, 0, 1, -1, 0)
    for bound in range(1, 64):
        for x in range(0, bound + 1):
            for y in range(-bound, bound + 1):
                if max(abs(x), abs(y)) != bound or math.gcd(x, y) != 1:
                    continue
                v = a * x * x + b * x * y + c * y * y
                if v != 0 and math.gcd(v, n) == 1:
                    g, w, z = _ext_gcd(x, y)
                    if g < 0:
                        w, z = -w, -z
                    # det [[x, -z], [y, w]] = x*w + y*z = 1: a proper transform
                    return _transform(f, x, y, -z, w)
    raise RuntimeError("no representative coprime to modulus found")


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def compose(f1: Form, f2: Form, D: int) -> Form:
    """Dirichlet composition of primitive forms of discriminant D (unreduced).

    f2 is first moved to a representative with gcd(a1, a2) = 1, then both are
    aligned to a common middle coefficient B (CRT mod 2a1 and 2a2), making the
    pair concordant: the composite is (a1*a2, B, (B^2-D)/(4*a1*a2)).
    """
    a1, b1, _ = f1
    f2 = _with_leading_coprime_to(f2, a1)
    a2, b2, _ = f2
    # B = b1 + 2*a1*t with 2*a1*t = b2 - b1 (mod 2*a2)
    t = (b2 - b1) // 2 * pow(a1, -1, abs(a2)) % abs(a2)
    B = b1 + 2 * a1 * t
    a3 = a1 * a2
    c3 = (B * B - D) // (4 * a3)
    return (a3, B, c3)


def inverse_form(f: Form) -> Form:
    a, b, c = f
    return (a, -b, c)


class FormClassGroup:
    """Narrow class group of a fundamental discriminant.

    Elements are integers 0..h-1 indexing the sorted canonical class
    representatives.  For D > 0 the representative of a class is the
    smallest form of its cycle.  Only fundamental discriminants are
    supported: composition assumes every form is primitive.
    """

    def __init__(self, D: int):
        if D == 0 or D == 1 or (D % 4 not in (0, 1)):
            raise ValueError(f"not a discriminant: {D}")
        self.D = D
        forms = enumerate_reduced_forms(D)
        self._index: dict[Form, int] = {}
        if D < 0:
            self.reps = forms
            for i, f in enumerate(forms):
                self._index[f] = i
        else:
            cycles: list[list[Form]] = []
            seen: set[Form] = set()
            for f in forms:
                if f in seen:
                    continue
                cyc = form_cycle(f, D)
                seen.update(cyc)
                cycles.append(cyc)
            reps = sorted(min(c) for c in cycles)
            rep_pos = {r: i for i, r in enumerate(reps)}
            self.reps = reps
            for cyc in cycles:
                i = rep_pos[min(cyc)]
                for f in cyc:
                    self._index[f] = i
        self.order = len(self.reps)
        self.identity = self.class_of(principal_form(D))

    def class_of(self, f: Form) -> int:
        return self._index[reduce_form(f, self.D)]

    def mul(self, i: int, j: int) -> int:
        return self.class_of(compose(self.reps[i], self.reps[j], self.D))

    def inv(self, i: int) -> int:
        return self.class_of(inverse_form(self.reps[i]))

    def power(self, i: int, k: int) -> int:
        result = self.identity
        base = i
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def order_of(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.mul(x, i)
            k += 1
        return k

    def negated_identity_class(self) -> int:
        """Class of the form representing -1 (D > 0 only)."""
        if self.D < 0:
            raise ValueError("only meaningful for real discriminants")
        return self.class_of(negated_principal_form(self.D))

    def order_of_mod(self, i: int, subgroup: frozenset[int]) -> int:
        """Order of element i in the quotient by `subgroup`."""
        k, x = 1, i
        while x not in subgroup:
            x = self.mul(x, i)
            k += 1
        return k

    def structure(self) -> tuple[int, ...]:
        """Invariant factors d1 | d2 | ... of the group, ascending."""
        return invariant_factors(tuple(range(self.order)), self.mul, self.identity)

    def structure_mod(self, subgroup: frozenset[int]) -> tuple[int, ...]:
        """Invariant factors of the quotient by `subgroup`."""
        rep = {x: min(self.mul(x, s) for s in subgroup) for x in range(self.order)}
        elems = tuple(sorted(set(rep.values())))
        return invariant_factors(
            elems, lambda x, y: rep[self.mul(x, y)], rep[self.identity]
        )


def invariant_factors(
    elements: tuple[int, ...], mul: Callable[[int, int], int], identity: int
) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group given by a multiplication.

    Peels off a cyclic summand of maximal order, then recurses on the
    quotient; a maximal-order element always generates a direct summand.
    """
    if len(elements) == 1:
        return ()

    def order_of(x: int) -> int:
        k, y = 1, x
        while y != identity:
            y = mul(y, x)
            k += 1
        return k

    best, e = None, 0
    for x in elements:
        o = order_of(x)
        if o > e:
            best, e = x, o
    subgroup = [identity]
    y = best
    while y != identity:
        subgroup.append(y)
        y = mul(y, best)
    rep = {x: min(mul(x, s) for s in subgroup) for x in elements}
    quo = tuple(sorted(set(rep.values())))
    tail = invariant_factors(quo, lambda x, z: rep[mul(x, z)], rep[identity])
    return tail + (e,)
