"""Curated lookup data for the modular-curve stage of the sieve.

Everything here is data, not logic: each entry records a verdict obtained
from published modular-curve computations (Mordell-Weil groups, quadratic
point tables, twist local-solubility arguments), together with its source.
The engine never invents entries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .sieve import Status


# Primes whose exceptional quadratic points (points x on X_0(p) with
# w_p(x) != x^tau) are completely classified by published tables
# (Ozman-Siksek; Box; Najman-Vukorepa).
EXCEPTIONAL_PRIMES = frozenset(
    {23, 29, 31, 41, 43, 47, 53, 59, 61, 67, 73, 79, 83, 89, 101, 131}
)

# Fields over which those tables do exhibit exceptional points; the
# exceptional-point elimination must not be applied for these d.
EXCEPTIONAL_EXCLUDED_D = frozenset({-1, -3, -5, -7, -11, -15, -31, -71, -131})

EXCEPTIONAL_CITATION = (
    "no exceptional quadratic points on X_0(p) over this field "
    "(tables of Ozman-Siksek, Box, and Najman-Vukorepa)"
)

# Witness curves showing the base-set primes can never be eliminated: for
# each p a rational elliptic curve, semistable at p, with a rational
# p-isogeny (Cremona label, conductor).  Base change realises p over any
# quadratic field.
WITNESS_CURVES: dict[int, tuple[str, str]] = {
    2: ("14a1", "2*7"),
    3: ("14a1", "2*7"),
    5: ("11a1", "11"),
    7: ("26b1", "2*13"),
    13: ("147b1", "3*7^2"),
    37: ("1225e1", "5^2*7^2"),
}

# Real quadratic fields realising p in {11, 17, 19} with the stated class
# group exponent: X_0(p) has positive rank over each of these fields.
FAMILY_WITNESS_FIELDS: dict[int, int] = {1: 29, 2: 10, 3: 79}


_RANK1_WITNESS = (
    "X_0({p}) has rank-1 Mordell-Weil group over the field; a small multiple "
    "of a generator yields a curve with a rational {p}-isogeny that is "
    "semistable above {p} (small modular curve model)"
)
_ADDITIVE_KILL = (
    "every non-cuspidal point of X_0({p}) over the field comes from a curve "
    "with additive potentially good reduction above {p} "
    "(minimal-twist valuation argument)"
)

D_PAPER_LARGE = 318049  # 47*67*101

# Verdicts for (d, p) pairs that the sieve criteria cannot decide: the
# primes 11, 17, 19, ramified primes, and step-2 stragglers.
STEP3_OVERRIDES: dict[tuple[int, int], tuple[Status, str]] = {
    # d = 2: extra primes 11, 19
    (2, 11): (Status.SURVIVES, _RANK1_WITNESS.format(p=11)),
    (2, 17): (Status.ELIMINATED, _ADDITIVE_KILL.format(p=17)),
    (2, 19): (Status.SURVIVES, _RANK1_WITNESS.format(p=19)),
    # d = 3: extra primes 17, 19
    (3, 11): (Status.ELIMINATED, _ADDITIVE_KILL.format(p=11)),
    (3, 17): (Status.SURVIVES, _RANK1_WITNESS.format(p=17)),
    (3, 19): (Status.SURVIVES, _RANK1_WITNESS.format(p=19)),
    # d = 5: extra prime 17
    (5, 11): (Status.ELIMINATED, _ADDITIVE_KILL.format(p=11)),
    (5, 17): (Status.SURVIVES, _RANK1_WITNESS.format(p=17)),
    (5, 19): (Status.ELIMINATED, _ADDITIVE_KILL.format(p=19)),
    # d = 6: extra primes 11, 17
    (6, 11): (Status.SURVIVES, _RANK1_WITNESS.format(p=11)),
    (6, 17): (Status.SURVIVES, _RANK1_WITNESS.format(p=17)),
    (6, 19): (
        Status.ELIMINATED,
        "X_0(19)(Q(sqrt(6))) = X_0(19)(Q) = Z/3Z; its non-cuspidal point has "
        "additive potentially good reduction at both primes above 19",
    ),
    # d = 7: extra primes 11, 17
    (7, 11): (Status.SURVIVES, _RANK1_WITNESS.format(p=11)),
    (7, 17): (Status.SURVIVES, _RANK1_WITNESS.format(p=17)),
    (7, 19): (Status.ELIMINATED, _ADDITIVE_KILL.format(p=19)),
    # d = -5: extra prime 43
    (-5, 11): (Status.ELIMINATED, _ADDITIVE_KILL.format(p=11)),
    (-5, 17): (Status.ELIMINATED, _ADDITIVE_KILL.format(p=17)),
    (-5, 19): (Status.ELIMINATED, _ADDITIVE_KILL.format(p=19)),
    (-5, 43): (
        Status.SURVIVES,
        "pullback of a rational point of X_0^+(43) gives a quadratic point "
        "on X_0(43); a local twist of the corresponding curve has good "
        "reduction at both primes above 43",
    ),
    # d = 47*67*101: extra primes 11, 19; 17 and the ramified 47, 67, 101 die
    (D_PAPER_LARGE, 11): (
        Status.SURVIVES,
        "point on X_0(11) over the field found through its quadratic twist "
        "by d; the representative curve is semistable above 11",
    ),
    (D_PAPER_LARGE, 17): (Status.ELIMINATED, _ADDITIVE_KILL.format(p=17)),
    (D_PAPER_LARGE, 19): (
        Status.SURVIVES,
        "point on X_0(19) over the field found through its quadratic twist "
        "by d; the representative curve is semistable above 19",
    ),
    (D_PAPER_LARGE, 47): (
        Status.ELIMINATED,
        "X_0(47) is hyperelliptic with Atkin-Lehner equal to the "
        "hyperelliptic involution; the quadratic twist by d has no "
        "Q_101-points",
    ),
    (D_PAPER_LARGE, 67): (
        Status.ELIMINATED,
        "X_0(67) has a single non-cuspidal rational point and no points over "
        "real quadratic fields (Box's quadratic-point tables)",
    ),
    (D_PAPER_LARGE, 101): (
        Status.ELIMINATED,
        "the quadratic twist of X_0(101) by d has no Q_67-points (Ozman's "
        "local criterion through the Hilbert class field of Q(sqrt(-101)))",
    ),
}


@dataclass(frozen=True)
class CuratedTables:
    exceptional_primes: frozenset[int]
    exceptional_excluded_d: frozenset[int]
    step3_overrides: dict[tuple[int, int], tuple[Status, str]]
    witness_curves: dict[int, tuple[str, str]]
    family_witness_fields: dict[int, int]


DEFAULT_TABLES = CuratedTables(
    exceptional_primes=EXCEPTIONAL_PRIMES,
    exceptional_excluded_d=EXCEPTIONAL_EXCLUDED_D,
    step3_overrides=STEP3_OVERRIDES,
    witness_curves=WITNESS_CURVES,
    family_witness_fields=FAMILY_WITNESS_FIELDS,
)
