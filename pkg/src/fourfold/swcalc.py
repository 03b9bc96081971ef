"""Seiberg-Witten bookkeeping for knot surgery, blow-ups and chambers.

Series are Laurent polynomials in a formal variable ``u`` whose exponent r
stands for the class r*F, F the fiber.  With that convention the knot
surgery formula multiplies by Delta_K(u^2), and E(n) contributes
(u - u^-1)^(n-2).  Signs of SW values are not pinned down, so every
comparison below is on absolute values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, UnsupportedError, ValidationError
from .intlat import HomClass, is_characteristic, pairing
from .knotpoly import KnotModel, LaurentPoly, degree, leading_coefficient, product, substitute_power

SMALL_PERTURBATION = "small-perturbation chamber (b2+ = 1)"


@dataclass(frozen=True)
class BasicClassRecord:
    fiber_multiple: int
    value: int
    chamber_note: str | None = None

    def __post_init__(self):
        if self.value == 0:
            raise ValidationError("a basic class has nonzero SW value")


@dataclass(frozen=True)
class SWSeries:
    poly: LaurentPoly
    var: str = "u"

    def coefficient(self, r: int) -> int:
        return self.poly.coefficient(r)

    def basic_classes(self) -> list[BasicClassRecord]:
        return [BasicClassRecord(r, c) for r, c in self.poly.terms]

    @property
    def degree(self) -> int:
        return degree(self.poly)

    @property
    def leading_coefficient(self) -> int:
        return leading_coefficient(self.poly)

    def is_conjugation_symmetric(self) -> bool:
        return all(abs(c) == abs(self.coefficient(-r)) for r, c in self.poly.terms)

    def __str__(self) -> str:
        return self.poly.format(self.var)


@dataclass(frozen=True)
class ChamberValueSet:
    values: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "values", frozenset(self.values))
        if not self.values:
            raise ValidationError("chamber value set is empty")

    def __iter__(self):
        return iter(sorted(self.values))

    def __contains__(self, v):
        return v in self.values


class ExclusionVerdict(str, enum.Enum):
    EXCLUDED_ADJUNCTION = "excluded_adjunction"
    EXCLUDED_TAUBES = "excluded_taubes"
    CANDIDATE = "candidate"


_U = LaurentPoly(((1, 1), (-1, -1)))  # u - u^-1


def knot_surgery_series(n: int, knots: Sequence[KnotModel]) -> SWSeries:
    """SW series of E(n) after knot surgery along one fiber torus per knot."""
    if n < 2:
        raise UnsupportedError("E(1) has b2+ = 1; use e1_double_twist_values")
    alex = product(substitute_power(k.alexander, 2) for k in knots)
    return SWSeries(alex * _U ** (n - 2))


def e1_double_twist_values(m: int) -> list[BasicClassRecord]:
    """|SW| of E(1) after two knot surgeries with K_m, on +-3F and +-F.

    These are the known small-perturbation values m^2 and 2m(2m-1); nothing
    is extrapolated to other classes.
    """
    if m < 1:
        raise DomainError(f"twist parameter must be positive, got {m}")
    top, mid = m * m, 2 * m * (2 * m - 1)
    return [
        BasicClassRecord(3, top, SMALL_PERTURBATION),
        BasicClassRecord(1, mid, SMALL_PERTURBATION),
        BasicClassRecord(-1, mid, SMALL_PERTURBATION),
        BasicClassRecord(-3, top, SMALL_PERTURBATION),
    ]


def blowup_value_set(base: int) -> ChamberValueSet:
    """Absolute values reachable from |SW| = base after blow-ups and one wall."""
    if base < 0:
        raise DomainError("absolute SW values are nonnegative")
    return ChamberValueSet(frozenset(v for v in (base - 1, base, base + 1) if v >= 0))


def _family_values(m: int) -> set[int]:
    out: set[int] = set()
    for rec in e1_double_twist_values(m):
        out |= blowup_value_set(abs(rec.value)).values
    return out


def families_distinct(m: int, m_prime: int) -> bool:
    """Whether blown-up X_m(1) and X_m'(1) are separated by |SW| in every chamber.

    The larger family always has a class with |SW| in
    {2m(2m-1) - 1, 2m(2m-1), 2m(2m-1) + 1}; the smaller family never
    reaches the bottom of that set.
    """
    if m == m_prime:
        return False
    lo, hi = sorted((m, m_prime))
    big = blowup_value_set(2 * hi * (2 * hi - 1))
    floor = min(v for v in big.values if v > 0)
    return max(_family_values(lo)) < floor


def extremal_multiplicity_knot_surgery(n: int, d: int) -> int:
    """Top exponent of Delta_K(u^2)^2 (u - u^-1)^(n-2): 4d + n - 2."""
    if d < 1:
        raise DomainError("Alexander polynomial degree must be positive")
    if n < 1:
        raise DomainError("E(n) needs n >= 1")
    return 4 * d + n - 2


def obstruction_residues(k: int) -> tuple[int, int]:
    """(residue of 4d - 1, residue of 4k - 3) mod 4."""
    if k < 1:
        raise DomainError("k must be positive")
    knot_res = {(4 * d - 1) % 4 for d in range(1, 5)}
    assert len(knot_res) == 1
    return knot_res.pop(), (4 * k - 3) % 4


def not_knot_surgery_obstruction(k: int) -> bool:
    """True iff no double knot surgery on E(1) can match D_{2k}'s extremal class.

    d ranges over a full residue system mod 4, which covers every d >= 1.
    """
    if k < 1:
        raise DomainError("k must be positive")
    target = (4 * k - 3) % 4
    return all((4 * d - 1) % 4 != target for d in range(1, 5))


def _rational_multiple(L: HomClass, K: HomClass):
    """r with L = r*K over Q, or None."""
    r = None
    for a, b in zip(L.coeffs, K.coeffs):
        if b == 0:
            if a != 0:
                return None
            continue
        q = Fraction(a, b)
        if r is None:
            r = q
        elif q != r:
            return None
    return r


def basic_class_exclusion(L: HomClass, K: HomClass) -> ExclusionVerdict:
    """Rule out L as a basic class using adjunction (K.L != 0) and |r| <= 1."""
    if not is_characteristic(L):
        raise ValidationError(f"{L} is not characteristic")
    if pairing(K, L) != 0:
        return ExclusionVerdict.EXCLUDED_ADJUNCTION
    r = _rational_multiple(L, K)
    if r is not None and abs(r) > 1:
        return ExclusionVerdict.EXCLUDED_TAUBES
    return ExclusionVerdict.CANDIDATE
