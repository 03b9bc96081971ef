"""Integer Laurent polynomials and the twist knots K_m.

Polynomials are kept symmetrized, the way Alexander polynomials are
usually written: ``m t - (2m - 1) + m t^-1`` rather than a shifted
ordinary polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DomainError, ValidationError


@dataclass(frozen=True)
class LaurentPoly:
    """Finitely supported map exponent -> nonzero integer coefficient."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for exp, coeff in self.terms:
            merged[int(exp)] = merged.get(int(exp), 0) + int(coeff)
        object.__setattr__(
            self, "terms", tuple(sorted((e, c) for e, c in merged.items() if c))
        )

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> LaurentPoly:
        return cls(tuple(d.items()))

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls(((0, c),))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls(((exp, coeff),))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coefficient(self, exp: int) -> int:
        return self.as_dict().get(exp, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        other = _coerce(other)
        return LaurentPoly(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> LaurentPoly:
        return _coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        return multiply(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            raise DomainError("negative powers are not Laurent polynomials in general")
        result = LaurentPoly.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def evaluate(self, t):
        return sum(c * t**e for e, c in self.terms)

    def degree(self) -> int:
        return degree(self)

    def leading_coefficient(self) -> int:
        return leading_coefficient(self)

    def format(self, var: str = "t") -> str:
        return format_poly(self, var)

    def __str__(self) -> str:
        return format_poly(self)


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot treat {x!r} as a Laurent polynomial")


def multiply(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    out: dict[int, int] = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            out[ea + eb] = out.get(ea + eb, 0) + ca * cb
    return LaurentPoly.from_dict(out)


def substitute_power(a: LaurentPoly, k: int) -> LaurentPoly:
    """t -> t^k."""
    if k == 0:
        raise DomainError("substitution t -> t^0 collapses the polynomial")
    return LaurentPoly(tuple((k * e, c) for e, c in a.terms))


def is_symmetric(a: LaurentPoly) -> bool:
    d = a.as_dict()
    return all(d.get(-e, 0) == c for e, c in d.items())


def degree(a: LaurentPoly) -> int:
    if a.is_zero():
        raise DomainError("the zero polynomial has no degree")
    return a.terms[-1][0]


def leading_coefficient(a: LaurentPoly) -> int:
    if a.is_zero():
        raise DomainError("the zero polynomial has no leading coefficient")
    return a.terms[-1][1]


# ---------------------------------------------------------------------------
# text syntax: "3t^1 - 5 + 3t^-1", "t - 1 + t^-1", "-2*t^2"

_TERM = re.compile(
    r"""
    (?P<sign>[+-])?
    (?P<coeff>\d+)?
    \*?
    (?:(?P<var>[A-Za-z])(?:\^(?P<exp>[+-]?\d+))?)?
    """,
    re.VERBOSE,
)


def parse_poly(text: str, var: str | None = None) -> LaurentPoly:
    """Parse the textual syntax; whitespace is ignored, coefficient 1 implicit."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial")
    pos, terms, first = 0, [], True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError(f"bad polynomial term at offset {pos} in {text!r}")
        if m.group("sign") is None and not first:
            raise ValueError(f"missing '+' or '-' at offset {pos} in {text!r}")
        v = m.group("var")
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise ValueError(f"mixed variables {var!r} and {v!r}")
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        if m.group("sign") == "-":
            coeff = -coeff
        exp = 0 if v is None else int(m.group("exp") or 1)
        terms.append((exp, coeff))
        pos, first = m.end(), False
    return LaurentPoly(tuple(terms))


def format_poly(a: LaurentPoly, var: str = "t") -> str:
    """Highest exponent first, e.g. ``3t - 5 + 3t^-1``."""
    if a.is_zero():
        return "0"
    pieces = []
    for e, c in reversed(a.terms):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + var + ("" if e == 1 else f"^{e}")
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# knots


@dataclass(frozen=True)
class KnotModel:
    """A knot as far as knot surgery sees it.

    Only the symmetrized Alexander polynomial enters the invariants; genus
    and fiberedness are recorded data, not computed.
    """

    label: str
    alexander: LaurentPoly
    seifert_genus: int
    fibered: bool

    def __post_init__(self):
        if self.alexander.is_zero() or not is_symmetric(self.alexander):
            raise ValidationError(f"{self.label}: Alexander polynomial must be nonzero and symmetric")
        if abs(self.alexander.evaluate(1)) != 1:
            raise ValidationError(f"{self.label}: Alexander polynomial must satisfy Delta(1) = +-1")
        if self.seifert_genus < 0:
            raise ValidationError(f"{self.label}: genus must be nonnegative")

    @property
    def degree(self) -> int:
        return degree(self.alexander)


def twist_knot(m: int) -> KnotModel:
    """K_m: Delta = m t - (2m - 1) + m t^-1, genus one, fibered only for m = 1."""
    if m < 1:
        raise DomainError(f"twist knot parameter must be positive, got {m}")
    alex = LaurentPoly(((1, m), (0, -(2 * m - 1)), (-1, m)))
    return KnotModel(f"K_{m}", alex, seifert_genus=1, fibered=(m == 1))


def knot_from_poly(label: str, text: str, genus: int, fibered: bool = False) -> KnotModel:
    return KnotModel(label, parse_poly(text), genus, fibered)


def product(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly.constant(1)
    for p in polys:
        out = out * p
    return out
