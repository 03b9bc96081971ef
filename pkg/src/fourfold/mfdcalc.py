"""Manifold expressions, their invariants, covers and homeomorphism type.

An expression is a small immutable tree: atoms (CP2, CP2bar, S2xS2, K3,
E(n), Z0, Z1), connected sums, and the cut-and-paste operations used to
build exotic manifolds (blow-up, fiber sum, knot surgery, rational
blow-down, branched double cover, free Z/2 quotient).  Geometric facts that
cannot be checked arithmetically -- that an involution exists and is free,
that a chain embeds with a transverse sphere, whether a quotient is spin --
enter as explicit flags on the nodes.

Homeomorphism is decided from (w2-type, signature, Euler characteristic)
for fundamental group Z/2 and from (Euler characteristic, signature,
parity) in the simply connected case.
"""

from __future__ import annotations

import enum
import functools
import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DomainError,
    NoCoverError,
    ParityError,
    RewriteNotApplicable,
    StructuralError,
    UnsupportedError,
    ValidationError,
)
from .intlat import dn_configuration, rational_ball_parameters
from .knotpoly import KnotModel, twist_knot

TRIVIAL = "trivial"
Z2 = "Z2"

INVOLUTIONS = frozenset({"j", "iota"})


class W2Type(str, enum.Enum):
    SC_ODD = "SC_odd"
    SC_EVEN = "SC_even"
    I = "I"  # noqa: E741
    II = "II"
    III = "III"


def w2_type(spin_total: bool, spin_cover: bool) -> W2Type:
    """Type I: cover non-spin.  Type II: spin.  Type III: non-spin with spin cover."""
    if spin_total and not spin_cover:
        raise ValidationError("a spin manifold cannot have a non-spin cover")
    if not spin_cover:
        return W2Type.I
    return W2Type.II if spin_total else W2Type.III


@dataclass(frozen=True)
class InvariantRecord:
    euler: int
    signature: int
    b2plus: int
    b2minus: int
    pi1: str
    spin: bool
    w2type: W2Type
    definite: bool

    @classmethod
    def build(cls, euler: int, signature: int, pi1: str, spin: bool, cover_spin: bool | None = None):
        b2 = euler - 2
        if b2 < 0 or (b2 + signature) % 2 or abs(signature) > b2:
            raise ValidationError(f"inconsistent (euler, signature) = ({euler}, {signature})")
        plus, minus = (b2 + signature) // 2, (b2 - signature) // 2
        if pi1 == TRIVIAL:
            if cover_spin is not None and cover_spin != spin:
                raise ValidationError("a simply connected manifold is its own cover")
            if spin and signature % 16:
                raise ValidationError(f"spin simply connected manifold with signature {signature} violates Rokhlin")
            w2 = W2Type.SC_EVEN if spin else W2Type.SC_ODD
        elif pi1 == Z2:
            if cover_spin is None:
                raise ValidationError("a Z/2 manifold needs the spin flag of its cover")
            w2 = w2_type(spin, cover_spin)
            if spin and signature % 16:
                warnings.warn(f"spin Z/2 manifold with signature {signature} not divisible by 16")
        else:
            raise UnsupportedError(f"fundamental group {pi1!r} is outside {{trivial, Z2}}")
        return cls(euler, signature, plus, minus, pi1, spin, w2, plus == 0 or minus == 0)

    @property
    def cover_spin(self) -> bool:
        if self.pi1 == TRIVIAL:
            return self.spin
        return self.w2type is not W2Type.I

    def as_dict(self) -> dict:
        return {
            "euler": self.euler,
            "signature": self.signature,
            "b2plus": self.b2plus,
            "b2minus": self.b2minus,
            "pi1": self.pi1,
            "spin": self.spin,
            "w2type": self.w2type.value,
            "definite": self.definite,
        }


# ---------------------------------------------------------------------------
# expression trees


class Expr:
    """Base class of manifold expressions; subclasses are frozen dataclasses."""

    def __str__(self) -> str:
        return render(self)


ATOMS = {
    # name: (euler, signature, pi1, spin, cover_spin)
    "CP2": (3, 1, TRIVIAL, False, False),
    "CP2bar": (3, -1, TRIVIAL, False, False),
    "S2xS2": (4, 0, TRIVIAL, True, True),
    "K3": (24, -16, TRIVIAL, True, True),
    "Z0": (2, 0, Z2, True, True),
    "Z1": (2, 0, Z2, False, True),
}


@dataclass(frozen=True)
class Atom(Expr):
    name: str

    def __post_init__(self):
        if self.name not in ATOMS:
            raise DomainError(f"unknown atom {self.name!r}")


@dataclass(frozen=True)
class Elliptic(Expr):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"E(n) needs n >= 1, got {self.n}")


@dataclass(frozen=True)
class Multiple(Expr):
    """``count`` copies of ``expr`` connected-summed; 0 copies is S^4."""

    count: int
    expr: Expr

    def __post_init__(self):
        if self.count < 0:
            raise DomainError("copy count must be nonnegative")


@dataclass(frozen=True)
class ConnSum(Expr):
    summands: tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if len(self.summands) < 2:
            raise DomainError("a connected sum needs at least two summands")


@dataclass(frozen=True)
class Blowup(Expr):
    expr: Expr
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise DomainError("blow-up count must be positive")


@dataclass(frozen=True)
class FiberSumE(Expr):
    """Elliptic fiber sum E(n1) #_f E(n2) #_f ... = E(n1 + n2 + ...)."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2 or any(p < 1 for p in self.parts):
            raise DomainError("fiber sum needs at least two E(n) with n >= 1")


@dataclass(frozen=True)
class KnotSurgery(Expr):
    """Knot surgery along ``count`` parallel fiber tori, each with ``knot``."""

    expr: Expr
    knot: KnotModel
    count: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise DomainError("knot surgery count must be positive")


@dataclass(frozen=True)
class RationalBlowdown(Expr):
    """Replace disjoint linear chains of spheres by rational homology balls.

    ``chains`` lists the self-intersections of each chain.  Simple
    connectivity survives only when a sphere meets a chain end transversely
    once (``has_transverse_sphere``).  ``result_spin`` is supplied geometric
    data.
    """

    expr: Expr
    chains: tuple[tuple[int, ...], ...]
    has_transverse_sphere: bool = True
    result_spin: bool = False

    def __post_init__(self):
        object.__setattr__(self, "chains", tuple(tuple(c) for c in self.chains))
        if not self.chains or any(not c for c in self.chains):
            raise DomainError("rational blow-down needs nonempty chains")

    @property
    def total_length(self) -> int:
        return sum(len(c) for c in self.chains)


@dataclass(frozen=True)
class BranchedDoubleCover(Expr):
    """Double cover of a base with (euler, signature), branched along
    disjoint surfaces given as (euler, self-intersection) pairs."""

    base_euler: int
    base_signature: int
    branch: tuple[tuple[int, int], ...]
    spin: bool = False

    def __post_init__(self):
        object.__setattr__(self, "branch", tuple(tuple(b) for b in self.branch))


@dataclass(frozen=True)
class FreeQuotient(Expr):
    expr: Expr
    involution: str
    quotient_spin: bool = False


@dataclass(frozen=True)
class Cover(Expr):
    """Universal double cover, evaluated lazily."""

    expr: Expr


# named constructions ---------------------------------------------------------


@dataclass(frozen=True)
class X(Expr):
    """E(n) after two knot surgeries with the twist knot K_m."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DomainError(f"X(m, n) needs m, n >= 1, got ({self.m}, {self.n})")

    def expand(self) -> Expr:
        return KnotSurgery(Elliptic(self.n), twist_knot(self.m), 2)


@dataclass(frozen=True)
class W(Expr):
    """X(m, n) divided by the lift of (antipodal, conjugation); spin iff 4 | n."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DomainError(f"W(m, n) needs m, n >= 1, got ({self.m}, {self.n})")

    def expand(self) -> Expr:
        return FreeQuotient(X(self.m, self.n), "j", self.n % 4 == 0)


@dataclass(frozen=True)
class D(Expr):
    """E(1) # 2n CP2bar with both (-n, -5, -2, ..., -2) chains blown down."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"D(n) needs n >= 2, got {self.n}")

    def expand(self) -> Expr:
        return RationalBlowdown(Blowup(Elliptic(1), 2 * self.n), _dn_chains(self.n), True, False)


@functools.lru_cache(maxsize=None)
def _dn_chains(n: int) -> tuple[tuple[int, ...], ...]:
    data = dn_configuration(n)
    return (tuple(data.config1.expected_squares), tuple(data.config2.expected_squares))


@dataclass(frozen=True)
class G(Expr):
    """D(n) divided by the (antipodal, antipodal) involution."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"G(n) needs n >= 2, got {self.n}")

    def expand(self) -> Expr:
        return FreeQuotient(D(self.n), "iota", False)


NAMED = (X, W, D, G)

CP2 = Atom("CP2")
CP2BAR = Atom("CP2bar")
S2XS2 = Atom("S2xS2")
K3 = Atom("K3")
Z0 = Atom("Z0")
Z1 = Atom("Z1")


def connsum(*parts: Expr) -> Expr:
    """Connected sum that flattens nested sums and drops empty multiples."""
    flat: list[Expr] = []
    for p in parts:
        if isinstance(p, ConnSum):
            flat.extend(p.summands)
        elif isinstance(p, Multiple) and p.count == 0:
            continue
        else:
            flat.append(p)
    if not flat:
        return Multiple(0, CP2)
    if len(flat) == 1:
        return flat[0]
    return ConnSum(tuple(flat))


def copies(k: int, expr: Expr) -> Expr:
    return Multiple(k, expr)


# ---------------------------------------------------------------------------
# invariants

_S4 = InvariantRecord.build(2, 0, TRIVIAL, True)


def _sum(a: InvariantRecord, b: InvariantRecord) -> InvariantRecord:
    if a.pi1 == Z2 and b.pi1 == Z2:
        raise UnsupportedError("connected sum of two Z/2 manifolds has fundamental group Z/2 * Z/2")
    pi1 = Z2 if Z2 in (a.pi1, b.pi1) else TRIVIAL
    cover_spin = a.cover_spin and b.cover_spin if pi1 == Z2 else None
    return InvariantRecord.build(
        a.euler + b.euler - 2, a.signature + b.signature, pi1, a.spin and b.spin, cover_spin
    )


def invariants(expr: Expr) -> InvariantRecord:
    match expr:
        case Atom(name):
            e, s, pi1, spin, cover_spin = ATOMS[name]
            return InvariantRecord.build(e, s, pi1, spin, cover_spin if pi1 == Z2 else None)
        case Elliptic(n):
            return InvariantRecord.build(12 * n, -8 * n, TRIVIAL, n % 2 == 0)
        case Multiple(count, inner):
            if count == 0:
                return _S4
            rec = invariants(inner)
            out = rec
            for _ in range(count - 1):
                out = _sum(out, rec)
            return out
        case ConnSum(summands):
            recs = [invariants(s) for s in summands]
            out = recs[0]
            for r in recs[1:]:
                out = _sum(out, r)
            return out
        case Blowup(inner, k):
            r = invariants(inner)
            return InvariantRecord.build(
                r.euler + k, r.signature - k, r.pi1, False, False if r.pi1 == Z2 else None
            )
        case FiberSumE(parts):
            total = sum(parts)
            # e(T^2) = 0, so Euler characteristic and signature are additive
            e = sum(12 * p for p in parts)
            s = sum(-8 * p for p in parts)
            rec = invariants(Elliptic(total))
            assert (rec.euler, rec.signature) == (e, s)
            return rec
        case KnotSurgery(inner, _knot, _count):
            return invariants(inner)
        case RationalBlowdown():
            return _blowdown_invariants(expr)
        case BranchedDoubleCover(base_e, base_s, branch, spin):
            sq = sum(b[1] for b in branch)
            if sq % 2:
                raise StructuralError("branch locus must be an even class")
            e = 2 * base_e - sum(b[0] for b in branch)
            s = 2 * base_s - sq // 2
            return InvariantRecord.build(e, s, TRIVIAL, spin)
        case FreeQuotient(inner, involution, quotient_spin):
            if involution not in INVOLUTIONS:
                raise StructuralError(f"involution {involution!r} is not one of {sorted(INVOLUTIONS)}")
            r = invariants(inner)
            if r.pi1 != TRIVIAL:
                raise UnsupportedError("free quotients are taken of simply connected manifolds only")
            if r.euler % 2 or r.signature % 2:
                raise ParityError(f"cannot halve (euler, signature) = ({r.euler}, {r.signature})")
            if quotient_spin and not r.spin:
                raise ValidationError("quotient of a non-spin manifold cannot be spin")
            return InvariantRecord.build(r.euler // 2, r.signature // 2, Z2, quotient_spin, r.spin)
        case Cover(inner):
            return invariants(universal_cover(inner))
        case X() | W() | D() | G():
            return invariants(expr.expand())
    raise TypeError(f"not a manifold expression: {expr!r}")


def _blowdown_invariants(expr: RationalBlowdown) -> InvariantRecord:
    r = invariants(expr.expr)
    if r.pi1 != TRIVIAL:
        raise UnsupportedError("rational blow-down is modeled on simply connected manifolds only")
    for chain in expr.chains:
        if rational_ball_parameters(chain) is None:
            raise StructuralError(f"chain {chain} does not bound a rational homology ball")
    length = expr.total_length
    if length > r.b2minus:
        raise StructuralError(f"chains of total length {length} do not fit in b2- = {r.b2minus}")
    if not expr.has_transverse_sphere:
        raise UnsupportedError("without a transverse sphere the fundamental group is not controlled")
    return InvariantRecord.build(r.euler - length, r.signature + length, TRIVIAL, expr.result_spin)


# ---------------------------------------------------------------------------
# covers, homeomorphism, rewrites


def universal_cover(expr: Expr) -> Expr:
    """Strip the Z/2 quotient and double every summand attached after it."""
    if invariants(expr).pi1 == TRIVIAL:
        raise NoCoverError(f"{render(expr)} is simply connected")
    return _cover(expr)


def _double(expr: Expr) -> Expr:
    if isinstance(expr, Multiple):
        return Multiple(2 * expr.count, expr.expr)
    return Multiple(2, expr)


def _cover(expr: Expr) -> Expr:
    match expr:
        case Atom("Z0") | Atom("Z1"):
            return S2XS2
        case FreeQuotient(inner, _, _):
            return inner
        case W(m, n):
            return X(m, n)
        case G(n):
            return D(n)
        case Multiple(1, inner):
            return _cover(inner)
        case Blowup(inner, k):
            return Blowup(_cover(inner), 2 * k)
        case ConnSum(summands):
            z2 = [i for i, s in enumerate(summands) if invariants(s).pi1 == Z2]
            if len(z2) != 1:
                raise UnsupportedError("need exactly one Z/2 summand")
            return ConnSum(tuple(
                _cover(s) if i == z2[0] else _double(s) for i, s in enumerate(summands)
            ))
    raise UnsupportedError(f"no cover rule for {render(expr)}")


def homeomorphic(a: Expr, b: Expr) -> tuple[bool, str]:
    ra, rb = invariants(a), invariants(b)
    if ra.pi1 != rb.pi1:
        return False, f"fundamental group differs ({ra.pi1} vs {rb.pi1})"
    if ra.pi1 == Z2:
        if ra.w2type != rb.w2type:
            return False, f"w2-type differs ({ra.w2type.value} vs {rb.w2type.value})"
    elif ra.spin != rb.spin:
        parity = {True: "even", False: "odd"}
        return False, f"parity differs ({parity[ra.spin]} vs {parity[rb.spin]})"
    if ra.signature != rb.signature:
        return False, f"signature differs ({ra.signature} vs {rb.signature})"
    if ra.euler != rb.euler:
        return False, f"euler characteristic differs ({ra.euler} vs {rb.euler})"
    return True, "all invariants match"


def _is_cp2bar(expr: Expr) -> bool:
    return expr == CP2BAR or (isinstance(expr, Multiple) and expr.count >= 1 and expr.expr == CP2BAR)


def z0z1_rewrite(expr: Expr, to: str = "Z0") -> Expr:
    """Swap Z1 <-> Z0 in a sum containing a CP2bar; Z0 # CP2bar = Z1 # CP2bar."""
    if to not in ("Z0", "Z1"):
        raise DomainError("rewrite target must be Z0 or Z1")
    source = Z1 if to == "Z0" else Z0
    if not isinstance(expr, ConnSum):
        raise RewriteNotApplicable(f"{render(expr)} has no CP2bar summand")
    summands = list(expr.summands)
    if source not in summands:
        raise RewriteNotApplicable(f"{render(expr)} has no {source.name} summand")
    if not any(_is_cp2bar(s) for s in summands):
        raise RewriteNotApplicable(f"{render(expr)} has no CP2bar summand")
    summands[summands.index(source)] = Atom(to)
    out = ConnSum(tuple(summands))
    if invariants(out) != invariants(expr):
        raise ValidationError("rewrite changed invariants")
    return out


# ---------------------------------------------------------------------------
# the constructions on E(2n+1) = E(n) #_f E(1) #_f E(n)


def final_chain(n: int) -> tuple[int, ...]:
    """(-2n-9, -2, ..., -2) with 2n+5 entries of -2."""
    return (-(2 * n + 9),) + (-2,) * (2 * n + 5)


def odd_surgered(n: int, m: int) -> Expr:
    """E(2n+1) as a triple fiber sum, knot-surgered twice with K_m."""
    if n < 1:
        raise DomainError("n must be positive")
    return KnotSurgery(FiberSumE((n, 1, n)), twist_knot(m), 2)


def odd_quotient(n: int, m: int) -> Expr:
    """The knot-surgered E(2n+1) divided by iota."""
    return FreeQuotient(odd_surgered(n, m), "iota", False)


def final_quotient(n: int, m: int) -> Expr:
    """Blow up the four double points, blow down both chains, divide by iota."""
    chain = final_chain(n)
    blown = Blowup(odd_surgered(n, m), 4)
    return FreeQuotient(RationalBlowdown(blown, (chain, chain), True, False), "iota", False)


def elliptic_branch_data(n: int) -> tuple[tuple[int, int], ...]:
    """Branch curve for E(n) over S2xS2 # 8n CP2bar: proper transforms of
    four vertical spheres (square -2n) and 2n horizontal ones (square -4)."""
    return ((2, -2 * n),) * 4 + ((2, -4),) * (2 * n)


def elliptic_as_branched_cover(n: int) -> BranchedDoubleCover:
    return BranchedDoubleCover(4 + 8 * n, -8 * n, elliptic_branch_data(n), spin=(n % 2 == 0))


# ---------------------------------------------------------------------------
# rendering


def render(expr: Expr) -> str:
    """Text form; grammar nodes render in the parser's syntax."""
    match expr:
        case Atom(name):
            return name
        case Elliptic(n):
            return f"E({n})"
        case Multiple(count, inner):
            return f"{count} {render(inner)}"
        case ConnSum(summands):
            return " # ".join(render(s) for s in summands)
        case X(m, n):
            return f"X({m},{n})"
        case W(m, n):
            return f"W({m},{n})"
        case D(n):
            return f"D({n})"
        case G(n):
            return f"G({n})"
        case Cover(inner):
            return f"cover({render(inner)})"
        case Blowup(inner, k):
            return f"Blowup({render(inner)}, {k})"
        case FiberSumE(parts):
            return "FiberSumE(" + ", ".join(map(str, parts)) + ")"
        case KnotSurgery(inner, knot, count):
            return f"KnotSurgery({render(inner)}, {knot.label}, {count})"
        case RationalBlowdown(inner, chains, _, _):
            return f"RationalBlowdown({render(inner)}, {[list(c) for c in chains]})"
        case BranchedDoubleCover(e, s, branch, _):
            return f"BranchedDoubleCover(e={e}, sigma={s}, branch={[list(b) for b in branch]})"
        case FreeQuotient(inner, inv, _):
            return f"FreeQuotient({render(inner)}, {inv})"
    raise TypeError(f"not a manifold expression: {expr!r}")


def walk(expr: Expr) -> Sequence[Expr]:
    """All nodes of the tree in preorder (named constructions are leaves)."""
    out = [expr]
    match expr:
        case Multiple(_, inner) | Blowup(inner, _) | KnotSurgery(inner, _, _) | Cover(inner):
            out.extend(walk(inner))
        case RationalBlowdown() | FreeQuotient():
            out.extend(walk(expr.expr))
        case ConnSum(summands):
            for s in summands:
                out.extend(walk(s))
    return out
