"""Integer lattice engine for second homology of blown-up rational surfaces.

Classes live in a diagonal unimodular lattice with basis ``h`` (square +1)
and ``e1 .. ek`` (square -1).  Everything here is exact: coefficients are
Python integers, so intermediate growth in Smith normal form reductions can
never overflow.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import DimensionError, DomainError, ValidationError

Matrix = list[list[int]]


@dataclass(frozen=True)
class DiagonalLattice:
    """Lattice with Gram form diag(+1, ..., +1, -1, ..., -1)."""

    positive_count: int
    negative_count: int

    def __post_init__(self):
        if self.positive_count < 0 or self.negative_count < 0:
            raise DomainError("basis counts must be nonnegative")
        if self.rank < 1:
            raise DomainError("lattice rank must be at least 1")

    @property
    def rank(self) -> int:
        return self.positive_count + self.negative_count

    @property
    def signs(self) -> tuple[int, ...]:
        return (1,) * self.positive_count + (-1,) * self.negative_count

    def vector(self, coeffs: Iterable[int]) -> HomClass:
        return HomClass(tuple(int(c) for c in coeffs), self)

    def zero(self) -> HomClass:
        return HomClass((0,) * self.rank, self)

    def basis(self) -> list[HomClass]:
        return [self.unit(i) for i in range(self.rank)]

    def unit(self, index: int) -> HomClass:
        coeffs = [0] * self.rank
        coeffs[index] = 1
        return HomClass(tuple(coeffs), self)

    @property
    def h(self) -> HomClass:
        if self.positive_count < 1:
            raise DomainError("lattice has no positive basis vector")
        return self.unit(0)

    def e(self, i: int) -> HomClass:
        """The i-th exceptional class, numbered from 1."""
        if not 1 <= i <= self.negative_count:
            raise DomainError(f"e{i} does not exist in a lattice with {self.negative_count} negative generators")
        return self.unit(self.positive_count + i - 1)

    def e_sum(self, indices: Iterable[int]) -> HomClass:
        total = self.zero()
        for i in indices:
            total = total + self.e(i)
        return total

    def basis_names(self) -> list[str]:
        if self.positive_count == 1:
            pos = ["h"]
        else:
            pos = [f"h{i}" for i in range(1, self.positive_count + 1)]
        return pos + [f"e{i}" for i in range(1, self.negative_count + 1)]


@dataclass(frozen=True)
class HomClass:
    """Integer coefficient vector in a fixed diagonal lattice basis."""

    coeffs: tuple[int, ...]
    lattice: DiagonalLattice

    def __post_init__(self):
        if len(self.coeffs) != self.lattice.rank:
            raise DimensionError(
                f"class has {len(self.coeffs)} coefficients, lattice rank is {self.lattice.rank}"
            )

    def _check(self, other: HomClass) -> None:
        if not isinstance(other, HomClass) or other.lattice != self.lattice:
            raise DimensionError("classes live in different lattices")

    def __add__(self, other: HomClass) -> HomClass:
        self._check(other)
        return HomClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.lattice)

    def __sub__(self, other: HomClass) -> HomClass:
        self._check(other)
        return HomClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.lattice)

    def __neg__(self) -> HomClass:
        return HomClass(tuple(-a for a in self.coeffs), self.lattice)

    def __mul__(self, k: int) -> HomClass:
        if not isinstance(k, int):
            return NotImplemented
        return HomClass(tuple(k * a for a in self.coeffs), self.lattice)

    __rmul__ = __mul__

    def dot(self, other: HomClass) -> int:
        return pairing(self, other)

    def square(self) -> int:
        return pairing(self, self)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def content(self) -> int:
        """gcd of the coefficients; the class is primitive iff this is 1."""
        return math.gcd(*self.coeffs)

    def __str__(self) -> str:
        parts = []
        for name, c in zip(self.lattice.basis_names(), self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            parts.append(f"{sign} {'' if mag == 1 else mag}{name}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def pairing(x: HomClass, y: HomClass) -> int:
    x._check(y)
    return sum(s * a * b for s, a, b in zip(x.lattice.signs, x.coeffs, y.coeffs))


def is_characteristic(x: HomClass) -> bool:
    # x.y = y.y mod 2 on a diagonal basis reduces to: every coefficient odd
    return all(c % 2 for c in x.coeffs)


# ---------------------------------------------------------------------------
# Smith normal form and integer kernels


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(D, U, V)`` with ``U @ A @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative entries
    and each diagonal entry divides the next.  The pivot at every stage is the
    entry of smallest nonzero absolute value.  ``ncols`` is only needed when
    ``matrix`` has no rows.
    """
    A = [[int(v) for v in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        for M in (A, U):
            rd, rs = M[dst], M[src]
            for k in range(len(rd)):
                rd[k] += q * rs[k]

    def add_col(dst, src, q):
        for M in (A, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            # pivot row and column are clear; enforce divisibility of the rest
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
    return A, U, V


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis of the saturated integer kernel ``{x in Z^n : A x = 0}``."""
    D, _, V = smith_normal_form(matrix, ncols)
    n = len(V)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    return [[V[row][col] for row in range(n)] for col in range(r, n)]


def lll_reduce(
    vectors: Sequence[Sequence[int]],
    inner: Callable[[Sequence, Sequence], int | Fraction] | None = None,
    delta: Fraction = Fraction(3, 4),
) -> list[list[int]]:
    """LLL reduction of linearly independent integer vectors.

    ``inner`` is a positive definite bilinear form on the span (Euclidean
    dot product by default).  Gram-Schmidt is carried out in exact rational
    arithmetic; the result spans the same lattice.
    """
    if inner is None:
        def inner(u, v):
            return sum(a * b for a, b in zip(u, v))

    B = [list(v) for v in vectors]
    count = len(B)

    def gram_schmidt():
        star, norms = [], []
        mu = [[Fraction(0)] * count for _ in range(count)]
        for i, b in enumerate(B):
            v = [Fraction(c) for c in b]
            for j in range(i):
                mu[i][j] = Fraction(inner(b, star[j])) / norms[j]
                v = [a - mu[i][j] * c for a, c in zip(v, star[j])]
            star.append(v)
            norms.append(Fraction(inner(v, v)))
        return mu, norms

    mu, norms = gram_schmidt()
    k = 1
    while k < count:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                B[k] = [a - q * b for a, b in zip(B[k], B[j])]
                mu, norms = gram_schmidt()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            mu, norms = gram_schmidt()
            k = max(k - 1, 1)
    return B


def solve_rational(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction] | None:
    """Solve a square system over Q; None if singular."""
    n = len(matrix)
    M = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col] / M[col][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# sphere configurations


@dataclass(frozen=True)
class SphereConfig:
    """An ordered list of sphere classes, optionally forming a linear chain.

    ``chain=True`` requires consecutive classes to pair to 1 and all other
    distinct pairs to 0.
    """

    lattice: DiagonalLattice
    classes: tuple[HomClass, ...] = ()
    expected_squares: tuple[int, ...] | None = None
    chain: bool = True

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if self.expected_squares is not None:
            object.__setattr__(self, "expected_squares", tuple(self.expected_squares))

    def __len__(self):
        return len(self.classes)

    def gram(self) -> Matrix:
        return [[pairing(a, b) for b in self.classes] for a in self.classes]

    def leading_minors(self) -> list[int]:
        G = self.gram()
        return [determinant([row[:k] for row in G[:k]]) for k in range(1, len(G) + 1)]

    def is_negative_definite(self) -> bool:
        return all((-1) ** k * d > 0 for k, d in enumerate(self.leading_minors(), start=1))

    def problems(self) -> list[str]:
        out = []
        for i, c in enumerate(self.classes):
            if c.lattice != self.lattice:
                out.append(f"class {i} lives in a different lattice")
        if out:
            return out
        if self.expected_squares is not None:
            if len(self.expected_squares) != len(self.classes):
                out.append("expected_squares has the wrong length")
            else:
                for i, (c, s) in enumerate(zip(self.classes, self.expected_squares)):
                    if c.square() != s:
                        out.append(f"class {i} has square {c.square()}, expected {s}")
        if self.chain:
            G = self.gram()
            for i, j in itertools.combinations(range(len(G)), 2):
                want = 1 if j == i + 1 else 0
                if G[i][j] != want:
                    out.append(f"classes {i},{j} pair to {G[i][j]}, chain needs {want}")
        if self.classes and not self.is_negative_definite():
            out.append("Gram matrix is not negative definite")
        return out

    def validate(self) -> SphereConfig:
        problems = self.problems()
        if problems:
            raise ValidationError("; ".join(problems))
        return self

    def pairing_matrix(self) -> Matrix:
        """Rows are the functionals x -> c.x, one per class."""
        signs = self.lattice.signs
        return [[s * a for s, a in zip(signs, c.coeffs)] for c in self.classes]


def combine(*configs: SphereConfig) -> SphereConfig:
    """Disjoint union of mutually orthogonal configurations (no chain structure)."""
    if not configs:
        raise DomainError("nothing to combine")
    lattice = configs[0].lattice
    for a, b in itertools.combinations(configs, 2):
        for x in a.classes:
            for y in b.classes:
                if pairing(x, y) != 0:
                    raise ValidationError("configurations are not mutually orthogonal")
    classes = tuple(c for cfg in configs for c in cfg.classes)
    squares = None
    if all(cfg.expected_squares is not None for cfg in configs):
        squares = tuple(s for cfg in configs for s in cfg.expected_squares)
    return SphereConfig(lattice, classes, squares, chain=False)


def orth_complement(config: SphereConfig) -> list[HomClass]:
    """Integer basis of ``{x : x.c = 0 for every c in config}``.

    The basis comes from the unimodular column transform of a Smith normal
    form, so it spans the kernel over Z, not merely over Q.  It is then LLL
    reduced and each vector is signed so its first nonzero entry is positive.
    """
    lattice = config.lattice
    rows = config.pairing_matrix()
    basis = lll_reduce(integer_kernel(rows, ncols=lattice.rank))
    out = []
    for v in basis:
        lead = next(c for c in v if c)
        out.append(lattice.vector(v if lead > 0 else [-c for c in v]))
    return out


def descended_divisibility(K: HomClass, config: SphereConfig) -> int:
    """gcd of ``K.x`` over the orthogonal complement of ``config``.

    This is the divisibility, modulo torsion, of the class ``K`` descends to
    once the configuration is rationally blown down.  Returns 0 when ``K``
    pairs trivially with the whole complement.
    """
    config.validate()
    if not is_characteristic(K):
        raise ValidationError(f"{K} is not characteristic")
    return math.gcd(*(pairing(K, x) for x in orth_complement(config)))


# ---------------------------------------------------------------------------
# the D_n configurations in CP2 # (9+2n) CP2bar


class DnData(NamedTuple):
    config1: SphereConfig
    config2: SphereConfig
    K: HomClass
    F: HomClass

    @property
    def lattice(self) -> DiagonalLattice:
        return self.K.lattice

    def combined(self) -> SphereConfig:
        return combine(self.config1, self.config2)


def dn_configuration(n: int) -> DnData:
    """The two chains (-n, -5, -2, ..., -2) blown down to produce D_n.

    Basis indexing: e1, e2 are the two sections; e10 .. e_{9+2n} are the
    exceptional classes of the 2n extra blow-ups.
    """
    if n < 2:
        raise DomainError(f"D_n needs n >= 2, got {n}")
    lat = DiagonalLattice(1, 9 + 2 * n)
    h, e = lat.h, lat.e
    F = 3 * h - lat.e_sum(range(1, 10))
    K = 3 * h - lat.e_sum(range(1, 10 + 2 * n))
    squares = (-n, -5) + (-2,) * (n - 2)

    chain1 = [e(2) - lat.e_sum(2 * i for i in range(6, 5 + n)), F - 2 * e(11) - e(13)]
    chain1 += [e(i) - e(i + 2) for i in range(13, 8 + 2 * n, 2)]
    chain2 = [e(1) - lat.e_sum(2 * i + 1 for i in range(6, 5 + n)), F - 2 * e(10) - e(12)]
    chain2 += [e(i) - e(i + 2) for i in range(12, 7 + 2 * n, 2)]

    c1 = SphereConfig(lat, chain1, squares, chain=True).validate()
    c2 = SphereConfig(lat, chain2, squares, chain=True).validate()
    combine(c1, c2)
    return DnData(c1, c2, K, F)


def dn_wall_class(n: int) -> HomClass:
    """(3n-2)h - (n-1)(e1+..+e9) - (e10+..+e_{9+2n}): square 4n-5, pairs 3-2n with K."""
    if n < 2:
        raise DomainError(f"D_n needs n >= 2, got {n}")
    lat = DiagonalLattice(1, 9 + 2 * n)
    return (3 * n - 2) * lat.h - (n - 1) * lat.e_sum(range(1, 10)) - lat.e_sum(range(10, 10 + 2 * n))


# ---------------------------------------------------------------------------
# walls


def check_wall_witness(x: HomClass, K: HomClass, config: SphereConfig, h: HomClass) -> bool:
    """True iff ``x`` certifies a wall between the period classes ``h`` and ``x``.

    Conditions: ``x`` is orthogonal to every class of ``config``, has positive
    square, lies in the same component of the positive cone as ``h``
    (``x.h > 0``), and ``K`` pairs with ``x`` and ``h`` with opposite signs.
    """
    if any(pairing(x, c) != 0 for c in config.classes):
        return False
    if x.square() <= 0 or pairing(x, h) <= 0:
        return False
    return pairing(x, K) * pairing(h, K) < 0


def _timelike_reduced(basis: list[HomClass], h: HomClass) -> list[HomClass]:
    """Re-reduce a complement basis against the majorant of h's projection.

    For a hyperbolic complement with timelike projection w of h, the form
    2(x.w)(y.w) - (w.w)(x.y) is positive definite; reducing against it puts
    a short timelike vector into the basis, which is where witnesses live.
    """
    lat = h.lattice
    if lat.positive_count != 1 or not basis:
        return basis
    G = [[pairing(a, b) for b in basis] for a in basis]
    coeffs = solve_rational(G, [pairing(b, h) for b in basis])
    if coeffs is None:
        return basis
    den = math.lcm(*(c.denominator for c in coeffs))
    w = lat.zero()
    for c, b in zip(coeffs, basis):
        w = w + int(c * den) * b
    ww = w.square()
    if ww <= 0:
        return basis
    wv = [s * c for s, c in zip(lat.signs, w.coeffs)]

    def majorant(u, v):
        uw = sum(a * b for a, b in zip(u, wv))
        vw = sum(a * b for a, b in zip(v, wv))
        uv = sum(s * a * b for s, a, b in zip(lat.signs, u, v))
        return 2 * uw * vw - ww * uv

    return [lat.vector(v) for v in lll_reduce([b.coeffs for b in basis], inner=majorant)]


def wall_witness_search(
    K: HomClass, config: SphereConfig, bound: int, h: HomClass | None = None
) -> HomClass | None:
    """Exhaustive search for a wall witness in the orthogonal complement.

    Coefficients are taken with respect to a complement basis (the output of
    ``orth_complement`` re-reduced against a majorant adapted to ``h``) and
    bounded by ``bound`` in absolute value.  Shells of increasing max-norm
    are scanned so small witnesses come first.  The worst case visits
    ``(2*bound + 1) ** d`` vectors, ``d`` the complement rank, at a few
    microseconds each: d = 10 costs about 0.3 s per unit shell at bound 1 and
    tens of seconds once the bound-2 shell must be exhausted.
    """
    if bound < 1:
        raise DomainError("bound must be positive")
    h = K.lattice.h if h is None else h
    if K.lattice.positive_count == 1 and not K.is_zero() and K.square() >= 0:
        # K lies in the closed light cone, so for timelike x with x.h > 0 the
        # sign of x.K is the sign of h.K: no wall at any bound
        return None
    basis = _timelike_reduced(orth_complement(config), h)
    d = len(basis)
    if d == 0:
        return None
    # x = sum c_i b_i is orthogonal to config by construction; everything
    # else is read off the Gram matrix of the basis and two pairing vectors.
    G = [[pairing(a, b) for b in basis] for a in basis]
    kv = [pairing(b, K) for b in basis]
    hv = [pairing(b, h) for b in basis]
    hK = pairing(h, K)
    lat = K.lattice
    for r in range(1, bound + 1):
        for coords in itertools.product(range(-r, r + 1), repeat=d):
            if max(map(abs, coords)) != r:
                continue
            xh = sum(c * w for c, w in zip(coords, hv))
            if xh <= 0:
                continue
            xK = sum(c * w for c, w in zip(coords, kv))
            if xK * hK >= 0:
                continue
            sq = sum(ci * sum(cj * g for cj, g in zip(coords, row)) for ci, row in zip(coords, G) if ci)
            if sq <= 0:
                continue
            x = lat.zero()
            for c, b in zip(coords, basis):
                x = x + c * b
            assert check_wall_witness(x, K, config, h)
            return x
    return None


# ---------------------------------------------------------------------------
# chains that bound rational homology balls


def chain_fraction(squares: Sequence[int]) -> Fraction:
    """Continued fraction [-s1, -s2, ...] = a1 - 1/(a2 - 1/(...))."""
    if not squares:
        raise DomainError("empty chain")
    value = Fraction(-squares[-1])
    for s in reversed(squares[:-1]):
        if value == 0:
            raise DomainError("degenerate chain")
        value = Fraction(-s) - 1 / value
    return value


def rational_ball_parameters(squares: Sequence[int]) -> tuple[int, int] | None:
    """``(p, q)`` if the linear chain has fraction p^2/(pq-1) with gcd(p, q) = 1.

    Such a chain bounds a rational homology ball, so it can be rationally
    blown down.  Returns None otherwise.
    """
    if any(s > -2 for s in squares):
        return None
    frac = chain_fraction(squares)
    p = math.isqrt(frac.numerator)
    if p * p != frac.numerator or p < 2:
        return None
    if (frac.denominator + 1) % p:
        return None
    q = (frac.denominator + 1) // p
    if not 0 < q < p or math.gcd(p, q) != 1:
        return None
    return p, q
