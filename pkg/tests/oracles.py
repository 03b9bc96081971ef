"""Independent reference computations used to cross-check the package.

Nothing here imports the package's linear algebra: the complement is
enumerated directly, by propagating the orthogonality equations.
"""

from __future__ import annotations

import itertools
import math
import random

from fourfold.knotpoly import twist_knot
from fourfold.mfdcalc import (
    Atom,
    Blowup,
    ConnSum,
    Cover,
    D,
    Elliptic,
    FiberSumE,
    FreeQuotient,
    G,
    KnotSurgery,
    Multiple,
    W,
    X,
)


def propagated_complement(rows, signs, order, box=1):
    """Integer vectors x with sum_j signs[j] * rows[i][j] * x[j] = 0 for all i.

    Variables in ``order`` are visited left to right; each equation is
    solved for its last variable in that order, every other variable ranges
    over [-box, box].  Yields only integral solutions.
    """
    pos = {v: k for k, v in enumerate(order)}
    eqs = []
    for row in rows:
        coeffs = {j: signs[j] * c for j, c in enumerate(row) if c}
        pivot = max(coeffs, key=pos.__getitem__)
        eqs.append((pos[pivot], pivot, coeffs))
    eqs.sort()
    solved = {pivot for _, pivot, _ in eqs}
    if len(solved) != len(eqs):
        raise ValueError("two equations share a pivot; choose another order")
    free = [v for v in order if v not in solved]
    for values in itertools.product(range(-box, box + 1), repeat=len(free)):
        x = [0] * len(signs)
        for v, val in zip(free, values):
            x[v] = val
        ok = True
        for _, pivot, coeffs in eqs:
            rest = sum(c * x[j] for j, c in coeffs.items() if j != pivot)
            q, r = divmod(-rest, coeffs[pivot])
            if r:
                ok = False
                break
            x[pivot] = q
        if ok:
            yield x


def dn_variable_order(n):
    """h, e3..e9, e12, e13, e14..e_{9+2n}, e2, e1, e10, e11 as coordinate indices."""
    return [0, *range(3, 10), 12, 13, *range(14, 10 + 2 * n), 2, 1, 10, 11]


def brute_force_divisibility(n, K, classes, box=1):
    """gcd of K.x over enumerated complement vectors, plus the vector count."""
    signs = [1] + [-1] * (9 + 2 * n)
    rows = [list(c.coeffs) for c in classes]
    g, count = 0, 0
    for x in propagated_complement(rows, signs, dn_variable_order(n), box):
        assert all(sum(s * a * b for s, a, b in zip(signs, row, x)) == 0 for row in rows)
        g = math.gcd(g, sum(s * a * b for s, a, b in zip(signs, K.coeffs, x)))
        count += 1
    return g, count


def brute_force_smith_diagonal(matrix):
    """Invariant factors via gcds of k x k minors (determinantal divisors)."""
    m, n = len(matrix), len(matrix[0]) if matrix else 0

    def det(a):
        if len(a) == 1:
            return a[0][0]
        return sum((-1) ** j * a[0][j] * det([row[:j] + row[j + 1:] for row in a[1:]]) for j in range(len(a)))

    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, det([[matrix[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


# ---------------------------------------------------------------------------
# random manifold expressions

SC_ATOMS = ("CP2", "CP2bar", "S2xS2", "K3")


def random_grammar_expr(rng: random.Random, depth: int = 2):
    """A tree in the image of the text parser (what pretty_print can emit)."""

    def atom(d):
        kind = rng.randrange(8 if d > 0 else 7)
        if kind < 2:
            return Atom(rng.choice(SC_ATOMS + ("Z0", "Z1")))
        if kind == 2:
            return Elliptic(rng.randint(1, 6))
        if kind == 3:
            return X(rng.randint(1, 6), rng.randint(1, 6))
        if kind == 4:
            return W(rng.randint(1, 6), rng.randint(1, 6))
        if kind == 5:
            return D(rng.randint(2, 6))
        if kind == 6:
            return G(rng.randint(2, 6))
        return Cover(expr(d - 1))

    def term(d):
        a = atom(d)
        return Multiple(rng.randint(0, 5), a) if rng.random() < 0.4 else a

    def expr(d):
        k = rng.choice((1, 1, 2, 3))
        terms = tuple(term(d) for _ in range(k))
        return terms[0] if k == 1 else ConnSum(terms)

    return expr(depth)


def random_manifold(rng: random.Random):
    """A well-formed expression with pi1 in {1, Z/2}; about half are Z/2."""
    sc_bases = [
        lambda: Elliptic(rng.randint(1, 6)),
        lambda: X(rng.randint(1, 5), rng.randint(1, 6)),
        lambda: D(rng.randint(2, 6)),
        lambda: FiberSumE(tuple(rng.randint(1, 3) for _ in range(rng.randint(2, 3)))),
        lambda: KnotSurgery(Elliptic(rng.randint(1, 4)), twist_knot(rng.randint(1, 4)), rng.randint(1, 3)),
        lambda: Atom(rng.choice(SC_ATOMS)),
    ]
    z2_bases = [
        lambda: W(rng.randint(1, 5), rng.randint(1, 8)),
        lambda: G(rng.randint(2, 6)),
        lambda: Atom(rng.choice(("Z0", "Z1"))),
        lambda: FreeQuotient(Elliptic(2 * rng.randint(1, 3)), "iota", False),
    ]
    if rng.random() < 0.5:
        base = rng.choice(z2_bases)()
    else:
        base = rng.choice(sc_bases)()
    parts = [base]
    for _ in range(rng.randint(0, 2)):
        parts.append(Multiple(rng.randint(1, 6), Atom(rng.choice(SC_ATOMS))))
    expr = parts[0] if len(parts) == 1 else ConnSum(tuple(parts))
    if rng.random() < 0.25:
        expr = Blowup(expr, rng.randint(1, 3))
    return expr
