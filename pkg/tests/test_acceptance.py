"""Acceptance criteria, one test each; all comparisons are exact integers.

The terminal summary (see conftest.py) prints one PASS/FAIL line per
criterion, labelled by the first line of each docstring.
"""

import random

from fourfold.intlat import (
    check_wall_witness,
    descended_divisibility,
    dn_configuration,
    dn_wall_class,
    pairing,
)
from fourfold.knotpoly import is_symmetric, twist_knot
from fourfold.mfdcalc import (
    CP2,
    CP2BAR,
    K3,
    Z0,
    Z1,
    ConnSum,
    D,
    Elliptic,
    Multiple,
    W,
    W2Type,
    connsum,
    elliptic_as_branched_cover,
    final_quotient,
    homeomorphic,
    invariants,
    odd_quotient,
)
from fourfold.parser import parse_expr, pretty_print
from fourfold.swcalc import (
    blowup_value_set,
    e1_double_twist_values,
    families_distinct,
    knot_surgery_series,
    not_knot_surgery_obstruction,
    obstruction_residues,
)

from oracles import brute_force_divisibility, random_grammar_expr, random_manifold


def es(expr):
    r = invariants(expr)
    return r.euler, r.signature


def test_criterion_1_elliptic_invariants():
    """1 E(n): atom table and branched double cover give (12n, -8n), n = 1..6"""
    for n in range(1, 7):
        assert es(Elliptic(n)) == (12 * n, -8 * n)
        assert es(elliptic_as_branched_cover(n)) == (12 * n, -8 * n)


def test_criterion_2_quotient_arithmetic():
    """2 W(m,n) = (6n, -4n), Type I / III / II by n mod 4, n = 1..8"""
    for n in range(1, 9):
        expected = W2Type.I if n % 2 else (W2Type.III if n % 4 == 2 else W2Type.II)
        for m in range(1, 6):
            r = invariants(W(m, n))
            assert (r.euler, r.signature, r.w2type) == (6 * n, -4 * n, expected)


def test_criterion_3_homeomorphism_certificates():
    """3 homeomorphisms: W(m,1)#(p-4)CP2bar, W(m,4), D(n); Z0 vs Z1"""
    for p in range(4, 11):
        for m in range(1, 6):
            ok, reason = homeomorphic(connsum(W(m, 1), Multiple(p - 4, CP2BAR)), connsum(Z0, Multiple(p, CP2BAR)))
            assert ok, reason
    for m in range(1, 6):
        assert homeomorphic(W(m, 4), ConnSum((Z0, K3)))[0]
    for n in range(2, 11):
        assert homeomorphic(D(n), Elliptic(1))[0]
    ok, reason = homeomorphic(Z0, Z1)
    assert not ok and reason == "w2-type differs (II vs III)"


def test_criterion_4_dn_lattice_suite():
    """4 D_n lattice: chains, wall class, divisibility 2n-3 (brute force n <= 5)"""
    for n in range(2, 11):
        data = dn_configuration(n)
        squares = [-n, -5] + [-2] * (n - 2)
        for cfg in (data.config1, data.config2):
            assert [c.square() for c in cfg.classes] == squares
            assert cfg.problems() == []
        combined = data.combined()
        assert combined.is_negative_definite()
        x, h = dn_wall_class(n), data.lattice.h
        assert (x.square(), pairing(x, data.K), pairing(x, h)) == (4 * n - 5, 3 - 2 * n, 3 * n - 2)
        assert check_wall_witness(x, data.K, combined, h)
        div = descended_divisibility(data.K, combined)
        assert div == 2 * n - 3
        if n <= 5:
            assert brute_force_divisibility(n, data.K, combined.classes)[0] == div


def test_criterion_5_sw_values():
    """5 SW: |SW(X(m,1))| = (m^2, 2m(2m-1)); chambers separate m <= 20; extremal data"""
    for m in range(1, 11):
        vals = {r.fiber_multiple: abs(r.value) for r in e1_double_twist_values(m)}
        assert (vals[3], vals[-3], vals[1], vals[-1]) == (m * m, m * m, 2 * m * (2 * m - 1), 2 * m * (2 * m - 1))
    for m in range(1, 21):
        assert set(blowup_value_set(2 * m * (2 * m - 1))) == {2 * m * (2 * m - 1) + d for d in (-1, 0, 1)}
        for mp in range(1, 21):
            assert families_distinct(m, mp) == (m != mp)
    for n in range(2, 7):
        for m in range(1, 11):
            k = twist_knot(m)
            s = knot_surgery_series(n, [k, k])
            assert (s.leading_coefficient, s.degree) == (m * m, 4 * 1 + n - 2)


def test_criterion_6_mod4_obstruction():
    """6 obstruction: 4d-1 and 4k-3 never agree mod 4 (d <= 200, k <= 50); residues (3, 1)"""
    for k in range(1, 51):
        assert not_knot_surgery_obstruction(k)
        assert obstruction_residues(k) == (3, 1)
        for d in range(1, 201):
            assert (4 * d - 1) % 4 != (4 * k - 3) % 4


def test_criterion_7_final_construction():
    """7 E(2n+1) quotients: (10n+2, -6n) ~ Z0#2nCP2#8nCP2bar; pre-blow-down (12n+6, -8n-4)"""
    for n in range(1, 9):
        z1 = connsum(Z1, Multiple(2 * n, CP2), Multiple(8 * n, CP2BAR))
        z0 = connsum(Z0, Multiple(2 * n, CP2), Multiple(8 * n, CP2BAR))
        for m in (1, 2, 3):
            q = final_quotient(n, m)
            assert es(q) == (10 * n + 2, -6 * n) == es(z1)
            assert homeomorphic(q, z0)[0]
            pre = odd_quotient(n, m)
            target = connsum(Z1, Multiple(2 * n, CP2), Multiple(10 * n + 4, CP2BAR))
            assert es(pre) == (12 * n + 6, -8 * n - 4) == es(target)
            assert homeomorphic(pre, target)[0]


def test_criterion_8_property_suites():
    """8 properties: pairing laws, b2 identities, equivalence laws, round trip, twist knots"""
    rng = random.Random(8)
    lat = dn_configuration(4).lattice
    for _ in range(1000):
        x, y, z = (lat.vector([rng.randint(-5, 5) for _ in range(lat.rank)]) for _ in range(3))
        assert pairing(x, y) == pairing(y, x)
        assert pairing(x + y, z) == pairing(x, z) + pairing(y, z)

    corpus = [random_manifold(random.Random(seed)) for seed in range(200)]
    recs = [invariants(e) for e in corpus]
    for r in recs:
        assert r.b2plus + r.b2minus == r.euler - 2 and r.b2plus - r.b2minus == r.signature
    rel = [[homeomorphic(a, b)[0] for b in corpus] for a in corpus]
    for i in range(len(corpus)):
        assert rel[i][i]
        for j in range(len(corpus)):
            assert rel[i][j] == rel[j][i]
            if rel[i][j]:
                assert rel[i] == rel[j]

    for _ in range(500):
        tree = random_grammar_expr(rng)
        assert parse_expr(pretty_print(tree)) == tree

    for m in range(1, 21):
        a = twist_knot(m).alexander
        assert a.evaluate(1) == 1 and is_symmetric(a)
