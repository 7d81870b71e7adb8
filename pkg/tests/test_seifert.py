"""Seifert matrix invariants: signature, Alexander, Arf, Levine-Tristram, bounds."""

import random
from fractions import Fraction

import pytest
from conftest import float_signature, make_invalid_seifert, make_valid_seifert

from slicegate.bounds import Interval
from slicegate.laurent import InvalidAlexanderError, LaurentPoly, evaluate_int
from slicegate.seifert import (ArfBudgetError, NotASeifertMatrixError, SeifertMatrix,
                               alexander, arf, arf_murasugi, determinant,
                               genus_bounds_from_matrix, levine_tristram, signature)

V_TREFOIL = SeifertMatrix([[-1, 1], [0, -1]])
V_FIG8 = SeifertMatrix([[1, 1], [0, -1]])
UNKNOT = SeifertMatrix([])


def test_validation_rejects():
    with pytest.raises(NotASeifertMatrixError):
        SeifertMatrix([[1, 0], [0, 1]])  # symmetric: V - V^T = 0
    with pytest.raises(NotASeifertMatrixError):
        SeifertMatrix([[0]])  # odd size
    with pytest.raises(NotASeifertMatrixError):
        SeifertMatrix([[0, 1], [0, 0], [0, 0]])  # not square
    with pytest.raises(NotASeifertMatrixError):
        SeifertMatrix([[0, 2], [0, 0]])  # det(V - V^T) = 4


def test_validation_random_matrices():
    rng = random.Random(42)
    for _ in range(50):
        n = rng.choice([2, 4])
        SeifertMatrix(make_valid_seifert(rng, n))
        with pytest.raises(NotASeifertMatrixError):
            SeifertMatrix(make_invalid_seifert(rng, n))


def test_signature_examples():
    assert signature(V_TREFOIL) == -2
    assert signature(V_FIG8) == 0
    assert signature(UNKNOT) == 0


def test_signature_even_and_bounded():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.choice([2, 4, 6])
        v = SeifertMatrix(make_valid_seifert(rng, n))
        s = signature(v)
        assert s % 2 == 0
        assert abs(s) <= n


def test_signature_matches_float_oracle():
    rng = random.Random(123)
    for _ in range(150):
        n = rng.choice([2, 4, 6])
        entries = make_valid_seifert(rng, n)
        assert signature(SeifertMatrix(entries)) == float_signature(entries)


def test_signature_hyperbolic_branch():
    # zero diagonal forces the 2x2 hyperbolic split; signature must be 0
    assert signature(SeifertMatrix([[0, 1], [0, 0]])) == 0
    v = SeifertMatrix([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    assert signature(v) == 0


def test_congruence_reduction_against_numpy_on_arbitrary_symmetric_input():
    # the internal reducer handles any symmetric matrix, including singular
    # ones and zero diagonals; check it against eigenvalue counting
    import numpy as np
    from fractions import Fraction
    from slicegate.seifert import _signature_sym

    rng = random.Random(2718)
    for _ in range(300):
        n = rng.randint(1, 6)
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                x = rng.randint(-4, 4)
                if rng.random() < 0.3:
                    x = 0
                a[i][j] = a[j][i] = x
        exact = _signature_sym([[Fraction(x) for x in row] for row in a])
        eigs = np.linalg.eigvalsh(np.array(a, dtype=float))
        approx = int((eigs > 1e-9).sum()) - int((eigs < -1e-9).sum())
        assert exact == approx, a


def test_signature_congruence_invariance():
    from conftest import random_unimodular

    rng = random.Random(77)
    base = [SeifertMatrix(make_valid_seifert(rng, n)) for n in (2, 4, 4, 6)]
    for _ in range(100):
        v = rng.choice(base)
        n = v.n
        p = random_unimodular(rng, n, ops=rng.randint(1, 4))
        rows = v.entries
        pv = [[sum(p[k][i] * rows[k][l] for k in range(n)) for l in range(n)]
              for i in range(n)]
        pvp = [[sum(pv[i][k] * p[k][j] for k in range(n)) for j in range(n)]
               for i in range(n)]
        w = SeifertMatrix(pvp)
        assert signature(w) == signature(v)
        assert arf(w) == arf(v)


def test_alexander_examples():
    assert alexander(V_FIG8) == LaurentPoly({1: -1, 0: 3, -1: -1})
    assert alexander(UNKNOT) == LaurentPoly.one()
    for b in (-3, 0, 1, 4):
        vb = SeifertMatrix([[-1, 1], [0, b]])
        assert alexander(vb) == LaurentPoly({1: -b, 0: 2 * b + 1, -1: -b})


def test_alexander_2x2_expansion_oracle():
    # independent oracle: cofactor expansion of V - tV^T in Laurent arithmetic
    t = LaurentPoly({1: 1})
    for v in (V_TREFOIL, V_FIG8, SeifertMatrix([[-1, 1], [0, 3]])):
        (a, b), (c, d) = v.entries
        m00 = LaurentPoly({0: a}) - t * a
        m01 = LaurentPoly({0: b}) - t * c
        m10 = LaurentPoly({0: c}) - t * b
        m11 = LaurentPoly({0: d}) - t * d
        det_poly = m00 * m11 - m01 * m10
        computed = alexander(v)
        # same polynomial up to the centering unit: compare symmetric forms
        centered = LaurentPoly({e - 1: c_ for e, c_ in det_poly.coeffs.items()})
        assert computed in (centered, -centered)


def test_alexander_symmetry_and_unimodularity():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.choice([2, 4])
        v = SeifertMatrix(make_valid_seifert(rng, n))
        delta = alexander(v)
        assert delta.involute() == delta
        assert evaluate_int(delta, 1) == 1


def test_determinant():
    assert determinant(V_FIG8) == 5
    assert determinant(V_TREFOIL) == 3
    assert determinant(UNKNOT) == 1


def test_determinant_equals_alexander_at_minus_one():
    rng = random.Random(8)
    for _ in range(40):
        v = SeifertMatrix(make_valid_seifert(rng, rng.choice([2, 4])))
        assert determinant(v) == abs(int(evaluate_int(alexander(v), -1)))


def test_arf_examples():
    assert arf(V_FIG8) == 1
    assert arf(UNKNOT) == 0
    for b in range(-4, 5):
        assert arf(SeifertMatrix([[-1, 1], [0, b]])) == b % 2


def test_arf_budget():
    n = 26
    entries = [[0] * n for _ in range(n)]
    for k in range(0, n, 2):
        entries[k][k + 1] = 1
    with pytest.raises(ArfBudgetError):
        arf(SeifertMatrix(entries))


def test_arf_matches_murasugi_shortcut():
    rng = random.Random(4)
    for _ in range(60):
        n = rng.choice([2, 4, 6, 8, 10])
        v = SeifertMatrix(make_valid_seifert(rng, n))
        assert arf(v) == arf_murasugi(alexander(v))


def test_arf_murasugi_examples():
    assert arf_murasugi(LaurentPoly({1: -1, 0: 3, -1: -1})) == 1  # Delta(-1) = 5
    assert arf_murasugi(LaurentPoly.one()) == 0
    assert arf_murasugi(LaurentPoly({1: -3, 0: 7, -1: -3})) == 1  # Delta(-1) = 13
    with pytest.raises(InvalidAlexanderError):
        arf_murasugi(LaurentPoly({0: 2}))


def test_levine_tristram_at_minus_one_is_signature():
    rng = random.Random(14)
    for _ in range(25):
        v = SeifertMatrix(make_valid_seifert(rng, rng.choice([2, 4])))
        value = levine_tristram(v, Fraction(1, 2))
        if value is not None:  # omega = -1 singular iff determinant vanishes: never
            assert value == signature(v)


def test_levine_tristram_examples():
    # Delta(3_1) = t - 1 + t^-1 vanishes exactly at the primitive 6th roots,
    # so 1/6 is singular while 1/3 is regular with the full trefoil signature
    assert levine_tristram(V_TREFOIL, "1/6") is None
    assert levine_tristram(V_TREFOIL, "1/3") == -2
    assert levine_tristram(V_FIG8, "1/4") == 0
    assert levine_tristram(UNKNOT, "1/3") == 0


def test_levine_tristram_jump_at_the_alexander_root():
    # the trefoil signature function is 0 before the root at angle 1/6 and
    # -2 after it, all the way to -1
    assert levine_tristram(V_TREFOIL, "1/8") == 0
    assert levine_tristram(V_TREFOIL, "1/12") == 0
    assert levine_tristram(V_TREFOIL, "2/5") == -2
    assert levine_tristram(V_TREFOIL, "1/2") == -2


def test_levine_tristram_rejects_omega_one():
    with pytest.raises(ValueError):
        levine_tristram(V_FIG8, Fraction(0))
    with pytest.raises(ValueError):
        levine_tristram(V_FIG8, "2/2")


def test_genus_bounds_from_matrix():
    gb = genus_bounds_from_matrix(V_TREFOIL)
    assert gb.g4 == Interval(1, 1)
    assert gb.gamma4 == Interval(1, 3)
    assert genus_bounds_from_matrix(UNKNOT).g4 == Interval(0, 0)
    assert genus_bounds_from_matrix(V_FIG8).g4 == Interval(0, 1)
