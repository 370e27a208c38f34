from fractions import Fraction

import pytest
import sympy as sp

from hyperjac.splitting import (
    S_class,
    alpha,
    induction_check,
    power_ratio,
    raw_splitting_product,
    restriction_kernel,
    specialize_check,
    splitting_class,
    sweep_cases,
    verify_kernel,
)
from hyperjac.tower import FULL_BASE, REDUCED_BASE, restrict_to_splitting

A1, A2, A2P, B1, C2 = FULL_BASE.gens()
CASES = sweep_cases()


def test_sweep_case_count():
    assert len(CASES) == 52
    assert all(i + j == e and 0 < j - i <= 8 for e, i, j in CASES)
    assert len(set(CASES)) == len(CASES)


def test_small_classes():
    assert splitting_class(0, -1, 1).value == A2P
    assert splitting_class(1, -1, 2).value == A2 - A1 * A2P + A2P * A2P
    assert splitting_class(3, 1, 2).value == FULL_BASE.const(1)
    assert splitting_class(-2, -2, 0).value == A1 + A2P


def test_alpha_by_hand():
    # (i*a1 - a2p)(j*a1 - a2p) + (i - j)^2 (a2 + i*j*c2) at (1, 3)
    want = (A1 - A2P) * (A1 * 3 - A2P) + (A2 + C2 * 3) * 4
    assert alpha(1, 3) == want


def test_raw_product_errors():
    with pytest.raises(ValueError):
        raw_splitting_product(3, 1, 1)
    with pytest.raises(ValueError):
        raw_splitting_product(2, 2, 0)


@pytest.mark.parametrize("e,i,j", CASES)
def test_kernel(e, i, j):
    assert verify_kernel(e, i, j)


@pytest.mark.parametrize("e,i,j", CASES)
def test_specialize(e, i, j):
    ok, c = specialize_check(e, i, j)
    assert ok and c != 0


@pytest.mark.parametrize("e,i,j", CASES)
def test_induction(e, i, j):
    assert induction_check(e, i, j)


@pytest.mark.parametrize("e,i,j", CASES)
def test_class_vanishes_on_more_balanced_strata(e, i, j):
    cls = splitting_class(e, i, j)
    for k in range(i + 1, e // 2 + 1):
        if 2 * k <= e:
            assert restrict_to_splitting(cls.value, k, e - k).is_zero


@pytest.mark.parametrize("e,i,j", CASES)
def test_class_codimension(e, i, j):
    cls = splitting_class(e, i, j)
    assert cls.value.is_homogeneous()
    assert cls.value.degree() == cls.codimension == j - i - 1


def test_kernel_against_sympy():
    # degree two restriction to (i, j) computed independently
    n1, n2, c2 = sp.symbols("n1 n2 c2")
    xs = sp.symbols("x0:5")
    for i, j in [(-1, 2), (0, 3), (-3, 1), (2, 6)]:
        a1, a2, a2p = n1 + n2, n1 * n2 - i * j * c2, i * n2 + j * n1
        combo = xs[0] * a1 ** 2 + xs[1] * a1 * a2p + xs[2] * a2p ** 2 + xs[3] * a2 + xs[4] * c2
        eqs = sp.Poly(sp.expand(combo), n1, n2, c2).coeffs()
        sol = sp.linsolve(eqs, *xs)
        (vec,) = sol
        free = sorted(set().union(*(v.free_symbols for v in vec)), key=str)
        assert len(free) == 1
        ker = restriction_kernel(({"a1": 2}, {"a1": 1, "a2p": 1}, {"a2p": 2}, {"a2": 1}, {"c2": 1}), i, j)
        assert len(ker) == 1
        want = [v.subs(free[0], 1) for v in vec]
        got = [ker[0].coefficient(m) for m in ((2, 0, 0, 0, 0), (1, 0, 1, 0, 0), (0, 0, 2, 0, 0), (0, 1, 0, 0, 0), (0, 0, 0, 0, 1))]
        ratio = Fraction(str(want[3])) / got[3]
        assert [Fraction(str(w)) for w in want] == [x * ratio for x in got]
        assert ker[0] == alpha(i, j) * (ker[0].leading_coefficient() / alpha(i, j).leading_coefficient())


def test_specialize_scalars():
    assert specialize_check(0, -1, 1) == (True, Fraction(-1, 2))
    assert specialize_check(1, -1, 2) == (True, Fraction(1, 4))
    with pytest.raises(ValueError):
        specialize_check(2, 1, 1)


def test_power_ratio():
    a1, a2p = REDUCED_BASE.gens()
    assert power_ratio((a1 - a2p) ** 3 * 5, a1 - a2p, 3) == 5
    assert power_ratio(a1 * a1, a1 - a2p, 2) is None
    assert power_ratio(REDUCED_BASE.const(0), a1, 1) is None


def test_S_class():
    assert S_class(2, 3).value == splitting_class(0, -2, 2).value
    assert S_class(2, 4).codimension == 4
    with pytest.raises(ValueError):
        S_class(1, 3)
