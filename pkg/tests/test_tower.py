from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperjac.poly import Poly
from hyperjac.tower import (
    FULL_BASE,
    SPLITTING_BASE,
    SplittingType,
    make_tower,
    push_down,
    push_gamma,
    push_pi,
    reduce_base,
)

a1, a2, a2p, b1, c2, z, zeta = SYMS = sp.symbols("a1 a2 a2p b1 c2 z zeta")


def sympy_normal_form(expr, g, d):
    """Reduce modulo the tower relations with sympy; the two relations have
    coprime leading monomials zeta^2 and z^2, so they form a Groebner basis."""
    e = d - g - 1
    rels = [zeta ** 2 - (a1 + e * z) * zeta + (a2 + a2p * z), z ** 2 + c2]
    _, r = sp.reduced(sp.expand(expr), rels, zeta, z, a1, a2, a2p, b1, c2, order="lex")
    return sp.expand(r)


def element_to_sympy(x):
    out = 0
    for part, mono in zip(x.parts, (1, z, zeta, z * zeta)):
        for ex, c in part.terms.items():
            t = sp.Rational(c.numerator, c.denominator) * mono
            for s, k in zip((a1, a2, a2p, b1, c2), ex):
                t *= s ** k
            out += t
    return sp.expand(out)


words = st.lists(st.sampled_from(["z", "zeta", "a1", "a2", "a2p", "b1", "c2"]), min_size=0, max_size=6)


@settings(max_examples=60, deadline=None)
@given(words, st.integers(2, 6), st.integers(-3, 10))
def test_monomial_reduction_matches_sympy(word, g, d):
    T = make_tower(g, d, "full")
    x = T.one
    expr = sp.Integer(1)
    for w in word:
        x = x * T.symbol(w)
        expr *= sp.Symbol(w)
    assert element_to_sympy(x) == sympy_normal_form(expr, g, d)


@settings(max_examples=40, deadline=None)
@given(words, words, words, st.integers(2, 5), st.integers(-2, 9))
def test_product_associative(u, v, w, g, d):
    T = make_tower(g, d, "full")

    def build(word):
        x = T.one + T.z
        for s in word:
            x = x * T.symbol(s) + T.zeta
        return x

    x, y, q = build(u), build(v), build(w)
    assert (x * y) * q == x * (y * q)
    assert x * y == y * x
    assert x * (y + q) == x * y + x * q


def test_relations_in_normal_form():
    T = make_tower(2, 3, "full")
    assert T.z * T.z == T.lift(-FULL_BASE.var("c2"))
    expected = T.zeta.scale(FULL_BASE.var("a1")) + T.lift(-FULL_BASE.var("a2")) - T.z.scale(FULL_BASE.var("a2p"))
    assert T.zeta * T.zeta == expected  # e = 0 at (2, 3)


def test_reduce_raw_polynomial():
    T = make_tower(3, 7, "full")
    zz, ze = T.table.var("z"), T.table.var("zeta")
    assert T.reduce(zz * ze * ze) == T.z * T.zeta * T.zeta


def test_pushforwards():
    T = make_tower(2, 5, "full")
    zz = T.z * T.zeta
    assert push_gamma(zz) == T.z
    assert push_pi(T.z) == FULL_BASE.const(1)
    assert push_down(zz) == FULL_BASE.const(1)
    assert push_down(T.one).is_zero
    with pytest.raises(ValueError):
        push_pi(T.zeta)


@settings(max_examples=30, deadline=None)
@given(words, st.integers(2, 5), st.integers(-2, 9))
def test_pushforward_is_base_linear(word, g, d):
    T = make_tower(g, d, "full")
    x = T.zeta * T.z
    for s in word:
        x = x * T.symbol(s) + T.zeta
    c = FULL_BASE.var("a1") * 3 - FULL_BASE.var("b1")
    assert push_down(x.scale(c)) == push_down(x) * c


def test_reduced_flavor():
    T = make_tower(3, 4, "reduced")
    assert T.z * T.z == T.lift(0)
    a1r = T.sym("a1")
    assert T.sym("a2") == a1r * a1r / 4
    assert reduce_base(FULL_BASE.var("a2") + FULL_BASE.var("c2")) == a1r * a1r / 4


def test_splitting_flavor_restriction():
    T = make_tower(2, 6, "splitting:1,2")
    n1, n2, _, c2s = SPLITTING_BASE.gens()
    assert T.sym("a1") == n1 + n2
    assert T.sym("a2") == n1 * n2 - c2s * 2
    assert T.sym("a2p") == n2 + n1 * 2
    assert T.split == (1, 2)
    with pytest.raises(ValueError):
        make_tower(2, 5, "splitting:2,0")


def test_make_tower_errors():
    with pytest.raises(ValueError):
        make_tower(1, 3)
    with pytest.raises(ValueError):
        make_tower(2, 3, "bogus")
    with pytest.raises(ValueError):
        make_tower(2, 3, "splitting:x")


def test_at_point_is_a_homomorphism():
    T = make_tower(3, 6, "full")
    pt = {"a1": Fraction(1, 2), "a2": Fraction(-3), "a2p": Fraction(5, 7), "b1": Fraction(2), "c2": Fraction(-1, 3)}
    P = T.at_point(pt)
    x = T.zeta * T.zeta * T.z + T.symbol("a2p")
    y = T.zeta * T.symbol("b1") - T.z
    assert T.evaluate(x * y, pt, P) == T.evaluate(x, pt, P) * T.evaluate(y, pt, P)


def test_splitting_type():
    s = SplittingType.for_curve(1, 2, 5)
    assert (s.e1, s.e2) == (1, 1)
    assert s.degree == 2 and s.matches(2, 5)
    assert SplittingType(-1, 1).is_allowed(2, 3)
    assert not SplittingType(-2, 2).is_allowed(2, 3)
    assert not SplittingType(-5, 0).is_allowed(2, 3)
    with pytest.raises(ValueError):
        SplittingType(3, 1)


def test_poly_helpers_exposed():
    assert isinstance(make_tower(2, 3).sym("a1"), Poly)
