from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperjac.expr import (
    Add,
    EvalError,
    Kappa,
    Mul,
    Neg,
    Num,
    ParseError,
    Pow,
    PushGamma,
    PushPi,
    Sub,
    Sym,
    evaluate,
    parse,
    to_text,
    tokenize,
)
from hyperjac.tower import make_tower


@pytest.mark.parametrize(
    "text,flavor,want",
    [
        ("zeta^2", "full", "a1*zeta - a2 - a2p*z"),
        ("z^2", "full", "-c2"),
        ("z^2", "reduced", "0"),
        ("a2", "reduced", "1/4*a1^2"),
        ("a2", "splitting:1,2", "n1*n2 - 2*c2"),
        ("pushpi(pushgamma(z*zeta))", "full", "1"),
        ("-3/4*a1", "full", "-3/4*a1"),
        ("2^3 - 8", "full", "0"),
        ("(1+u)^2", "rigid", "u^2 + 2*u + 1"),
        ("u^3", "rigid", "0"),
    ],
)
def test_evaluate_g2_d3(text, flavor, want):
    assert evaluate(text, 2, 3, flavor) == want


def test_kappa_expressions():
    assert evaluate("kappa(0,1)", 3, 3, "reduced") == "2*a1"
    assert evaluate("kappa(-1,2) - (2*3-2-1)*a1 + 2*a2p", 2, 3, "reduced") == "0"
    assert evaluate("3*kappa(0,1) - kappa(-1,2)", 2, 3, "full") == "2*a2p"
    assert evaluate("u^3", 3, 3, "rigid") == "u^3"
    assert evaluate("u^4", 3, 3, "rigid") == "0"


def test_precedence():
    assert parse("a1 - b1*2^2") == Sub(Sym("a1"), Mul(Sym("b1"), Pow(Num(Fraction(2)), 2)))
    assert parse("-a1") == Neg(Sym("a1"))
    assert parse("-3/4") == Num(Fraction(-3, 4))
    assert parse("a1 - 3") == Sub(Sym("a1"), Num(Fraction(3)))
    assert evaluate("2*3^2", 2, 3) == "18"
    assert evaluate("a1 - a1 - a1", 2, 3) == "-a1"


@pytest.mark.parametrize(
    "text,offset",
    [("a1 +", 4), ("a1 $", 3), ("kappa(-2,1)", 6), ("1/0", 2), ("foo", 0), ("(a1", 3), ("a1 a2", 3)],
)
def test_parse_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset


def test_parse_error_lists_expected():
    with pytest.raises(ParseError) as info:
        parse("a1 *")
    assert "SYMBOL" in info.value.expected and "INT" in info.value.expected


def test_byte_offsets_count_utf8():
    with pytest.raises(ParseError) as info:
        parse("a1 + ζ")
    assert info.value.offset == 5
    assert [t.offset for t in tokenize("a1+b1")][:3] == [0, 2, 3]


@pytest.mark.parametrize(
    "text,flavor",
    [("u", "full"), ("n1", "full"), ("a1", "rigid"), ("kappa(0,1)", "splitting:0,1"), ("kappa(-1,0)", "full"), ("pushpi(zeta)", "full")],
)
def test_eval_errors(text, flavor):
    with pytest.raises(EvalError):
        evaluate(text, 2, 3, flavor)


def test_bad_flavor():
    with pytest.raises(ValueError):
        evaluate("a1", 2, 3, "bogus")


leaves = st.one_of(
    st.builds(Num, st.fractions(min_value=-5, max_value=5, max_denominator=4)),
    st.sampled_from([Sym(n) for n in ("a1", "a2", "a2p", "b1", "c2", "z", "zeta")]),
    st.builds(Kappa, st.integers(-1, 2), st.integers(1, 3)),
)


def _extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Pow, children, st.integers(0, 3)),
        st.builds(PushGamma, children),
    )


trees = st.recursive(leaves, _extend, max_leaves=8)


@settings(max_examples=150, deadline=None)
@given(trees)
def test_print_parse_roundtrip(node):
    assert parse(to_text(node)) == node


@settings(max_examples=60, deadline=None)
@given(trees)
def test_canonical_text_is_stable(node):
    out = evaluate(node, 3, 5, "full")
    # the canonical output reparses to an equal value
    assert evaluate(out, 3, 5, "full") == out


def test_evaluation_agrees_with_tower():
    T = make_tower(3, 5)
    x = (T.zeta + T.z) ** 3 - T.symbol("a2p") * T.zeta
    assert evaluate("(zeta + z)^3 - a2p*zeta", 3, 5) == str(x.value)
    assert evaluate(PushPi(PushGamma(Mul(Sym("z"), Sym("zeta")))), 3, 5) == "1"
