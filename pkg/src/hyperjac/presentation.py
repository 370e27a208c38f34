"""Kappa classes, their closed forms, and the Chow ring presentations.

Kappa classes are computed by push-pull in the reduced tower, where
``b1 = c2 = 0`` and ``a2 = a1^2/4``, so every value is a polynomial in
``Q[a1, a2p]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .chern import grr_theta, line_classes
from .poly import Ideal, Poly, VariableTable, exact_quotient, ideal_equal
from .splitting import S_class, power_ratio, splitting_class
from .tower import FULL_BASE, REDUCED_BASE, TowerRing, make_tower, push_down, push_gamma, push_pi, reduce_base

_A1, _A2P = REDUCED_BASE.gens()


@dataclass(frozen=True)
class KappaClass:
    i: int
    j: int
    value: Poly

    @property
    def degree(self) -> int:
        return self.i + self.j


def _check_indices(i: int, j: int) -> None:
    if i < -1 or j < 0:
        raise ValueError(f"kappa indices need i >= -1 and j >= 0, got ({i}, {j})")
    if (i, j) == (-1, 0):
        raise ValueError("kappa(-1, 0) has degree -1 and is not defined")


@lru_cache(maxsize=64)
def reduced_tower(g: int, d: int) -> TowerRing:
    return make_tower(g, d, "reduced")


def curve_class(T: TowerRing):
    """Class of the universal curve inside the Hirzebruch surface, which is ``c1(W)``."""
    return line_classes(T)["W"].c1


@lru_cache(maxsize=4096)
def kappa(i: int, j: int, g: int, d: int) -> KappaClass:
    """``pi_* gamma_*([C] * ((g-1) z)^(i+1) * zeta^j)`` in the reduced tower."""
    _check_indices(i, j)
    T = reduced_tower(g, d)
    x = curve_class(T) * (T.z * (g - 1)) ** (i + 1) * T.zeta_power(j)
    return KappaClass(i, j, push_down(x))


def kappa_closed(i: int, j: int, g: int, d: int) -> KappaClass:
    _check_indices(i, j)
    if i >= 1:
        return KappaClass(i, j, REDUCED_BASE.const(0))
    if i == 0:
        return KappaClass(i, j, _A1 ** j * Fraction(g - 1, 1) / Fraction(2) ** (j - 1))
    e = d - g - 1
    inner = _A1 * (j * d) + (_A1 * e - _A2P * 2) * (j * j - j)
    if j >= 2:
        return KappaClass(i, j, _A1 ** (j - 2) * inner / Fraction(2) ** (j - 1))
    # j = 1: the negative power of a1 must cancel against inner
    q = exact_quotient(inner, _A1)
    if q is None:
        raise ArithmeticError(f"closed form does not reduce at j = 1: {inner}")
    return KappaClass(i, j, q)


# -- recursions ---------------------------------------------------------------


def h(j: int, g: int, d: int) -> Poly:
    T = reduced_tower(g, d)
    y = push_gamma((T.zeta * 2 - T.sym("a1")) * T.zeta_power(j))
    return push_pi(y * T.z)


def f(j: int, g: int, d: int) -> Poly:
    T = reduced_tower(g, d)
    return push_down(T.zeta_power(j + 1) * T.z)


def ell(j: int, g: int, d: int) -> Poly:
    T = reduced_tower(g, d)
    return push_down((T.zeta * 2 - T.sym("a1")) * T.zeta_power(j + 1))


def recursion_checks(g: int, d: int, j_max: int) -> dict[str, bool]:
    """Each named family of identities behind the closed forms, up to ``j_max``."""
    if j_max < 2:
        raise ValueError("j_max must be at least 2")
    e = d - g - 1
    two = Fraction(2)
    out = {"h0": h(0, g, d) == REDUCED_BASE.const(2), "f0": f(0, g, d) == REDUCED_BASE.const(1)}
    hs, fs, ls, ks = [], [], [], []
    for j in range(1, j_max + 1):
        hs.append(h(j, g, d) == _A1 ** j / two ** (j - 1))
        fs.append(f(j, g, d) == _A1 ** j * Fraction(j + 1) / two ** j)
        # projective bundle relation pushed down
        ls.append(
            f(j, g, d) * (4 * e) - f(j - 1, g, d) * _A2P * 4 == ell(j, g, d) * 2 - ell(j - 1, g, d) * _A1
        )
        k_next, k_now = kappa(-1, j + 1, g, d).value, kappa(-1, j, g, d).value
        rhs = _A1 ** (j - 1) * (_A1 * d + (_A1 * e - _A2P * 2) * (2 * j)) / two ** (j - 1)
        ks.append(k_next * 2 - _A1 * k_now == rhs)
    out["h_closed"] = all(hs)
    out["f_closed"] = all(fs)
    out["diff"] = all(ls)
    out["kappa_m1_step"] = all(ks)
    out["h_step"] = all(h(j + 1, g, d) * 2 - _A1 * h(j, g, d) == 0 for j in range(0, j_max))
    out["sothat"] = all(
        kappa(-1, j, g, d).value == f(j - 1, g, d) * (2 * g + 2 - d) + ell(j - 1, g, d)
        for j in range(1, j_max + 1)
    )
    out["kappa_m1_1"] = kappa(-1, 1, g, d).value == REDUCED_BASE.const(d)
    return out


def verify_recursions(g: int, d: int, j_max: int) -> bool:
    return all(recursion_checks(g, d, j_max).values())


# -- presentations -----------------------------------------------------------


def relation_generator(g: int, d: int) -> Poly:
    """``e*a1 - 2*a2p`` with ``e = d - g - 1``."""
    return _A1 * (d - g - 1) - _A2P * 2


@dataclass
class RingPresentation:
    generators: tuple[tuple[str, int], ...]
    relation: Poly
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v for k, v in self.witness.items() if isinstance(v, bool))


def _base_ideal_gens() -> list[Poly]:
    a1, a2, _, b1, c2 = FULL_BASE.gens()
    return [b1, c2, a1 * a1 - a2 * 4]


def presentation(g: int, d: int, ideal_check: bool = True) -> RingPresentation:
    """``Q[a1, a2p] / ((e*a1 - 2*a2p)^(g+1))`` with the supporting checks.

    Odd ``d``: the boundary class reduces to a power of the generator.
    Even ``d``: the directrix class times the generator does, and adjoining
    the boundary class to the ideal changes nothing.
    """
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    e = d - g - 1
    gen = relation_generator(g, d)
    rel = gen ** (g + 1)
    w: dict = {"e": e, "parity": "odd" if d % 2 else "even"}
    s = S_class(g, d)
    w["S_degree"] = s.value.degree()
    w["S_degree_ok"] = s.value.degree() == (g + 1 if d % 2 else g + 2)
    red_s = reduce_base(s.value)
    if d % 2:
        c = power_ratio(red_s, gen, g + 1)
        w["power_ok"] = c is not None
        w["scalar"] = c
        full_gens = _base_ideal_gens() + [s.value]
    else:
        sig = splitting_class(e, d // 2 - g - 1, d // 2)
        fgen = FULL_BASE.var("a1") * e - FULL_BASE.var("a2p") * 2
        prod = sig.value * fgen
        c = power_ratio(reduce_base(prod), gen, g + 1)
        w["power_ok"] = c is not None
        w["scalar"] = c
        w["S_redundant"] = exact_quotient(red_s, rel) is not None
        full_gens = _base_ideal_gens() + [prod]
        if ideal_check:
            w["ideal_equal_with_S"] = ideal_equal(
                Ideal(FULL_BASE, full_gens), Ideal(FULL_BASE, full_gens + [s.value])
            )
    if ideal_check:
        fgen = FULL_BASE.var("a1") * e - FULL_BASE.var("a2p") * 2
        w["ideal_equal_normalized"] = ideal_equal(
            Ideal(FULL_BASE, full_gens), Ideal(FULL_BASE, _base_ideal_gens() + [fgen ** (g + 1)])
        )
    return RingPresentation((("a1", 1), ("a2p", 1)), rel, w)


KAPPA_TABLE = VariableTable.of(("k01", 1), ("km12", 1))


def kappa_presentation(g: int, d: int) -> RingPresentation:
    """The same ring with generators ``kappa_{0,1}`` and ``kappa_{-1,2}``."""
    k01 = kappa(0, 1, g, d).value
    km12 = kappa(-1, 2, g, d).value
    gen_a = k01 * d - km12 * (g - 1)
    w: dict = {}
    w["generator"] = str(gen_a)
    w["generator_ok"] = gen_a == relation_generator(g, d) * -(g - 1)
    w["k01_ok"] = k01 == _A1 * (g - 1)
    w["km12_ok"] = km12 == _A1 * (2 * d - g - 1) - _A2P * 2
    # inverse change of variables, composed both ways
    K1, K2 = KAPPA_TABLE.gens()
    a1_k = K1 / (g - 1)
    a2p_k = (K1 * Fraction(2 * d - g - 1, g - 1) - K2) / 2
    to_a = {"k01": k01, "km12": km12}
    to_k = {"a1": a1_k, "a2p": a2p_k}
    w["inverse_ok"] = (
        _A1.substitute(to_k, KAPPA_TABLE).substitute(to_a, REDUCED_BASE) == _A1
        and _A2P.substitute(to_k, KAPPA_TABLE).substitute(to_a, REDUCED_BASE) == _A2P
        and K1.substitute(to_a, REDUCED_BASE).substitute(to_k, KAPPA_TABLE) == K1
        and K2.substitute(to_a, REDUCED_BASE).substitute(to_k, KAPPA_TABLE) == K2
    )
    gen_k = K1 * d - K2 * (g - 1)
    rel_k = gen_k ** (g + 1)
    # a principal ideal is unchanged by a nonzero scalar
    w["relation_ok"] = power_ratio(rel_k.substitute(to_a, REDUCED_BASE), relation_generator(g, d), g + 1) is not None
    return RingPresentation((("k01", 1), ("km12", 1)), rel_k, w)


def relscor_check(g: int, d: int, j_max: int) -> bool:
    return all(relscor_checks(g, d, j_max).values())


def relscor_checks(g: int, d: int, j_max: int) -> dict[str, bool]:
    if j_max < 2:
        raise ValueError("j_max must be at least 2")
    k01 = kappa(0, 1, g, d).value
    km12 = kappa(-1, 2, g, d).value
    c = 2 * g - 2
    zero_ok = all(not kappa(i, j, g, d).value for i in range(1, 4) for j in range(0, 4))
    p0, pm1 = [], []
    for j in range(2, j_max + 1):
        p0.append(kappa(0, j, g, d).value * c ** (j - 1) == k01 ** j)
        rhs = k01 ** (j - 2) * (km12 * ((g - 1) * (j * j - j)) - k01 * (d * (j * j - 2 * j)))
        pm1.append(kappa(-1, j, g, d).value * c ** (j - 1) == rhs)
    return {"vanish": zero_ok, "kappa0_power": all(p0), "kappa_m1": all(pm1)}


def nilpotency_order(x: Poly, relation_base: Poly, n: int) -> int | None:
    """Least ``k <= n + 1`` with ``x^k`` in ``(relation_base^n)``, else ``None``."""
    rel = relation_base ** n
    p = x.table.const(1)
    for k in range(1, n + 2):
        p = p * x
        if exact_quotient(p, rel) is not None:
            return k
    return None


def theta(g: int) -> dict:
    """Theta at ``d = g - 1`` and its nilpotency in the presentation."""
    d = g - 1
    combo = grr_theta()
    value = combo.realize(lambda i, j: kappa(i, j, g, d).value)
    gen = relation_generator(g, d)
    rel = gen ** (g + 1)
    out: dict = {"theta": value}
    out["theta_ok"] = value == _A1 + _A2P
    out["top_power_zero"] = exact_quotient(value ** (g + 1), rel) is not None
    out["socle_nonzero"] = exact_quotient(value ** g, rel) is None
    sc = splitting_class(-2, -2, 0)
    out["splitting_match"] = power_ratio(reduce_base(sc.value), value, 1) is not None
    return out


@dataclass(frozen=True)
class Rigidification:
    g: int
    d: int
    u_image: Poly
    order: int | None
    quotient_basis: tuple[Poly, ...]

    @property
    def ok(self) -> bool:
        return self.order == self.g + 1


def rigidification(g: int, d: int) -> Rigidification:
    """``Q[u]/(u^(g+1))`` with ``u -> d*kappa_{0,1} - (g-1)*kappa_{-1,2}``."""
    u_img = kappa(0, 1, g, d).value * d - kappa(-1, 2, g, d).value * (g - 1)
    order = nilpotency_order(u_img, relation_generator(g, d), g + 1)
    # killing c1 of the twisted bundle (a multiple of a1) leaves Q[a2p]/(a2p^(g+1))
    basis = Ideal(REDUCED_BASE, [_A1, relation_generator(g, d) ** (g + 1)]).basis
    return Rigidification(g, d, u_img, order, basis)
