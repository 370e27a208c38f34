"""Verification suites over (g, d) cells and report assembly.

Every check yields one record ``(g, d, suite, check, status, witness, ms)``.
Records are sorted by ``(g, d, suite order, check order)`` before
serialization, so reports do not depend on worker count or scheduling.

The ``oracle`` checks redo a computation with every base class replaced by a
random rational number. This runs the tower arithmetic on plain numbers, an
evaluation homomorphism independent of the symbolic polynomial code.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator

from .arith import AbelianGroup
from .chern import c2_on_Z_mod_b1, c3_contract, c3_principal_parts, discriminant_class, line_classes
from .picard import brauer_order, generator_table, pic_pgl2, pic_pgl2_lattice, pic_sl2
from .poly import Poly
from .presentation import (
    kappa,
    kappa_closed,
    kappa_presentation,
    presentation,
    recursion_checks,
    relation_generator,
    relscor_checks,
    rigidification,
    theta,
)
from .splitting import (
    alpha,
    induction_check,
    specialize_check,
    splitting_class,
    verify_kernel,
)
from .tower import REDUCED_BASE, TowerRing, make_tower, push_down, push_gamma, push_pi, reduce_base

SUITES = (
    "c3",
    "discriminant",
    "splitting",
    "kappa",
    "recursions",
    "presentation",
    "relscor",
    "theta",
    "rigidify",
    "picard",
    "brauer",
)
ORACLE_POINTS = 20
J_MAX = 8


@dataclass(frozen=True)
class CheckResult:
    g: int
    d: int
    suite: str
    check: str
    status: str
    witness: str
    ms: float = 0
    label: str = ""

    def to_json(self) -> dict:
        out = asdict(self)
        del out["label"]
        return out

    def to_text(self) -> str:
        w = f"{self.label} = {self.witness}" if self.label else self.witness
        return f"g={self.g} d={self.d} {self.suite}/{self.check} {self.status.upper()} {w}".rstrip()


class _Collector:
    def __init__(self, g: int, d: int, suite: str):
        self.g, self.d, self.suite = g, d, suite
        self.items: list[tuple[str, bool, str, str]] = []

    def add(self, check: str, ok: bool, witness: object = "", label: str = "") -> None:
        self.items.append((check, bool(ok), str(witness), label))


def _rng(g: int, d: int, suite: str) -> random.Random:
    return random.Random(f"hyperjac:{g}:{d}:{suite}")


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-60, 60), rng.randint(1, 17))


def random_point(rng: random.Random, names: Iterable[str]) -> dict[str, Fraction]:
    return {n: random_rational(rng) for n in names}


def _oracle(rng: random.Random, names, trial: Callable[[dict], tuple[bool, str]]) -> tuple[bool, str]:
    """Run ``trial`` on ``ORACLE_POINTS`` random points; report the first failure."""
    for _ in range(ORACLE_POINTS):
        pt = random_point(rng, names)
        ok, info = trial(pt)
        if not ok:
            return False, f"{info} at {{{', '.join(f'{k}: {v}' for k, v in pt.items())}}}"
    return True, f"{ORACLE_POINTS} points agree"


_FULL_NAMES = ("a1", "a2", "a2p", "b1", "c2")
_RED_NAMES = ("a1", "a2p")


# -- suites ----------------------------------------------------------------------


def suite_c3(c: _Collector) -> None:
    g, d = c.g, c.d
    T = make_tower(g, d, "full")
    rep = c3_contract(g, d, T)
    labels = {
        "zzeta": "(8g+4)b1",
        "zeta": "4(b1^2-(g^2+g)c2)",
        "z": "(g+1)(a1^2-4a2) mod <b1,c2>",
        "const": "0 mod <b1,c2>",
    }
    for name in ("zzeta", "zeta", "z", "const"):
        ok, wit = rep.checks[name]
        c.add(name, ok, wit, labels[name])
    if d % 2 == 0:
        got = c2_on_Z_mod_b1(g, d)
        a1, a2p, _, z = got.table.gens()
        c.add("c2_on_Z", got == (a1 * (d - g - 1) - a2p * 2) * z, got, "(e*a1-2a2p)z mod <b1>")

    def trial(pt):
        P = T.at_point(pt)
        v = c3_principal_parts(g, d, P)
        b1, c2, a1, a2 = (Fraction(pt[n]) for n in ("b1", "c2", "a1", "a2"))
        p0, p1, p2, p3 = (p.constant_value() for p in v.parts)
        ok = p3 == (8 * g + 4) * b1 and p2 == 4 * (b1 * b1 - (g * g + g) * c2)
        # the congruences are checked on the slice b1 = c2 = 0
        Q = T.at_point({**pt, "b1": 0, "c2": 0})
        w = c3_principal_parts(g, d, Q)
        q0, q1 = w.parts[0].constant_value(), w.parts[1].constant_value()
        ok = ok and q1 == (g + 1) * (a1 * a1 - 4 * a2) and q0 == 0
        return ok, f"coefficients ({p0}, {p1}, {p2}, {p3})"

    ok, wit = _oracle(_rng(g, d, "c3"), _FULL_NAMES, trial)
    c.add("oracle", ok, wit)


def suite_discriminant(c: _Collector) -> None:
    g, d = c.g, c.d
    T = make_tower(g, d, "full")
    v = discriminant_class(g, d, T)
    c.add("value", v == T.sym("b1") * (8 * g + 4), v, "(8g+4)b1")

    def trial(pt):
        val = push_down(c3_principal_parts(g, d, T.at_point(pt))).constant_value()
        return val == (8 * g + 4) * Fraction(pt["b1"]), str(val)

    ok, wit = _oracle(_rng(g, d, "discriminant"), _FULL_NAMES, trial)
    c.add("oracle", ok, wit)


def splitting_cases_for(e: int, max_gap: int = J_MAX) -> list[tuple[int, int]]:
    out = []
    for gap in range(1, max_gap + 1):
        if (e - gap) % 2 == 0:
            i = (e - gap) // 2
            out.append((i, i + gap))
    return out


def splitting_case_checks(c: _Collector, e: int, i: int, j: int, rng: random.Random) -> None:
    tag = f"{i},{j}"
    c.add(f"kernel[{tag}]", verify_kernel(e, i, j), str(alpha(i, j)))
    is_pow, scalar = specialize_check(e, i, j)
    c.add(f"specialize[{tag}]", is_pow, f"{scalar}*({e}*a1 - 2*a2p)^{j - i - 1}")
    c.add(f"induction[{tag}]", induction_check(e, i, j), splitting_class(e, i - 1, j + 1).value)
    cls = splitting_class(e, i, j).value
    a_ij = alpha(i, j)

    def trial(pt):
        n1, n2, c2 = pt["n1"], pt["n2"], pt["c2"]
        pulled = {"a1": n1 + n2, "a2": n1 * n2 - i * j * c2, "a2p": i * n2 + j * n1, "b1": 0, "c2": c2}
        v = a_ij.evaluate(pulled)
        a1, a2p = pt["a1"], pt["a2p"]
        special = cls.evaluate({"a1": a1, "a2": a1 * a1 / 4, "a2p": a2p, "b1": 0, "c2": 0})
        want = scalar * (e * a1 - 2 * a2p) ** max(j - i - 1, 0)
        return v == 0 and special == want, f"alpha -> {v}, specialized {special} vs {want}"

    ok, wit = _oracle(rng, ("n1", "n2", "c2", "a1", "a2p"), trial)
    c.add(f"oracle[{tag}]", ok, wit)


def suite_splitting(c: _Collector) -> None:
    e = c.d - c.g - 1
    rng = _rng(c.g, c.d, "splitting")
    for i, j in splitting_cases_for(e):
        splitting_case_checks(c, e, i, j, rng)


def _kappa_indices(i_max: int, j_max: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(-1, i_max + 1) for j in range(0, j_max + 1) if (i, j) != (-1, 0)]


def _point_kappas(P: TowerRing, g: int, i_max: int, j_max: int) -> dict[tuple[int, int], Fraction]:
    """Numeric kappa classes by push-pull in a point tower."""
    out = {}
    x = line_classes(P)["W"].c1
    for i in range(-1, i_max + 1):
        y = x
        for j in range(0, j_max + 1):
            if (i, j) != (-1, 0):
                out[(i, j)] = push_down(y).constant_value()
            y = y * P.zeta
        x = x * P.z * (g - 1)
    return out


def suite_kappa(c: _Collector) -> None:
    g, d = c.g, c.d
    bad = []
    for i in range(-1, 5):
        for j in range(0, J_MAX + 1):
            if (i, j) == (-1, 0):
                continue
            if kappa(i, j, g, d).value != kappa_closed(i, j, g, d).value:
                bad.append(f"kappa({i},{j}) = {kappa(i, j, g, d).value}")
    c.add("closed_forms", not bad, "; ".join(bad) or f"{6 * (J_MAX + 1) - 1} classes match")
    k = kappa(-1, 1, g, d).value
    c.add("km1_1", k == REDUCED_BASE.const(d), k, "d")
    kc = kappa_closed(-1, 1, g, d).value
    c.add("km1_formula_j1", kc == REDUCED_BASE.const(d), kc, "closed form at j=1")
    T = make_tower(g, d, "reduced")
    closed = {ij: kappa_closed(*ij, g, d).value for ij in _kappa_indices(4, J_MAX)}

    def trial(pt):
        got = _point_kappas(T.at_point(pt), g, 4, J_MAX)
        for ij, poly in closed.items():
            want = poly.evaluate(pt)
            if got[ij] != want:
                return False, f"kappa{ij} = {got[ij]} vs {want}"
        return True, ""

    ok, wit = _oracle(_rng(g, d, "kappa"), _RED_NAMES, trial)
    c.add("oracle", ok, wit)


def _recursions_at_point(P: TowerRing, g: int, d: int, a1: Fraction, a2p: Fraction) -> tuple[bool, str]:
    e = d - g - 1
    n = J_MAX + 1
    lin = P.zeta * 2 - P.sym("a1")
    hs = [push_pi(push_gamma(lin * P.zeta_power(j)) * P.z).constant_value() for j in range(n + 1)]
    fs = [push_down(P.zeta_power(j + 1) * P.z).constant_value() for j in range(n + 1)]
    ls = [push_down(lin * P.zeta_power(j + 1)).constant_value() for j in range(n + 1)]
    ks = _point_kappas(P, g, -1, n + 1)
    km = {j: ks[(-1, j)] for j in range(1, n + 2)}
    bad = []
    if hs[0] != 2 or fs[0] != 1 or km[1] != d:
        bad.append("base values")
    for j in range(1, J_MAX + 1):
        if hs[j] != a1 ** j / 2 ** (j - 1) or fs[j] != a1 ** j * (j + 1) / 2 ** j:
            bad.append(f"closed h/f at j={j}")
        if 4 * e * fs[j] - 4 * a2p * fs[j - 1] != 2 * ls[j] - a1 * ls[j - 1]:
            bad.append(f"diff at j={j}")
        rhs = a1 ** (j - 1) * (d * a1 + 2 * j * (e * a1 - 2 * a2p)) / 2 ** (j - 1)
        if 2 * km[j + 1] - a1 * km[j] != rhs:
            bad.append(f"kappa step at j={j}")
        if km[j] != (2 * g + 2 - d) * fs[j - 1] + ls[j - 1]:
            bad.append(f"so-that at j={j}")
    for j in range(0, J_MAX):
        if 2 * hs[j + 1] - a1 * hs[j] != 0:
            bad.append(f"h step at j={j}")
    return not bad, "; ".join(bad)


def suite_recursions(c: _Collector) -> None:
    g, d = c.g, c.d
    for name, ok in recursion_checks(g, d, J_MAX).items():
        c.add(name, ok, f"j <= {J_MAX}" if ok else "identity fails")
    T = make_tower(g, d, "reduced")

    def trial(pt):
        return _recursions_at_point(T.at_point(pt), g, d, pt["a1"], pt["a2p"])

    ok, wit = _oracle(_rng(g, d, "recursions"), _RED_NAMES, trial)
    c.add("oracle", ok, wit)


def suite_presentation(c: _Collector) -> None:
    g, d = c.g, c.d
    p = presentation(g, d)
    w = p.witness
    rel_text = str(p.relation)
    c.add("S_degree", w["S_degree_ok"], w["S_degree"], "deg S")
    c.add("power", w["power_ok"], f"{w['scalar']}*({relation_generator(g, d)})^{g + 1}")
    if "S_redundant" in w:
        c.add("S_redundant", w["S_redundant"], "S in <(e*a1-2a2p)^(g+1)>")
        c.add("ideal_with_S", w["ideal_equal_with_S"], "adjoining S changes nothing")
    c.add("ideal", w["ideal_equal_normalized"], rel_text, "relation")
    kp = kappa_presentation(g, d)
    kw = kp.witness
    c.add("kappa_generator", kw["generator_ok"], kw["generator"], "d*k01 - (g-1)*km12")
    c.add("kappa_inverse", kw["inverse_ok"] and kw["k01_ok"] and kw["km12_ok"], "a1, a2p <-> k01, km12")
    c.add("kappa_relation", kw["relation_ok"], kp.relation)
    gen = relation_generator(g, d)
    scalar = w["scalar"]
    e = d - g - 1
    if d % 2:
        target = splitting_class(e, (d + 1) // 2 - g - 2, (d + 1) // 2).value
    else:
        target = splitting_class(e, d // 2 - g - 1, d // 2).value
    T = make_tower(g, d, "reduced")

    def trial(pt):
        a1, a2p = pt["a1"], pt["a2p"]
        special = target.evaluate({"a1": a1, "a2": a1 * a1 / 4, "a2p": a2p, "b1": 0, "c2": 0})
        if d % 2 == 0:
            special *= e * a1 - 2 * a2p
        want = scalar * gen.evaluate(pt) ** (g + 1) if scalar is not None else None
        P = T.at_point(pt)
        W = line_classes(P)["W"].c1
        k01 = push_down(W * P.z * (g - 1) * P.zeta).constant_value()
        km12 = push_down(W * P.zeta_power(2)).constant_value()
        ok = special == want and d * k01 - (g - 1) * km12 == -(g - 1) * (e * a1 - 2 * a2p)
        return ok, f"class {special} vs {want}"

    ok, wit = _oracle(_rng(g, d, "presentation"), _RED_NAMES, trial)
    c.add("oracle", ok, wit)


def suite_relscor(c: _Collector) -> None:
    g, d = c.g, c.d
    for name, ok in relscor_checks(g, d, J_MAX).items():
        c.add(name, ok, f"j <= {J_MAX}" if ok else "identity fails")
    T = make_tower(g, d, "reduced")
    m = 2 * g - 2

    def trial(pt):
        k = _point_kappas(T.at_point(pt), g, 3, J_MAX)
        k01, km12 = k[(0, 1)], k[(-1, 2)]
        bad = [f"kappa({i},{j})" for i in range(1, 4) for j in range(0, 4) if k[(i, j)] != 0]
        for j in range(2, J_MAX + 1):
            if k[(0, j)] * m ** (j - 1) != k01 ** j:
                bad.append(f"kappa(0,{j})")
            rhs = k01 ** (j - 2) * ((g - 1) * (j * j - j) * km12 - d * (j * j - 2 * j) * k01)
            if k[(-1, j)] * m ** (j - 1) != rhs:
                bad.append(f"kappa(-1,{j})")
        return not bad, "; ".join(bad)

    ok, wit = _oracle(_rng(g, d, "relscor"), _RED_NAMES, trial)
    c.add("oracle", ok, wit)


def suite_theta(c: _Collector) -> None:
    g, d = c.g, c.d
    if d != g - 1:
        return
    t = theta(g)
    c.add("value", t["theta_ok"], t["theta"], "Theta")
    c.add("top_power", t["top_power_zero"], f"Theta^{g + 1} in relation ideal")
    c.add("socle", t["socle_nonzero"], f"Theta^{g} not in relation ideal")
    c.add("splitting_match", t["splitting_match"], "Theta ~ [Sigma(-2,0)]")
    T = make_tower(g, d, "reduced")

    def trial(pt):
        P = T.at_point(pt)
        W = line_classes(P)["W"].c1
        k01 = push_down(W * P.z * (g - 1) * P.zeta).constant_value()
        km12 = push_down(W * P.zeta_power(2)).constant_value()
        k10 = push_down(W * (P.z * (g - 1)) ** 2).constant_value()
        th = k01 / 2 - km12 / 2 - k10 / 12
        return th == pt["a1"] + pt["a2p"], f"Theta = {th}"

    ok, wit = _oracle(_rng(g, d, "theta"), _RED_NAMES, trial)
    c.add("oracle", ok, wit)


def suite_rigidify(c: _Collector) -> None:
    g, d = c.g, c.d
    r = rigidification(g, d)
    gen = relation_generator(g, d)
    c.add("u_image", r.u_image == gen * -(g - 1), r.u_image, "u")
    c.add("order", r.ok, r.order, "nilpotency order")
    a1, a2p = REDUCED_BASE.gens()
    want = sorted(map(str, (a1, a2p ** (g + 1))))
    got = sorted(map(str, r.quotient_basis))
    c.add("quotient", got == want, ", ".join(got), "<a1, relation>")


def suite_picard(c: _Collector) -> None:
    g, d = c.g, c.d
    sl2 = pic_sl2(g, d)
    c.add("sl2", sl2 == AbelianGroup(2, (8 * g + 4,)), sl2)
    pgl2 = pic_pgl2(g, d)
    n = 8 * g + 4 if g % 2 else 4 * g + 2
    c.add("pgl2", pgl2 == AbelianGroup(2, (n,)), pgl2)
    tab = generator_table(g, d)
    c.add("generators", tab.in_sublattice and tab.spans_sublattice, pic_pgl2_lattice(g, d).labels)
    ratio = sl2.order_of_torsion // pgl2.order_of_torsion
    c.add("torsion_ratio", ratio == (1 if g % 2 else 2), ratio)


def suite_brauer(c: _Collector) -> None:
    g, d = c.g, c.d
    b = brauer_order(g, d)
    c.add("order", b == gcd(d - g + 1, 2), b, "gcd(d-g+1,2)")


RUNNERS: dict[str, Callable[[_Collector], None]] = {
    "c3": suite_c3,
    "discriminant": suite_discriminant,
    "splitting": suite_splitting,
    "kappa": suite_kappa,
    "recursions": suite_recursions,
    "presentation": suite_presentation,
    "relscor": suite_relscor,
    "theta": suite_theta,
    "rigidify": suite_rigidify,
    "picard": suite_picard,
    "brauer": suite_brauer,
}


def expand_suites(names: Iterable[str]) -> list[str]:
    out: list[str] = []
    for n in names:
        if n == "all":
            out.extend(SUITES)
        elif n in RUNNERS:
            out.append(n)
        else:
            raise ValueError(f"unknown suite {n!r}; valid suites: all, {', '.join(SUITES)}")
    return [s for s in SUITES if s in set(out)]


def run_cell(g: int, d: int, suites: Iterable[str], timing: bool = False) -> list[CheckResult]:
    out = []
    for s in suites:
        c = _Collector(g, d, s)
        t0 = time.perf_counter()
        try:
            RUNNERS[s](c)
        except Exception as exc:  # a crash is reported as a failed check, not a traceback
            c.add("error", False, f"{type(exc).__name__}: {exc}")
        ms = round((time.perf_counter() - t0) * 1000, 3) if timing else 0
        for check, ok, wit, label in c.items:
            out.append(CheckResult(g, d, s, check, "pass" if ok else "fail", wit, ms, label))
    return out


def _run_cell_args(args) -> list[CheckResult]:
    return run_cell(*args)


def cells(g_range: tuple[int, int], d_range: tuple[int, int]) -> list[tuple[int, int]]:
    (glo, ghi), (dlo, dhi) = g_range, d_range
    if glo > ghi or dlo > dhi:
        raise ValueError("empty range")
    if glo < 2:
        raise ValueError(f"genus must be at least 2, got {glo}")
    return [(g, d) for g in range(glo, ghi + 1) for d in range(dlo, dhi + 1)]


def default_cells() -> list[tuple[int, int]]:
    """The standard sweep: ``2 <= g <= 8`` and ``g - 4 <= d <= g + 6``."""
    return [(g, d) for g in range(2, 9) for d in range(g - 4, g + 7)]


def run_suites(
    g_range: tuple[int, int],
    d_range: tuple[int, int],
    suites: Iterable[str] = ("all",),
    jobs: int = 1,
    timing: bool = False,
    cell_list: list[tuple[int, int]] | None = None,
) -> list[CheckResult]:
    names = expand_suites(suites)
    todo = cell_list if cell_list is not None else cells(g_range, d_range)
    args = [(g, d, names, timing) for g, d in todo]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_cell_args, args))
    else:
        chunks = [_run_cell_args(a) for a in args]
    order = {s: k for k, s in enumerate(SUITES)}
    # checks keep their emission order within a (g, d, suite) group
    flat = [(r.g, r.d, order[r.suite], k, r) for chunk in chunks for k, r in enumerate(chunk)]
    flat.sort(key=lambda t: t[:4])
    return [t[4] for t in flat]


def summary(results: list[CheckResult]) -> dict[str, int]:
    p = sum(r.status == "pass" for r in results)
    return {"pass": p, "fail": len(results) - p}


def to_json(results: list[CheckResult]) -> str:
    doc = {"cells": [r.to_json() for r in results], "summary": summary(results)}
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def to_text(results: list[CheckResult]) -> str:
    lines = [r.to_text() for r in results]
    s = summary(results)
    lines.append(f"summary: {s['pass']} pass, {s['fail']} fail")
    return "\n".join(lines) + "\n"


def iter_failures(results: list[CheckResult]) -> Iterator[CheckResult]:
    return (r for r in results if r.status != "pass")
