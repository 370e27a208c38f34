"""The nine acceptance criteria over the default sweep, all at zero tolerance.

Each test records one PASS/FAIL line (printed immediately and again in the
terminal summary). Criterion 1 asks for a zeta coefficient with the wrong
sign for the conventions in use; it is checked literally, reports FAIL and
is a strict xfail so the rest of the run stays green.
"""

import time
from collections import defaultdict

import pytest

from conftest import ACCEPTANCE_LINES
from hyperjac.arith import AbelianGroup
from hyperjac.chern import c3_contract, c3_zeta_stated, discriminant_class
from hyperjac.picard import pic_pgl2, pic_sl2
from hyperjac.presentation import h, kappa
from hyperjac.splitting import induction_check, specialize_check, sweep_cases, verify_kernel
from hyperjac.suites import ORACLE_POINTS, default_cells, run_suites, to_json
from hyperjac.tower import FULL_BASE, REDUCED_BASE

CELLS = default_cells()
GENERA = sorted({g for g, _ in CELLS})


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {n} [{title}]: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES[n] = line
    print(line)


@pytest.fixture(scope="module")
def sweep():
    t0 = time.perf_counter()
    results = run_suites(None, None, ["all"], jobs=1, cell_list=CELLS)
    return results, time.perf_counter() - t0


def by_suite(results, *suites):
    return [r for r in results if r.suite in suites]


def failures(results):
    return [f"g={r.g} d={r.d} {r.suite}/{r.check}" for r in results if r.status != "pass"]


@pytest.mark.xfail(strict=True, reason="stated zeta coefficient has the wrong sign of c2 under z^2 = -c2")
def test_criterion_1_c3_contract():
    zz, zeta_stated, rest, zeta_corrected = [], [], [], []
    for g, d in CELLS:
        rep = c3_contract(g, d)
        zz.append(rep.checks["zzeta"][0])
        rest.append(rep.checks["z"][0] and rep.checks["const"][0])
        zeta_corrected.append(rep.checks["zeta"][0])
        zeta_stated.append(c3_zeta_stated(g, d))
    ok = all(zz) and all(zeta_stated) and all(rest)
    n = len(CELLS)
    record(
        1,
        "c3 contract",
        ok,
        f"z*zeta {sum(zz)}/{n}, stated zeta 4(b1^2+(g^2+g)c2) {sum(zeta_stated)}/{n}, "
        f"z/const mod <b1,c2> {sum(rest)}/{n}; with -(g^2+g)c2 the zeta check holds {sum(zeta_corrected)}/{n}",
    )
    assert ok


def test_criterion_2_discriminant(sweep):
    results, _ = sweep
    b1 = FULL_BASE.var("b1")
    direct = all(discriminant_class(g, d) == b1 * (8 * g + 4) for g, d in CELLS)
    at_2 = all(discriminant_class(2, d) == b1 * 20 for d in range(-2, 9))
    torsion = pic_sl2(2, 3).torsion == (20,)
    bad = failures(by_suite(results, "discriminant"))
    ok = direct and at_2 and torsion and not bad
    record(2, "discriminant", ok, f"(8g+4)b1 in {len(CELLS)} cells; g=2 gives 20*b1 and torsion Z/20; {len(bad)} failed checks")
    assert ok, bad


def test_criterion_3_splitting_loci(sweep):
    results, _ = sweep
    cases = sweep_cases(-6, 6, 8)
    kern = [c for c in cases if not verify_kernel(*c)]
    special = [c for c in cases if not specialize_check(*c)[0]]
    ind = [c for c in cases if not induction_check(*c)]
    bad = failures(by_suite(results, "splitting"))
    ok = not (kern or special or ind or bad)
    record(
        3,
        "splitting loci",
        ok,
        f"{len(cases)} cases e in [-6,6], 0<j-i<=8: kernel {len(cases) - len(kern)}, specialize {len(cases) - len(special)}, "
        f"induction {len(cases) - len(ind)}; sweep suite {len(bad)} failed checks",
    )
    assert ok, (kern, special, ind, bad)


def test_criterion_4_kappa(sweep):
    results, _ = sweep
    bad = failures(by_suite(results, "kappa", "recursions"))
    km11 = all(kappa(-1, 1, g, d).value == REDUCED_BASE.const(d) for g, d in CELLS)
    h0 = all(h(0, g, d) == REDUCED_BASE.const(2) for g, d in CELLS)
    closed = sum(1 for r in results if r.suite == "kappa" and r.check == "closed_forms" and r.status == "pass")
    ok = km11 and h0 and not bad and closed == len(CELLS)
    record(4, "kappa", ok, f"closed forms for -1<=i<=4, 0<=j<=8 in {closed}/{len(CELLS)} cells; kappa(-1,1)=d, h0=2; recursions to j=8; {len(bad)} failed checks")
    assert ok, bad


def test_criterion_5_presentation(sweep):
    results, _ = sweep
    sub = by_suite(results, "presentation", "relscor")
    bad = failures(sub)
    power = sum(1 for r in sub if r.check == "power" and r.status == "pass")
    gen = sum(1 for r in sub if r.check == "kappa_generator" and r.status == "pass")
    ok = not bad and power == gen == len(CELLS)
    record(5, "presentation", ok, f"power of (e*a1-2a2p) {power}/{len(CELLS)}, kappa generator {gen}/{len(CELLS)}, relscor to j=8; {len(bad)} failed checks")
    assert ok, bad


def test_criterion_6_theta(sweep):
    results, _ = sweep
    sub = by_suite(results, "theta")
    per_g = defaultdict(set)
    for r in sub:
        if r.status == "pass":
            per_g[(r.g, r.d)].add(r.check)
    need = {"value", "top_power", "socle", "splitting_match"}
    covered = [g for g in GENERA if need <= per_g[(g, g - 1)]]
    bad = failures(sub)
    ok = covered == GENERA and not bad
    record(6, "theta", ok, f"Theta = a1 + a2p, Theta^(g+1) = 0, Theta^g != 0, matches [Sigma(-2,0)] for g in {covered}")
    assert ok, bad


def test_criterion_7_picard(sweep):
    results, _ = sweep
    wrong = []
    for g, d in CELLS:
        if pic_sl2(g, d) != AbelianGroup(2, (8 * g + 4,)):
            wrong.append(("sl2", g, d))
        if pic_pgl2(g, d) != AbelianGroup(2, (8 * g + 4 if g % 2 else 4 * g + 2,)):
            wrong.append(("pgl2", g, d))
    bad = failures(by_suite(results, "picard", "brauer"))
    brauer = sum(1 for r in results if r.suite == "brauer" and r.status == "pass")
    ok = not wrong and not bad and brauer == len(CELLS)
    record(7, "picard", ok, f"SNF groups in {len(CELLS) - len({(g, d) for _, g, d in wrong})}/{len(CELLS)} cells, generators span, Brauer order gcd(d-g+1,2) in {brauer} cells")
    assert ok, (wrong, bad)


ORACLE_SUITES = ("c3", "discriminant", "splitting", "kappa", "recursions", "presentation", "relscor", "theta")


def test_criterion_8_oracle(sweep):
    results, _ = sweep
    oracle = [r for r in results if r.check.startswith("oracle")]
    bad = failures(oracle)
    have = defaultdict(set)
    for r in oracle:
        have[(r.g, r.d)].add(r.suite)
    missing = []
    for g, d in CELLS:
        want = set(ORACLE_SUITES) - ({"theta"} if d != g - 1 else set())
        if d - g - 1 not in range(-6, 7):
            want.discard("splitting")
        if not want <= have[(g, d)]:
            missing.append((g, d, sorted(want - have[(g, d)])))
    ok = ORACLE_POINTS == 20 and not bad and not missing
    record(8, "oracle", ok, f"{len(oracle)} oracle checks at {ORACLE_POINTS} random rational points each; {len(bad)} failed, {len(missing)} cells missing a suite")
    assert ok, (bad, missing)


def test_criterion_9_determinism(sweep):
    results, seconds = sweep
    serial = to_json(results)
    parallel = to_json(run_suites(None, None, ["all"], jobs=2, cell_list=CELLS))
    ok = serial == parallel
    record(9, "determinism", ok, f"jobs=1 and jobs=2 reports {'identical' if ok else 'differ'} ({len(serial.encode())} bytes); serial sweep took {seconds:.1f}s")
    assert ok
