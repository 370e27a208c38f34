import json

import pytest

from hyperjac.cli import main, parse_range
from hyperjac.suites import CheckResult, SUITES, cells, default_cells, expand_suites, run_cell, run_suites, summary, to_json, to_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("2..5") == (2, 5)
    assert parse_range("-3..-1") == (-3, -1)
    assert parse_range("4") == (4, 4)


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--g", "2", "--d", "3", "--suite", "c3")
    assert code == 0
    assert out.splitlines()[0] == "g=2 d=3 c3/zzeta PASS (8g+4)b1 = 20*b1"
    assert out.splitlines()[-1].startswith("summary: ")
    assert out.splitlines()[-1].endswith(" 0 fail")


def test_verify_json(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--g", "2..3", "--d", "-2..-1", "--suite", "picard", "--format", "json", "-o", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["summary"] == {"pass": 16, "fail": 0}
    first = doc["cells"][0]
    assert set(first) == {"g", "d", "suite", "check", "status", "witness", "ms"}
    assert (first["g"], first["d"], first["check"], first["ms"]) == (2, -2, "sl2", 0)


def test_verify_timing_records_ms(capsys):
    code, out, _ = run(capsys, "verify", "--g", "2", "--d", "3", "--suite", "brauer", "--format", "json", "--timing")
    assert code == 0
    assert json.loads(out)["cells"][0]["ms"] >= 0


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--g", "2", "--d", "3", "--suite", "bogus"],
        ["verify", "--g", "1..3", "--d", "3"],
        ["verify", "--g", "3..2", "--d", "3"],
        ["verify", "--g", "2", "--d", "3", "--jobs", "0"],
        ["verify", "--g", "2"],
        ["verify", "--default-sweep", "--g", "2"],
        ["eval", "--g", "1", "--d", "3", "a1"],
        ["eval", "--g", "2", "--d", "3", "a1 +"],
        ["eval", "--g", "2", "--d", "3", "--flavor", "rigid", "a1"],
        ["picard", "--g", "2", "--d", "3", "--group", "gl2"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_bogus_suite_lists_valid_names(capsys):
    _, _, err = run(capsys, "verify", "--g", "2", "--d", "3", "--suite", "bogus")
    assert "valid suites" in err and "brauer" in err


def test_eval(capsys):
    assert run(capsys, "eval", "--g", "2", "--d", "3", "zeta^2") == (0, "a1*zeta - a2 - a2p*z\n", "")
    code, out, _ = run(capsys, "eval", "--g", "2", "--d", "-1", "--flavor", "reduced", "z^2")
    assert (code, out) == (0, "0\n")
    code, _, err = run(capsys, "eval", "--g", "2", "--d", "3", "a1 $")
    assert code == 2 and "byte 3" in err


def test_picard(capsys):
    assert run(capsys, "picard", "--g", "2", "--d", "3", "--group", "sl2")[1] == "Z^2 ⊕ Z/20\n"
    assert run(capsys, "picard", "--g", "2", "--d", "4")[1] == "Z^2 ⊕ Z/10\n"


def test_present(capsys):
    code, out, _ = run(capsys, "present", "--g", "3", "--d", "0")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "A*(g=3, d=0) = Q[a1, a2p] / ((-4*a1 - 2*a2p)^4)"
    assert lines[1] == "  in kappa classes: Q[k01, km12] / ((-2*km12)^4)"
    assert lines[-1] == "  checks: PASS"


def test_expand_suites():
    assert expand_suites(["all"]) == list(SUITES)
    assert expand_suites(["brauer", "c3", "c3"]) == ["c3", "brauer"]
    with pytest.raises(ValueError):
        expand_suites(["nope"])


def test_cells():
    assert cells((2, 3), (0, 1)) == [(2, 0), (2, 1), (3, 0), (3, 1)]
    assert len(default_cells()) == 77
    assert default_cells()[0] == (2, -2) and default_cells()[-1] == (8, 14)
    with pytest.raises(ValueError):
        cells((1, 2), (0, 0))


def test_run_cell_reports_crash_as_failure(monkeypatch):
    from hyperjac import suites

    def boom(c):
        raise RuntimeError("kaput")

    monkeypatch.setitem(suites.RUNNERS, "brauer", boom)
    (r,) = run_cell(2, 3, ["brauer"])
    assert (r.check, r.status) == ("error", "fail")
    assert "kaput" in r.witness


def test_theta_only_at_d_equal_g_minus_1():
    assert run_cell(3, 4, ["theta"]) == []
    assert {r.check for r in run_cell(3, 2, ["theta"])} == {"value", "top_power", "socle", "splitting_match", "oracle"}


def test_report_ordering_and_text():
    res = run_suites((2, 2), (3, 4), ["brauer", "picard"])
    keys = [(r.d, SUITES.index(r.suite)) for r in res]
    assert keys == sorted(keys)
    assert summary(res) == {"pass": 10, "fail": 0}
    assert to_text(res).endswith("summary: 10 pass, 0 fail\n")
    assert to_json(res).endswith("}\n")


def test_checkresult_text():
    r = CheckResult(2, 3, "c3", "zzeta", "fail", "0", label="(8g+4)b1")
    assert r.to_text() == "g=2 d=3 c3/zzeta FAIL (8g+4)b1 = 0"
    assert "label" not in r.to_json()


def test_parallel_matches_serial():
    a = to_json(run_suites((2, 3), (1, 3), ["c3", "picard", "brauer"], jobs=1))
    b = to_json(run_suites((2, 3), (1, 3), ["c3", "picard", "brauer"], jobs=3))
    assert a == b
