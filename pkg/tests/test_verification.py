from pathlib import Path

import pytest

from finfourier import verification as v

DOCS = Path(__file__).resolve().parent.parent / "docs" / "verdict_table.md"


def test_fast_suites_pass_and_are_reproducible():
    names = ["binomial-identity", "bessel-recurrence", "operator", "continuity"]
    first = v.report_text(v.run_suites(names, seed=3))
    assert v.report_text(v.run_suites(names, seed=3)) == first
    assert first.endswith("4/4 suites passed\n")


def test_identity_checkers():
    assert v.alternating_binomial_failures(20) == []
    assert v.vandermonde_failures(12) == []


def test_tolerance_override_is_used():
    r = v.suite_bessel_recurrence(tol=1e-3)
    assert r.tolerance == 1e-3 and r.passed


def test_rel_dev():
    assert v.rel_dev(0, 0) == 0.0
    assert v.rel_dev(1, 2) == 0.5


def test_suite_failure_is_reported(monkeypatch):
    def boom(**_):
        raise v.EvaluationError("did not converge")

    monkeypatch.setitem(v.SUITES, "kummer", boom)
    (res,) = v.run_suites(["kummer"])
    assert not res.passed and "did not converge" in res.detail


def test_verdict_table_is_current():
    rows = v.verdict_rows()
    assert DOCS.read_text(encoding="utf-8") == v.verdict_markdown(rows)
    verdicts = {r.form: r.verdict for r in rows}
    assert verdicts["G-closed"] == "agrees"
    assert verdicts["a_j(P) printed display"].startswith("disagrees")
    assert verdicts["a_j(Q) printed display"].startswith("disagrees")
    assert all(r.verdict != "DISAGREES" for r in rows)
    printed = [r for r in rows if r.form == "lambda=0 printed formula"]
    assert len(printed) == 2 and all(r.max_dev > 1 for r in printed)


@pytest.mark.parametrize("name", sorted(v.SUITES))
def test_every_suite_is_registered_with_its_name(name):
    assert v.SUITES[name].__name__ == "suite_" + name.replace("-", "_")
