"""Every acceptance criterion at its stated tolerance, one pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines, or use
``pycod selftest`` for the same checks outside pytest.
"""
import io

import pytest

from pycod.acceptance import CRITERIA, evaluate, format_line, run


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"c{c.number:02d}" for c in CRITERIA])
def test_criterion(criterion):
    ok, detail, seconds = evaluate(criterion)
    print(format_line(criterion, ok, detail, seconds))
    assert ok, detail


def test_criteria_numbering():
    assert [c.number for c in CRITERIA] == list(range(1, 12))


def test_runner_reports_every_criterion(monkeypatch):
    # the runner itself, with trivial checks so this stays fast
    fake = [type(c)(c.number, c.title, lambda: (True, "stub")) for c in CRITERIA]
    monkeypatch.setattr("pycod.acceptance.CRITERIA", fake)
    buf = io.StringIO()
    assert run(buf)
    lines = buf.getvalue().splitlines()
    assert sum(line.startswith("PASS") for line in lines) == len(CRITERIA)
    assert lines[-1] == "ALL PASS"


def test_runner_reports_failures(monkeypatch):
    def crash():
        raise RuntimeError("boom")

    fake = [type(CRITERIA[0])(1, "fails", lambda: (False, "nope")),
            type(CRITERIA[0])(2, "crashes", crash)]
    monkeypatch.setattr("pycod.acceptance.CRITERIA", fake)
    buf = io.StringIO()
    assert not run(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0].startswith("FAIL [ 1] fails")
    assert "RuntimeError: boom" in lines[1]
    assert lines[-1] == "SOME CRITERIA FAILED"
