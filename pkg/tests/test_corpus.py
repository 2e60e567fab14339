import pytest

from frontforge import corpus

ALL_CASES = corpus.load_cases()
FAST = [c for c in ALL_CASES if c.cost == "fast"]
SLOW = [c for c in ALL_CASES if c.cost == "slow"]


def test_corpus_is_populated():
    assert len(FAST) >= 20
    assert len(SLOW) >= 6
    ids = [c.identifier for c in ALL_CASES]
    assert len(ids) == len(set(ids))


def test_every_case_names_its_oracle():
    for case in ALL_CASES:
        assert case.provenance, f"{case.identifier} lacks provenance"
        assert case.command.split()[0] in corpus._REGISTRY


@pytest.mark.parametrize("case", FAST, ids=lambda c: c.identifier)
def test_fast_case(case):
    result = corpus.check(case)
    assert result.passed, result.detail


@pytest.mark.slow
@pytest.mark.parametrize("case", SLOW, ids=lambda c: c.identifier)
def test_slow_case(case):
    result = corpus.check(case)
    assert result.passed, result.detail


def test_unknown_command_reports_failure():
    bad = corpus.PinnedCase("bogus", "no_such_thing 1", 0.0, "abs", 1.0, "none", "fast")
    result = corpus.check(bad)
    assert not result.passed
    assert "command failed" in result.detail


def test_malformed_case_file_raises(tmp_path):
    (tmp_path / "broken.txt").write_text("id = broken\n")  # missing fields
    with pytest.raises(ValueError):
        corpus.load_cases(str(tmp_path))


def test_comparison_kinds(tmp_path):
    checks = [
        ("kind = rel\nexpect = 2.0\ntol = 1e-6", "bessel_k 0 1.0", False),
        ("kind = min\nexpect = 0.1", "bessel_k 0 1.0", True),
        ("kind = max\nexpect = 0.1", "bessel_k 0 1.0", False),
    ]
    for body, command, expected in checks:
        case_txt = f"id = t\ncommand = {command}\n{body}\nprovenance = x\ncost = fast\n"
        (tmp_path / "t.txt").write_text(case_txt)
        [case] = corpus.load_cases(str(tmp_path))
        assert corpus.check(case).passed is expected
