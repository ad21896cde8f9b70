import pytest

from tgscodes.claims import (
    CODE_CLAIMS,
    FALSIFIED,
    NOT_MET,
    STRUCTURE_CLAIMS,
    VERIFIED,
    bundled_suite,
    replay,
    run_suite,
    search_valid_tgs,
    structure_claims,
)
from tgscodes.algebra import check_axioms
from tgscodes.errors import UsageError


@pytest.fixture(scope="module")
def suite():
    return bundled_suite()


def test_matrix_covers_everything(suite):
    m = suite.matrix()
    for c in STRUCTURE_CLAIMS:
        assert set(m[c]) >= {"M3", "P3", "M3xM3", "chain2"}
    for c in CODE_CLAIMS:
        assert "mid-power" in m[c]
    assert not suite.load_failures


@pytest.mark.parametrize("fixture", ["M3", "M3xM3", "chain2"])
def test_structure_claims_verified(suite, fixture):
    for c in STRUCTURE_CLAIMS:
        assert suite.get(c, fixture).status == VERIFIED, c


def test_p3_hypotheses_not_met(suite):
    for c in STRUCTURE_CLAIMS:
        assert suite.get(c, "P3").status == NOT_MET


def test_known_falsifications(suite):
    assert suite.get("interaction-join", "mid-power").status == FALSIFIED
    assert suite.get("decoder-correctness", "mid-power-n1").status == FALSIFIED
    assert suite.get("unique-leaders", "mid-power").status == FALSIFIED
    assert suite.get("syndrome-invariance", "mid-power").status == VERIFIED


def test_every_counterexample_replays(suite):
    seen = 0
    for r in suite.results:
        if r.counterexample is not None:
            assert replay(r.counterexample), (r.claim, r.fixture)
            seen += 1
    assert seen >= 3


def test_tampered_counterexample_does_not_replay(suite):
    ce = dict(suite.get("interaction-join", "mid-power").counterexample)
    ce["join"] = ce["syndrome"]
    assert not replay(ce)


def test_report_is_deterministic():
    a = bundled_suite().to_document()
    b = bundled_suite().to_document()
    assert a == b
    assert "wall_time" not in a["results"][0]


def test_summary_marks_falsified(suite):
    assert "FALSE" in suite.summary()


def test_search_finds_only_valid():
    found = search_valid_tgs(3, 3, 500)
    assert found
    assert all(check_axioms(t).ok for t in found)
    assert search_valid_tgs(3, 3, 500) == found


def test_search_limits():
    with pytest.raises(UsageError):
        search_valid_tgs(0, 5)


def test_search_results_feed_the_suite():
    found = search_valid_tgs(11, 3, 300)[:2]
    report = run_suite([(t.name, t) for t in found])
    assert {r.fixture for r in report.results} == {t.name for t in found}
    for t in found:
        assert all(r.status != NOT_MET for r in structure_claims(t.name, t))
