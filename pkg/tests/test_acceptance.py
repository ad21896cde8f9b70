"""Acceptance criteria, one test per criterion (criterion 5 has two halves).

A PASS/FAIL line per criterion is printed in the pytest terminal summary.
Run standalone with ``python tests/test_acceptance.py``.
"""
import filecmp
import itertools
import math
import time

import pytest

from tgscodes.algebra import check_axioms
from tgscodes.claims import FALSIFIED, VERIFIED, bundled_suite, replay
from tgscodes.cli import main
from tgscodes.codes import as_word, code_params, generated_code, ideal_power_code, lattice_prediction, tgs_weight, word_plus
from tgscodes.decoder import coset_table_for, decode, simulate_channel
from tgscodes.fixtures import CODE_FIXTURES, TGS_FIXTURES, load_code_fixture, load_tgs_fixture
from tgscodes.ideals import enumerate_k_ideals, is_k_ideal
from tgscodes.quotient import build_quotient

import oracles


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


def test_criterion_1_mid_power_parameters():
    with Clock(1.0):
        m3 = load_tgs_fixture("M3")
        code = ideal_power_code(m3, ["0", "a"], 3, morphism=load_code_fixture("mid-power").morphism)
        p = code_params(code)
        table = coset_table_for(code)
    assert p.size == 8
    assert abs(p.k - math.log(8) / math.log(3)) < 1e-9
    assert p.d == 1
    assert p.quotient_size == 2
    assert sorted(len(ws) for ws in table.classes.values()) == [8, 19]


def test_criterion_2_inconsistency_detection(capsys):
    with Clock(1.0):
        status = main(["check", "fixtures/P3.json"])
        out = capsys.readouterr().out
        p3 = load_tgs_fixture("P3")
        verdict = is_k_ideal(p3, ["0", "a"])
    assert status == 0
    assert "monotone" in out and "[a,a,1] = 1 but [a,1,1] = a" in out
    assert verdict.ok is False
    x, y, z = verdict.witness[:3]
    assert p3.labels((x, y, z)) == ["a", "1", "a"]
    assert p3.label(p3.ternary[x][y][z]) == "1"


def test_criterion_3_distance_and_dimension_oracles():
    checked = 0
    with Clock(10.0):
        for name in TGS_FIXTURES:
            t = load_tgs_fixture(name)
            if not check_axioms(t).ok:
                continue
            for ideal in enumerate_k_ideals(t):
                for n in (1, 2, 3):
                    code = ideal_power_code(t, ideal, n)
                    brute = oracles.naive_power(t, ideal.members, n)
                    assert len(code) == len(brute) == len(ideal) ** n
                    assert oracles.pairwise_distance(brute) == lattice_prediction(t, ideal, n), (name, ideal.labels(), n)
                    checked += 1
    assert checked == 3 * (3 + 9 + 2)


def test_criterion_4_syndrome_invariance():
    violations = pairs = 0
    with Clock(5.0):
        for name in CODE_FIXTURES:
            code = load_code_fixture(name)
            if code.tgs.name != "M3" or code.morphism is None or code.n > 3:
                continue
            t, table = code.tgs, coset_table_for(code)
            for c in code:
                for e in itertools.product(t.carrier, repeat=code.n):
                    pairs += 1
                    violations += table.syndrome(word_plus(t, c, e)) != table.syndrome(e)
    assert pairs > 0
    assert violations == 0


def test_criterion_5a_decoder_correct_when_leaders_unique():
    # For every fixture whose leaders are all unique, decode c + e for every
    # codeword c and every error e no heavier than its own class leader.
    failures = []
    fixtures = 0
    with Clock(10.0):
        for name in CODE_FIXTURES:
            code = load_code_fixture(name)
            if code.morphism is None:
                continue
            table = coset_table_for(code)
            if not table.all_unique:
                continue
            fixtures += 1
            t = code.tgs
            for c in code:
                for e in itertools.product(t.carrier, repeat=code.n):
                    if tgs_weight(t, e) > table.leader_weight(table.syndrome(e)):
                        continue
                    out = decode(table, code, word_plus(t, c, e)).output
                    if out != c:
                        failures.append((name, t.labels(c), t.labels(e), t.labels(out)))
    assert fixtures > 0
    assert failures == [], f"{len(failures)} decoding failures, first: {failures[0]}"


def test_criterion_5b_ambiguous_leaders_flagged():
    with Clock(10.0):
        code = load_code_fixture("mid-power")
        t = code.tgs
        table = coset_table_for(code)
        res = decode(table, code, as_word(t, "a,0,1"))
        rep = simulate_channel(code, w_max=1, mode="exhaustive")
    assert not table.all_unique
    assert "ambiguous-leader" in res.flags
    assert rep.rate < 1.0
    assert (rep.successes, rep.trials) == (24, 56)
    assert rep.to_document(t)["rate"] == "0.428571428571"


def test_criterion_6_generated_code_distance():
    with Clock(2.0):
        m3 = load_tgs_fixture("M3")
        code = generated_code(m3, ["0,0,0", "a,a,a"])
        p = code_params(code)
        rep = simulate_channel(code, decoder="nearest", w_max=1)
    assert (p.size, p.d, p.t) == (2, 3, 1)
    assert rep.rate == 1.0


def test_criterion_7_quotient_soundness():
    with Clock(1.0):
        m3 = load_tgs_fixture("M3")
        q = build_quotient(m3, ["0", "a"])
        ok = check_axioms(q.tgs).ok
    assert q.well_defined
    assert set(q.classes[q.zero_class]) == {m3.index("0"), m3.index("a")}
    assert ok


def test_criterion_8_claim_adjudication():
    with Clock(10.0):
        suite = bundled_suite()
    valid = [n for n in TGS_FIXTURES if check_axioms(load_tgs_fixture(n)).ok]
    for name in valid:
        assert suite.get("lattice-monotonicity", name).status == VERIFIED
        assert suite.get("localized-propagation", name).status == VERIFIED
    for name in CODE_FIXTURES:
        r = suite.get("localized-propagation", name)
        assert r.status == VERIFIED
    ij = suite.get("interaction-join", "mid-power")
    assert ij.status == FALSIFIED
    assert replay(ij.counterexample)


BUNDLED_COMMANDS = [
    ["check", "M3"],
    ["check", "fixtures/P3.json", "--format", "json"],
    ["ideals", "M3xM3", "--format", "csv"],
    ["ideals", "P3", "--force", "--literal-ideals"],
    ["lattice", "M3xM3", "--format", "json"],
    ["quotient", "M3", "--ideal", "0,a", "--format", "json"],
    ["code", "params", "--spec", "mid-power"],
    ["code", "export", "--spec", "repetition"],
    ["cosets", "--code", "mid-power", "--format", "json"],
    ["decode", "--code", "mid-power", "--word", "a,0,1", "--format", "json"],
    ["decode", "--code", "repetition", "--word", "a,0,a", "--decoder", "nearest"],
    ["simulate", "--code", "mid-power", "--wmax", "1", "--format", "csv"],
    ["simulate", "--code", "mid-power", "--mode", "sampled", "--trials", "300", "--seed", "5", "--format", "json"],
    ["fixtures", "list", "--format", "json"],
    ["fixtures", "verify"],
    ["verify-claims", "--format", "json"],
]


@pytest.mark.parametrize("argv", BUNDLED_COMMANDS, ids=lambda a: " ".join(a))
def test_criterion_9_byte_identical_runs(tmp_path, argv):
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}.out"
        assert main(argv + ["--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0]


def test_criterion_9_file_outputs_identical(tmp_path):
    for k in range(2):
        d = tmp_path / str(k)
        assert main(["verify-claims", "--out", str(d / "report.json"), "--counterexamples", str(d / "ce")]) == 0
        assert main(["fixtures", "export", str(d / "bundle")]) == 0
        assert main(["quotient", "M3", "--ideal", "0,a", "--export", str(d / "q.json")]) == 0
    cmp = filecmp.dircmp(tmp_path / "0", tmp_path / "1")
    for sub in ("ce", "bundle"):
        names = sorted(p.name for p in (tmp_path / "0" / sub).iterdir())
        match, mismatch, errors = filecmp.cmpfiles(tmp_path / "0" / sub, tmp_path / "1" / sub, names, shallow=False)
        assert not mismatch and not errors and match
    assert filecmp.cmp(tmp_path / "0" / "report.json", tmp_path / "1" / "report.json", shallow=False)
    assert filecmp.cmp(tmp_path / "0" / "q.json", tmp_path / "1" / "q.json", shallow=False)
    assert not cmp.diff_files


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
