import itertools
from fractions import Fraction

import pytest

from tgscodes.codes import as_word, build_phi, generated_code, ideal_power_code, tgs_weight, word_plus
from tgscodes.decoder import (
    CLEAN,
    CORRECTED,
    FAILED,
    build_coset_table,
    coset_table_for,
    decode,
    decoding_radius,
    error_patterns,
    nearest_codeword,
    simulate_channel,
    stratification,
)
from tgscodes.errors import UsageError
from tgscodes.fixtures import load_code_fixture
from tgscodes.quotient import build_quotient

import oracles


@pytest.fixture
def mid_power():
    return load_code_fixture("mid-power")


def test_coset_table(mid_power):
    table = coset_table_for(mid_power)
    sizes = sorted(len(ws) for ws in table.classes.values())
    assert sizes == [8, 19]
    big = max(table.classes, key=lambda c: len(table.classes[c]))
    m3 = mid_power.tgs
    assert [m3.labels(w) for w in table.leaders[big]] == [["0", "0", "1"], ["0", "1", "0"], ["1", "0", "0"]]
    assert m3.labels(table.chosen[big]) == ["0", "0", "1"]
    assert not table.all_unique


def test_table_partitions_word_space(mid_power):
    table = coset_table_for(mid_power)
    all_words = sorted(w for ws in table.classes.values() for w in ws)
    assert all_words == list(itertools.product(range(3), repeat=3))


def test_leaders_are_minimal(mid_power):
    t = mid_power.tgs
    table = coset_table_for(mid_power)
    for c, ws in table.classes.items():
        low = min(tgs_weight(t, w) for w in ws)
        assert {w for w in ws if tgs_weight(t, w) == low} == set(table.leaders[c])


def test_zero_class_is_the_code(mid_power):
    table = coset_table_for(mid_power)
    assert set(table.classes[table.zero_class]) == set(mid_power)


@pytest.mark.parametrize("word, out, status, ambiguous", [
    ("a,0,1", "a,0,0", CORRECTED, True),
    ("1,1,0", "1,1,0", FAILED, True),
    ("a,0,a", "a,0,a", CLEAN, False),
])
def test_known_decodes(mid_power, word, out, status, ambiguous):
    t = mid_power.tgs
    res = decode(coset_table_for(mid_power), mid_power, as_word(t, word))
    assert res.output == as_word(t, out)
    assert res.status == status
    assert res.ambiguous == ambiguous
    assert ("ambiguous-leader" in res.flags) == ambiguous


def test_exhaustive_rate(mid_power):
    rep = simulate_channel(mid_power, w_max=1)
    assert (rep.successes, rep.trials) == (24, 56)
    assert Fraction(rep.successes, rep.trials) == Fraction(3, 7)


def test_rate_recount(mid_power):
    # independent recount of the exhaustive w_max = 1 run
    t = mid_power.tgs
    table = coset_table_for(mid_power)
    ok = total = 0
    for c in mid_power:
        for e in itertools.product(t.carrier, repeat=3):
            if tgs_weight(t, e) > 1:
                continue
            total += 1
            ok += decode(table, mid_power, word_plus(t, c, e)).output == c
    assert (ok, total) == (24, 56)


def test_nearest_on_repetition(m3):
    code = generated_code(m3, ["0,0,0", "a,a,a"])
    rep = simulate_channel(code, decoder="nearest", w_max=1)
    assert rep.rate == 1.0
    assert rep.trials == 2 * 7
    near = nearest_codeword(code, as_word(m3, "a,0,a"))
    assert m3.labels(near.word) == ["a", "a", "a"] and near.unique


def test_sampled_needs_seed(mid_power):
    with pytest.raises(UsageError):
        simulate_channel(mid_power, mode="sampled")


def test_sampled_is_reproducible(mid_power):
    a = simulate_channel(mid_power, mode="sampled", trials=200, seed=7)
    b = simulate_channel(mid_power, mode="sampled", trials=200, seed=7)
    assert a == b and a.failures == b.failures
    assert a.trials == 200


def test_error_patterns_count(m3):
    pats = list(error_patterns(m3, 3, 2))
    assert len(pats) == 1 + 3 * 2 + 3 * 4
    assert len(set(pats)) == len(pats)


def test_syndrome_decoder_needs_morphism(m3):
    code = generated_code(m3, ["a,a"])
    with pytest.raises(UsageError):
        coset_table_for(code)


def test_radius_reports_both_readings(mid_power):
    r = decoding_radius(mid_power)
    assert (r.t, r.d, r.mu_literal, r.t_literal) == (0, 1, 1, 0)


def test_table_with_zero_ideal(m3):
    phi = build_phi(m3, "1,1", "1,1")
    q = build_quotient(m3, ["0"])
    table = build_coset_table(phi, q)
    for c, ws in table.classes.items():
        assert all(oracles.phi_value(m3, phi.A, phi.B, w) == q.classes[c][0] for w in ws)


def test_stratification_orders_by_height(mid_power):
    rows = stratification(coset_table_for(mid_power))
    assert [r["syndrome"] for r in rows] == ["0+I", "1+I"]
    assert [r["height"] for r in rows] == [0, 1]


def test_syndrome_invariance_mid_power(mid_power):
    t = mid_power.tgs
    table = coset_table_for(mid_power)
    for c in mid_power:
        for e in itertools.product(t.carrier, repeat=3):
            assert table.syndrome(word_plus(t, c, e)) == table.syndrome(e)


def test_n1_unique_leader_counterexample(m3):
    # every leader is unique here, yet ominus wipes the codeword: c=(a), e=(1) -> (0)
    code = ideal_power_code(m3, ["0", "a"], 1, morphism=build_phi(m3, "1", "1"))
    table = coset_table_for(code)
    assert table.all_unique
    res = decode(table, code, word_plus(m3, (1,), (2,)))
    assert res.output == (0,)
