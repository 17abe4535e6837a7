import json

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from swrecon.de import (
    DegreeDistribution, DEParams, EnsembleError, concentrated_rho, de_converges, de_run, search,
    threshold,
)

FAST = DEParams(n_pop=20_000, max_iters=300, stall_window=50)
R36 = DegreeDistribution.regular(3, 6)


def test_regular_rates():
    assert R36.design_rate == pytest.approx(0.5)
    assert R36.compression_rate == pytest.approx(0.5)
    assert DegreeDistribution.regular(3, 5).design_rate == pytest.approx(0.4)
    assert DegreeDistribution({2: 0.5, 4: 0.5}, {6: 1.0}).design_rate == pytest.approx(1 - (1 / 6) / (0.25 + 0.125))


def test_endpoints():
    assert de_run(R36, 0.0, FAST)[:2] == (True, 0)
    assert not de_converges(R36, 0.5, FAST)


def test_regular_36_either_side_of_threshold():
    assert de_converges(R36, 0.07, FAST)
    assert not de_converges(R36, 0.10, FAST)


def test_degenerate_low_rate_ensemble_has_high_threshold():
    # design rate 1 - (0.99/2 + 0.01/3)/(1/2) ~ 0.0033: almost no compression
    dd = DegreeDistribution({2: 1.0}, {2: 0.99, 3: 0.01})
    slow = DEParams(n_pop=20_000, max_iters=3000, stall_window=None)
    assert de_converges(dd, 0.4, slow)


def test_lower_rate_tolerates_more_noise():
    lam = {3: 1.0}
    lo_rate = DegreeDistribution(lam, concentrated_rho(lam, 0.3))
    assert de_converges(lo_rate, 0.12, FAST)
    assert not de_converges(R36, 0.12, FAST)


def test_threshold_bracket_invariant():
    rep = threshold(R36, tol=0.01, params=FAST, lo=0.05, hi=0.12)
    assert rep.hi - rep.lo <= 0.01
    assert rep.lo <= rep.p_star <= rep.hi
    assert de_converges(R36, rep.lo, FAST) and not de_converges(R36, rep.hi, FAST)
    assert 0.075 <= rep.p_star <= 0.095
    assert rep.to_dict()["n_pop"] == FAST.n_pop


def test_threshold_bad_lower_bracket():
    with pytest.raises(ValueError):
        threshold(R36, params=FAST, lo=0.2)


def test_de_is_deterministic():
    assert de_run(R36, 0.083, FAST) == de_run(R36, 0.083, FAST)


def test_json_round_trip():
    dd = DegreeDistribution({2: 0.3, 3: 0.4, 8: 0.3}, {7: 0.5, 8: 0.5})
    assert DegreeDistribution.from_json(dd.to_json()) == dd
    assert json.loads(dd.to_json())["lambda"][0] == [2, 0.3]


@pytest.mark.parametrize("lam,rho", [
    ({3: 0.5}, {6: 1.0}),          # lambda does not sum to 1
    ({1: 1.0}, {6: 1.0}),          # degree-1 variables
    ({3: 1.0}, {}),                # empty rho
    ({6: 1.0}, {3: 1.0}),          # negative design rate
    ({3: -0.1, 4: 1.1}, {6: 1.0}),
])
def test_invalid_distributions(lam, rho):
    with pytest.raises(EnsembleError):
        DegreeDistribution(lam, rho)


def test_from_json_missing_key():
    with pytest.raises(EnsembleError):
        DegreeDistribution.from_json('{"lambda": [[3, 1.0]]}')


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.integers(2, 12), st.floats(0.05, 1.0), min_size=1, max_size=4),
       st.floats(0.2, 0.8))
def test_concentrated_rho_hits_rate(raw, rate):
    total = sum(raw.values())
    lam = {d: w / total for d, w in raw.items()}
    try:
        rho = concentrated_rho(lam, rate)
    except EnsembleError:
        assume(False)
    assert len(rho) <= 2
    if len(rho) == 2:
        a, b = sorted(rho)
        assert b == a + 1
    assert DegreeDistribution(lam, rho).design_rate == pytest.approx(rate, abs=1e-9)


TINY = DEParams(n_pop=3000, max_iters=150, stall_window=30)


def test_search_budget_one_returns_seed():
    res = search(0.5, 8, budget=1, tol=0.01, params=TINY)
    assert res.ensemble == res.baseline
    assert res.accepted == 0 and res.evaluations == 1
    assert res.ensemble.lam == ((3, 1.0),)


def test_search_is_deterministic_and_never_worse():
    a = search(0.5, 8, budget=6, seed=4, tol=0.01, params=TINY)
    b = search(0.5, 8, budget=6, seed=4, tol=0.01, params=TINY)
    assert a.ensemble == b.ensemble and a.report == b.report
    assert a.report.p_star >= a.baseline_report.p_star
    assert a.ensemble.design_rate == pytest.approx(0.5, abs=1e-9)
    assert a.ensemble.max_degree <= 8


def test_search_rejects_bad_arguments():
    with pytest.raises(EnsembleError):
        search(1.2, 8, 1)
    with pytest.raises(EnsembleError):
        search(0.5, 2, 1)
    with pytest.raises(ValueError):
        search(0.5, 8, 0)
