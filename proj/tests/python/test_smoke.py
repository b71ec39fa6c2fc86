import math

import pytest

import circot


def atom(x, denominator=None):
    return circot.Histogram([x], [1.0], denominator)


def test_histogram_normalizes_positions():
    h = circot.Histogram([1.25, 0.5], [0.5, 0.5])
    assert h.positions == [0.25, 0.5]
    assert len(h) == 2
    assert h.denominator is None
    assert h.cdf(0.25) == 0.5
    assert h.cdf(1.25) == 1.5


def test_from_counts():
    h = circot.Histogram.from_counts([0.25, 0.75], [1, 3], 4)
    assert h.masses == [0.25, 0.75]
    assert h.counts == [1, 3]
    assert h.denominator == 4


def test_antipodal_distance():
    assert math.isclose(circot.mk_distance(atom(0.25), atom(0.75), 1.0), 0.5, abs_tol=1e-12)


def test_identical_marginals_cost_nothing():
    h = circot.Histogram([0.3, 0.6], [0.25, 0.75])
    r = circot.minimize(h, h)
    assert r.cost == 0.0
    assert r.exact
    assert r.termination in ("sign-test", "width-test")


def test_closed_form_instance():
    h0, h1 = atom(0.5), atom(1.0)
    for theta in (-0.75, -0.25, 0.3, 0.8):
        expected = 0.25 if theta <= 0 else 0.25 + 2 * theta
        assert math.isclose(circot.avg_cost(h0, h1, 2.0, theta)["value"], expected, abs_tol=1e-12)
    r = circot.minimize(h0, h1, circot.Cost.power(2))
    assert math.isclose(r.cost, 0.25, abs_tol=1e-12)
    lo, hi, lipschitz, provenance = r.bracket
    assert (lo, hi, lipschitz, provenance) == (-6.0, 6.0, 18.0, "analytic")


def test_rational_mode_matches_oracles():
    h0 = circot.Histogram([0.25, 0.75], [0.5, 0.5], 2)
    h1 = circot.Histogram([0.5, 1.0], [0.5, 0.5], 2)
    r = circot.minimize(h0, h1, 1.0)
    assert r.epsilon_used == 0.25
    assert r.denominator == 2
    assert math.isclose(r.cost, circot.oracle_breakpoints(h0, h1, 1.0)[1], abs_tol=1e-12)
    assert math.isclose(r.cost, circot.oracle_rotations(h0, h1, 1.0)[1], abs_tol=1e-12)


def test_plan_recovers_marginals():
    h0 = circot.Histogram([0.1, 0.4, 0.8], [0.2, 0.3, 0.5])
    h1 = circot.Histogram([0.3, 0.9], [0.6, 0.4])
    plan = circot.extract_plan(h0, h1, 2.0)
    sources = [0.0] * 3
    targets = [0.0] * 2
    for a in plan.assignments:
        sources[a.source_atom] += a.mass
        targets[a.target_atom] += a.mass
    assert sources == pytest.approx(h0.masses, abs=1e-12)
    assert targets == pytest.approx(h1.masses, abs=1e-12)
    assert math.isclose(plan.total_cost, circot.minimize(h0, h1, 2.0).cost, abs_tol=1e-12)


def test_convex_plus_periodic_cost():
    cost = circot.Cost.convex_plus_periodic(lambda d: d * d, lambda x: 0.05 * math.sin(2 * math.pi * x))
    assert cost(0.25, 0.5) == pytest.approx(0.0625 + 0.05)
    r = circot.minimize(atom(0.2), atom(0.7), cost)
    assert r.bracket[3] == "eq16-numeric"
    assert r.cost == pytest.approx(0.25 + 0.05 * math.sin(0.4 * math.pi), abs=1e-8)


def test_errors_carry_codes():
    with pytest.raises(circot.CircotError) as info:
        circot.Histogram([0.1, 0.2], [0.4, 0.4])
    assert info.value.code == "MassSumMismatch"
    with pytest.raises(circot.CircotError) as info:
        circot.minimize(atom(0.1), atom(0.2), epsilon=-1.0)
    assert info.value.code == "InvalidEpsilon"
    with pytest.raises(ValueError):
        circot.oracle_rotations(atom(0.1), atom(0.2))
