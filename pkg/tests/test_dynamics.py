import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caperiod.config import BudgetExceeded, PeriodicConfig, TwoSidedConfig, equals, parse_config, step
from caperiod.dynamics import column_period, eventual_period, orbit, orbit_cycle, trace
from caperiod.rules import elementary
from oracles import naive_cyclic_step, naive_window_after, table_local
from strategies import periodic_configs, rule_and_config, rules

EX2_ROWS = ["wr000w", "wrr00w", "wr0r0w", "wrr0rw", "wr0r0w"]


def test_example2_trace(ex2):
    x = parse_config("^(wr000w)^", ex2.alphabet)
    assert trace(ex2, x, (0, 5), 4).render(ex2.alphabet) == EX2_ROWS


def test_identity_trace_rows_equal(identity):
    x = TwoSidedConfig((0, 1), (1, 1, 0), (0,), -2)
    rows = trace(identity, x, (-6, 6), 5).rows
    assert len(set(rows)) == 1


def test_rule90_pascal():
    x = TwoSidedConfig((0,), (1,), (0,), 0)
    rows = trace(elementary(90), x, (-2, 2), 2).rows
    assert rows == ((0, 0, 1, 0, 0), (0, 1, 0, 1, 0), (1, 0, 0, 0, 1))


def test_orbit_cycle_examples(ex2, identity):
    assert tuple(orbit_cycle(ex2, parse_config("^(wr000w)^", ex2.alphabet))) == (2, 2)
    assert tuple(orbit_cycle(identity, TwoSidedConfig((0,), (1, 0, 1), (1,), 3))) == (0, 1)
    assert tuple(orbit_cycle(elementary(170), PeriodicConfig((0, 1)))) == (0, 2)


def test_column_period_examples(ex2, identity):
    x = parse_config("^(wr000w)^", ex2.alphabet)
    assert tuple(column_period(ex2, x, (0, 5))) == (2, 2)
    assert tuple(column_period(identity, PeriodicConfig((1, 0, 0)), (0, 2))) == (0, 1)
    assert tuple(column_period(ex2, parse_config("^(w000)^", ex2.alphabet), (0, 0))) == (0, 1)


def test_budget_is_reported():
    with pytest.raises(BudgetExceeded):
        orbit(elementary(170), TwoSidedConfig((0,), (1,), (0,), 0), max_steps=50)
    with pytest.raises(BudgetExceeded):
        orbit(elementary(90), TwoSidedConfig((0,), (1,), (0,), 0), max_center=16)


def test_eventual_period_minimality():
    seq = [5, 4, 1, 2, 1, 2, 1, 2]
    assert tuple(eventual_period(seq, 2, 4)) == (2, 2)
    assert tuple(eventual_period([1, 1, 1, 1], 1, 2)) == (0, 1)


def _naive_cycle(f, ca, pattern):
    seen, cur, t = {}, list(pattern), 0
    while tuple(cur) not in seen:
        seen[tuple(cur)] = t
        cur = naive_cyclic_step(f, cur, ca.left, ca.right)
        t += 1
    return seen[tuple(cur)], t - seen[tuple(cur)]


@settings(max_examples=150, deadline=None)
@given(rules(), st.data())
def test_periodic_orbit_matches_naive_cycle(ca, data):
    # patterns of a fixed length anchored at 0 are equal exactly when the configs are
    x = data.draw(periodic_configs(ca.k))
    f = table_local(ca.table, ca.k, ca.d)
    m, p = orbit_cycle(ca, x)
    mn, pn = _naive_cycle(f, ca, x.pattern())
    assert (m, p) == (mn, pn)
    cur = x
    states = [cur]
    for _ in range(m + p):
        cur = step(ca, cur)
        states.append(cur)
    assert equals(states[m + p], states[m])
    assert all(not equals(states[m], states[m + q]) for q in range(1, p))
    assert all(not equals(states[j], states[j + p]) for j in range(m))


@settings(max_examples=100, deadline=None)
@given(rule_and_config(), st.integers(0, 4))
def test_trace_matches_block_iteration(pair, T):
    ca, x = pair
    f = table_local(ca.table, ca.k, ca.d)
    rows = trace(ca, x, (-3, 4), T).rows
    for t, row in enumerate(rows):
        assert row == naive_window_after(f, x, ca.left, ca.right, -3, 4, t)
