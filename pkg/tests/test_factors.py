import dataclasses

import pytest

from caperiod.config import PeriodicConfig, TwoSidedConfig, parse_config, shift_by
from caperiod.factors import FactorError, build_periodic_factor, verify_factor
from caperiod.rules import Alphabet, elementary, shift_rule


def enc(ca, s):
    return ca.alphabet.encode(s)


@pytest.fixture
def ex2_factor(ex2):
    return build_periodic_factor(ex2, parse_config("^(wr000w)^", ex2.alphabet), (0, 5))


def test_example2_factor(ex2, ex2_factor):
    f = ex2_factor
    assert (f.p, f.m) == (2, 2)
    assert {ex2.alphabet.render(w) for w in f.class_words} == {"wr0r0w", "wrr0rw"}
    assert f.assignment[enc(ex2, "wr0r0w")] == 0 and f.assignment[enc(ex2, "wrr0rw")] == 1
    reps = [PeriodicConfig(enc(ex2, "wr0r0w")), PeriodicConfig(enc(ex2, "wrr0rw")),
            PeriodicConfig(enc(ex2, "wr0r0w0rr")),
            TwoSidedConfig(enc(ex2, "r0"), enc(ex2, "wrr0rw"), enc(ex2, "0"), 0)]
    assert verify_factor(ex2, f, reps)


def test_identity_and_fixed_word(ex2, identity):
    f = build_periodic_factor(identity, PeriodicConfig((0, 1, 1)), (0, 2))
    assert (f.p, f.m) == (1, 0)
    assert verify_factor(identity, f, [PeriodicConfig((0, 1, 1)), TwoSidedConfig((1,), (0, 1, 1), (0,), 0)])
    g = build_periodic_factor(ex2, parse_config("^(w000)^", ex2.alphabet), (0, 3))
    assert g.p == 1 and g.class_words == (enc(ex2, "w000"),)


def test_misassigned_factor_fails(ex2, ex2_factor):
    # swapping residues of a 2-cycle is itself a rotation, so collapse them instead
    bad = dataclasses.replace(ex2_factor, assignment={w: 0 for w in ex2_factor.class_words})
    assert not verify_factor(ex2, bad, [PeriodicConfig(enc(ex2, "wr0r0w"))])
    swapped = dataclasses.replace(ex2_factor, assignment={
        w: 1 - r for w, r in ex2_factor.assignment.items()})
    assert verify_factor(ex2, swapped, [PeriodicConfig(enc(ex2, "wr0r0w"))])


def test_outside_w_is_an_error(ex2, ex2_factor):
    with pytest.raises(FactorError):
        verify_factor(ex2, ex2_factor, [PeriodicConfig(enc(ex2, "0"))])


def test_nested_window_periods_divide(ex2):
    x = parse_config("^(wr000w)^", ex2.alphabet)
    outer = build_periodic_factor(ex2, x, (0, 5))
    for win in ((0, 0), (1, 1), (1, 3), (2, 4), (0, 3)):
        inner = build_periodic_factor(ex2, x, win)
        assert outer.p % inner.p == 0
    x = PeriodicConfig((1, 0, 0, 1, 1, 0, 1))
    ca = elementary(170)
    outer = build_periodic_factor(ca, x, (0, 6))
    for win in ((0, 0), (2, 3), (1, 5)):
        assert outer.p % build_periodic_factor(ca, x, win).p == 0


def test_repeated_rows_reduce_period():
    # under the shift the column of 0102 reads 0, 1, 0, 2: the word 0 recurs after 2 steps
    ca = shift_rule(Alphabet(("a", "b", "c")))
    x = PeriodicConfig((0, 1, 0, 2))
    f = build_periodic_factor(ca, x, (0, 0))
    assert f.p == 2
    assert f.assignment == {(0,): 0, (1,): 1, (2,): 1}
    assert verify_factor(ca, f, [x, shift_by(x, 1)])
    g = build_periodic_factor(ca, PeriodicConfig((0, 0, 1, 1)), (0, 0))
    assert g.p == 1 and len(set(g.class_words)) == 2


def test_serialisation(ex2, ex2_factor):
    d = ex2_factor.to_dict(ex2.alphabet)
    assert d == {"kind": "factor", "p": 2, "m": 2, "window": [0, 5],
                 "class_words": ["wr0r0w", "wrr0rw"], "residues": [0, 1], "x": "^(wr000w)^"}
