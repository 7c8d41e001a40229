import dataclasses
import itertools

import pytest

from caperiod.config import TwoSidedConfig, equals, is_spatially_periodic, step, window
from caperiod.dynamics import trace
from caperiod.rules import Alphabet, elementary, shift_rule
from caperiod.stp import (
    StpBounds,
    StpCertificate,
    StpError,
    approximant,
    build_y_sequence,
    construct_stp,
    search_stp,
    verify_stp,
    y_prime,
)
from oracles import naive_block, naive_window_after, table_local


def enc(ca, s):
    return ca.alphabet.encode(s)


def test_y_sequence_examples(ex2):
    w, u, v = enc(ex2, "w"), enc(ex2, "00"), enc(ex2, "r0")
    seq = build_y_sequence(w, u, v, 2)
    assert [ex2.alphabet.render(e.word) for e in seq] == [
        "w00w", "wr0" + "w00w" + "00w", "wr0wr0" + "w00w" + "00w00w"]
    assert seq[1].interval == (-3, 6)
    for e in seq:
        assert e.interval[1] - e.interval[0] + 1 == len(e.word)


def test_bad_ingredients():
    with pytest.raises(StpError):
        build_y_sequence((0,), (0,), (0,), 1)
    with pytest.raises(StpError):
        build_y_sequence((0,), (0, 1), (1,), 1)
    with pytest.raises(StpError):
        y_prime((), (0,), (1,))


def test_example2_certificate(ex2):
    cert = construct_stp(ex2, "w", "00", "r0")
    assert cert.temporal_period == 2
    assert not is_spatially_periodic(cert.point)[0]
    assert verify_stp(ex2, cert)
    assert StpCertificate.from_dict(cert.to_dict(ex2.alphabet), ex2.alphabet) == cert
    y = y_prime(enc(ex2, "w"), enc(ex2, "00"), enc(ex2, "r0"))
    cur = y
    for _ in range(cert.temporal_period):
        cur = step(ex2, cur)
    assert equals(cur, y)
    # left tail alternates between (wr0) and (wrr); w00w and the right tail stay
    rows = trace(ex2, y, (-3, 6), 2).render(ex2.alphabet)
    assert rows == ["wr0w00w00w", "wrrw00w00w", "wr0w00w00w"]


def _naive_periodic(ca, cfg, m):
    f = table_local(ca.table, ca.k, ca.d)
    return naive_window_after(f, cfg, ca.left, ca.right, -30, 30, m) == window(cfg, -30, 30)


def test_tampered_certificates_fail(ex2):
    cert = construct_stp(ex2, "w", "00", "r0")
    assert not verify_stp(ex2, dataclasses.replace(cert, temporal_period=1))
    p = cert.point
    lo, hi = -12, 12
    rejected = 0
    for i in range(lo, hi + 1):
        for a in range(3):
            if a == p.read_at(i):
                continue
            core = list(window(p, lo, hi))
            core[i - lo] = a
            bad = TwoSidedConfig(window(p, lo - len(p.left), lo - 1), tuple(core),
                                 window(p, hi + 1, hi + len(p.right)), lo).canonical()
            got = verify_stp(ex2, dataclasses.replace(cert, point=bad))
            want = _naive_periodic(ex2, bad, cert.temporal_period) and not is_spatially_periodic(bad)[0]
            assert got == want
            rejected += not got
    assert rejected > 0


def test_identity_gives_period_one(identity):
    for u, v in (((0,), (1,)), ((0, 1), (1, 1))):
        cert = construct_stp(identity, (1,), u, v)
        assert cert.temporal_period == 1 and verify_stp(identity, cert)


def test_shift_has_no_certificates():
    with pytest.raises(StpError):
        construct_stp(elementary(170), "0", "0", "1")
    assert search_stp(elementary(170)) == []
    sh = shift_rule(Alphabet(("0", "1")))
    for n in (1, 2, 3):
        assert search_stp(sh.power(n)) == []
        assert search_stp(shift_rule(Alphabet(("0", "1")), -1).power(n)) == []


def test_search_example2(ex2):
    found = search_stp(ex2, StpBounds(max_ingredient=2))
    target = construct_stp(ex2, "w", "00", "r0")
    assert any(equals(c.point, target.point) for c in found)
    assert all(verify_stp(ex2, c) for c in found)
    keys = [c.point for c in found]
    assert len(keys) == len(set(keys))


def test_nested_trace_agreement(ex2):
    w, u, v = enc(ex2, "w"), enc(ex2, "00"), enc(ex2, "r0")
    y = y_prime(w, u, v)
    p = len(w) + len(u)
    win = (-ex2.radius, ex2.radius + p)
    ref = trace(ex2, y, win, 64).rows
    for i in range(1, 5):
        assert trace(ex2, approximant(w, u, v, i), win, 64).rows == ref


def _segment_on_cycle(ca, word):
    """Is the w-sealed segment ``word`` periodic under the rule (naive iteration)?"""
    f = table_local(ca.table, ca.k, ca.d)
    seen, cur = [], tuple(word)
    while cur not in seen:
        seen.append(cur)
        cur = (cur[0],) + tuple(naive_block(f, list(cur), 1))
    return cur == tuple(word)


def test_density_probe(ex2):
    # a certified point sits in [w c w] exactly when that sealed segment is periodic
    w = enc(ex2, "w")
    for c in itertools.product(range(3), repeat=2):
        hit = False
        for v in itertools.product(range(3), repeat=2):
            if v == c:
                continue
            try:
                cert = construct_stp(ex2, w, c, v)
            except StpError:
                continue
            hit |= window(cert.point, 0, 3) == w + c + w
        assert hit == _segment_on_cycle(ex2, w + c + w), ex2.alphabet.render(c)
    assert not _segment_on_cycle(ex2, enc(ex2, "w0rw"))


def test_example1_outcome_recorded(ex1):
    # no certified blocking word, so the bounded construction has nothing to start from
    assert search_stp(ex1) == []
