"""Strictly temporally periodic points from blocking words.

Given a blocking word ``w`` and two distinct words ``u != v`` of equal
length, the configuration

    y' = (w v)^inf  w u w  (u w)^inf

is finitely representable.  Iterating it exactly with canonical-form cycle
detection yields an F-periodic point ``F^t1(y')`` of temporal period
``t2 - t1``; it is accepted when it is not spatially periodic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .config import (
    DEFAULT_MAX_CENTER,
    BudgetExceeded,
    PeriodicConfig,
    TwoSidedConfig,
    equals,
    format_config,
    is_spatially_periodic,
    parse_config,
    step,
)
from .dynamics import orbit
from .equicontinuity import BlockingBounds, blocking_width, certify_blocking, find_blocking_words
from .rules import CellularAutomaton

__all__ = [
    "YSequenceElement",
    "StpCertificate",
    "StpBounds",
    "StpError",
    "build_y_sequence",
    "y_prime",
    "approximant",
    "construct_stp",
    "search_stp",
    "verify_stp",
]


class StpError(ValueError):
    """Construction failed: degenerate ingredients, no blocking word, or budget."""


@dataclass(frozen=True)
class YSequenceElement:
    i: int
    word: tuple[int, ...]
    interval: tuple[int, int]   # closed coordinate interval, w u w starting at 0


def _check_ingredients(w, u, v):
    if not w:
        raise StpError("w must be non-empty")
    if len(u) != len(v):
        raise StpError(f"|wv| != |wu| ({len(v)} vs {len(u)})")
    if tuple(u) == tuple(v):
        raise StpError("u and v must differ")


def build_y_sequence(w, u, v, i_max: int) -> list[YSequenceElement]:
    """Words (wv)^i w u w (uw)^i for i = 0..i_max."""
    w, u, v = tuple(w), tuple(u), tuple(v)
    _check_ingredients(w, u, v)
    p = len(w) + len(u)
    out = []
    for i in range(i_max + 1):
        word = (w + v) * i + w + u + w + (u + w) * i
        out.append(YSequenceElement(i, word, (-i * p, len(w) - 1 + (i + 1) * p)))
    return out


def y_prime(w, u, v) -> TwoSidedConfig:
    w, u, v = tuple(w), tuple(u), tuple(v)
    _check_ingredients(w, u, v)
    return TwoSidedConfig(w + v, w + u + w, u + w, 0)


def approximant(w, u, v, i: int) -> PeriodicConfig:
    """Spatially periodic configuration repeating y^(i), placed as inside y'."""
    el = build_y_sequence(w, u, v, i)[-1]
    return PeriodicConfig(el.word, -el.interval[0])


@dataclass(frozen=True)
class StpCertificate:
    point: TwoSidedConfig          # canonical
    temporal_period: int
    preperiod: int                 # steps from y' to the certified point
    y_prime: TwoSidedConfig
    ingredients: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    evidence: str                  # why the point is not spatially periodic

    def to_dict(self, alphabet) -> dict:
        w, u, v = self.ingredients
        return {
            "kind": "stp",
            "point": format_config(self.point, alphabet),
            "m": self.temporal_period,
            "preperiod": self.preperiod,
            "y_prime": format_config(self.y_prime, alphabet),
            "ingredients": {"w": alphabet.render(w), "u": alphabet.render(u),
                            "v": alphabet.render(v)},
            "evidence": self.evidence,
        }

    @classmethod
    def from_dict(cls, data: dict, alphabet) -> "StpCertificate":
        ing = data["ingredients"]
        point = parse_config(data["point"], alphabet)
        yp = parse_config(data["y_prime"], alphabet)
        if not isinstance(point, TwoSidedConfig) or not isinstance(yp, TwoSidedConfig):
            raise ValueError("certificate points must be two-sided literals")
        return cls(point, int(data["m"]), int(data.get("preperiod", 0)), yp,
                   (alphabet.encode(ing["w"]), alphabet.encode(ing["u"]), alphabet.encode(ing["v"])),
                   data.get("evidence", ""))


def _evidence(point: TwoSidedConfig) -> str:
    return "canonical center nonempty" if point.center else "tail mismatch"


def construct_stp(ca: CellularAutomaton, w, u, v, max_steps: int = 256,
                  max_center: int = DEFAULT_MAX_CENTER, require_blocking: bool = True,
                  blocking: BlockingBounds = BlockingBounds()) -> StpCertificate:
    """Build y' from (w, u, v), iterate to a cycle and certify the cycle point.

    Raises StpError when w is not a certified blocking word (unless
    ``require_blocking`` is off), when the budget runs out, or when the
    periodic point found is spatially periodic.
    """
    enc = ca.alphabet.encode
    w, u, v = (tuple(enc(a)) if isinstance(a, str) else tuple(a) for a in (w, u, v))
    yp = y_prime(w, u, v)
    if require_blocking:
        s = min(blocking_width(ca), len(w))
        if not certify_blocking(ca, w, s, None, blocking):
            raise StpError(f"{ca.alphabet.render(w)!r} is not a certified blocking word")
    try:
        orb = orbit(ca, yp, max_steps, max_center)
    except BudgetExceeded as exc:
        raise StpError(f"budget exceeded: {exc.reason}") from None
    t1, m = orb.period
    point = orb.states[t1]
    periodic, _ = is_spatially_periodic(point)
    if periodic:
        raise StpError("cycle point is spatially periodic")
    cert = StpCertificate(point, m, t1, yp.canonical(), (w, u, v), _evidence(point))
    if not verify_stp(ca, cert):
        raise AssertionError("constructed certificate failed verification")
    return cert


def verify_stp(ca: CellularAutomaton, cert: StpCertificate,
               max_center: int = DEFAULT_MAX_CENTER) -> bool:
    """Exact recheck: m is the least period of the point and it is not spatially periodic."""
    m = cert.temporal_period
    if m < 1:
        return False
    if is_spatially_periodic(cert.point)[0]:
        return False
    cur = cert.point
    try:
        for t in range(1, m + 1):
            cur = step(ca, cur, max_center=max_center)
            if equals(cur, cert.point):
                return t == m
    except BudgetExceeded:
        return False
    return False


@dataclass(frozen=True)
class StpBounds:
    max_word_len: int = 2          # blocking words w
    max_ingredient: int = 2        # |u| = |v|
    max_steps: int = 256
    max_center: int = DEFAULT_MAX_CENTER
    blocking: BlockingBounds = field(default_factory=BlockingBounds)


def search_stp(ca: CellularAutomaton, bounds: StpBounds = StpBounds(),
               certificates=None) -> list[StpCertificate]:
    """Certificates over all certified blocking words and ingredient pairs.

    Ingredients are enumerated by |u| ascending, then u and v
    lexicographically; results are deduplicated by canonical point.
    """
    s = blocking_width(ca)
    if certificates is None:
        certificates = find_blocking_words(ca, s, max(bounds.max_word_len, s), bounds.blocking)
    words = []
    for c in certificates:
        if len(c.word) <= bounds.max_word_len and c.word not in words:
            words.append(c.word)
    out, seen = [], set()
    for w in words:
        for n in range(1, bounds.max_ingredient + 1):
            pool = list(itertools.product(range(ca.k), repeat=n))
            for u in pool:
                for v in pool:
                    if u == v:
                        continue
                    try:
                        cert = construct_stp(ca, w, u, v, bounds.max_steps, bounds.max_center,
                                             require_blocking=False)
                    except StpError:
                        continue
                    if cert.point not in seen:
                        seen.add(cert.point)
                        out.append(cert)
    return out
