"""Exact finite representations of spatially periodic and two-sided configurations.

Letters are stored as alphabet indices.  Two kinds of configuration are
supported:

``PeriodicConfig(word, phase)``
    ``x_i = word[(i + phase) mod |word|]``.  The canonical form uses the
    primitive root of the word, rotated to its lexicographically least
    rotation, and the matching phase.

``TwoSidedConfig(left, center, right, anchor)``
    ``... left left | center | right right ...`` where ``center[0]`` sits at
    coordinate ``anchor``, ``left`` ends at ``anchor - 1`` and ``right``
    starts at ``anchor + len(center)``.

Every configuration with eventually periodic tails has exactly one canonical
two-sided form: primitive tails, the center trimmed as far as both tail
extensions allow, and (when the center becomes empty) the anchor placed at
the leftmost coordinate from which the right tail pattern holds.  Spatially
periodic configurations canonicalise to ``left == right``, an empty center
and anchor 0.  Equality of configurations is decided on canonical forms.

Textual literals: ``^(u)^`` or ``^(u)^@phase`` for periodic configurations,
``^(l)^ c ^(r)^ @anchor`` for two-sided ones (letters separated by ``.``
when multi-character).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .rules import Alphabet, CellularAutomaton

__all__ = [
    "PeriodicConfig",
    "TwoSidedConfig",
    "EventualPeriod",
    "BudgetExceeded",
    "DEFAULT_MAX_CENTER",
    "read_at",
    "step",
    "shift_by",
    "canonicalize",
    "is_spatially_periodic",
    "equals",
    "window",
    "parse_config",
    "format_config",
]

DEFAULT_MAX_CENTER = 4096
COORD_LIMIT = 1 << 62

Config = Union["PeriodicConfig", "TwoSidedConfig"]


class BudgetExceeded(RuntimeError):
    """An exact iteration ran past its step or center-length budget."""

    def __init__(self, reason: str, steps: int | None = None):
        super().__init__(reason)
        self.reason = reason
        self.steps = steps


@dataclass(frozen=True)
class EventualPeriod:
    preperiod: int
    period: int

    def __post_init__(self):
        if self.preperiod < 0 or self.period < 1:
            raise ValueError(f"invalid eventual period ({self.preperiod}, {self.period})")

    def __iter__(self):
        return iter((self.preperiod, self.period))


def _check_coord(i: int) -> int:
    if not -COORD_LIMIT < i < COORD_LIMIT:
        raise OverflowError(f"coordinate {i} out of range")
    return i


def primitive_root(word: Sequence[int]) -> tuple[int, ...]:
    word = tuple(word)
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


def least_rotation(word: tuple[int, ...]) -> int:
    """Offset s such that word[s:] + word[:s] is lexicographically least."""
    n = len(word)
    return min(range(n), key=lambda s: word[s:] + word[:s])


@dataclass(frozen=True)
class PeriodicConfig:
    word: tuple[int, ...]
    phase: int = 0

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(a) for a in self.word))
        if not self.word:
            raise ValueError("a periodic configuration needs a non-empty word")
        object.__setattr__(self, "phase", int(self.phase) % len(self.word))

    @classmethod
    def from_pattern(cls, pattern: Sequence[int]) -> "PeriodicConfig":
        """Canonical config with ``x_i = pattern[i mod len(pattern)]``."""
        root = primitive_root(pattern)
        s = least_rotation(root)
        return cls(root[s:] + root[:s], -s)

    def pattern(self) -> tuple[int, ...]:
        n = len(self.word)
        return tuple(self.word[(j + self.phase) % n] for j in range(n))

    def canonical(self) -> "PeriodicConfig":
        return PeriodicConfig.from_pattern(self.pattern())

    def read_at(self, i: int) -> int:
        return self.word[(i + self.phase) % len(self.word)]

    def to_two_sided(self) -> "TwoSidedConfig":
        p = primitive_root(self.pattern())
        return TwoSidedConfig(p, (), p, 0)

    @property
    def period(self) -> int:
        return len(primitive_root(self.word))


@dataclass(frozen=True)
class TwoSidedConfig:
    left: tuple[int, ...]
    center: tuple[int, ...]
    right: tuple[int, ...]
    anchor: int = 0

    def __post_init__(self):
        for name in ("left", "center", "right"):
            object.__setattr__(self, name, tuple(int(a) for a in getattr(self, name)))
        if not self.left or not self.right:
            raise ValueError("tail words must be non-empty")
        object.__setattr__(self, "anchor", _check_coord(int(self.anchor)))

    @property
    def end(self) -> int:
        """First coordinate of the right tail."""
        return self.anchor + len(self.center)

    def read_at(self, i: int) -> int:
        if i < self.anchor:
            return self.left[(i - self.anchor) % len(self.left)]
        if i < self.end:
            return self.center[i - self.anchor]
        return self.right[(i - self.end) % len(self.right)]

    def left_pattern(self) -> tuple[int, ...]:
        """Primitive pattern P with x_i = P[i mod |P|] left of the anchor."""
        n = len(self.left)
        return primitive_root(self.left[(t - self.anchor) % n] for t in range(n))

    def right_pattern(self) -> tuple[int, ...]:
        n = len(self.right)
        return primitive_root(self.right[(t - self.end) % n] for t in range(n))

    def canonical(self) -> "TwoSidedConfig":
        return _from_patterns(self.left_pattern(), self.center, self.anchor, self.right_pattern())

    def to_periodic(self) -> "PeriodicConfig | None":
        c = self.canonical()
        if c.center or c.left != c.right:
            return None
        return PeriodicConfig.from_pattern(c.left)


def _from_patterns(pl: tuple[int, ...], center: tuple[int, ...], start: int,
                   pr: tuple[int, ...]) -> TwoSidedConfig:
    """Canonical config from anchored primitive tail patterns and an explicit block.

    ``x_i = pl[i mod |pl|]`` left of ``start``, ``center`` from ``start``,
    ``x_i = pr[i mod |pr|]`` after the center.
    """
    nl, nr = len(pl), len(pr)
    end = start + len(center)
    if pl == pr and all(c == pr[(start + j) % nr] for j, c in enumerate(center)):
        return TwoSidedConfig(pl, (), pl, 0)
    horizon = math.lcm(nl, nr)

    # hi: first coordinate from which the right pattern holds
    hi = end
    while hi > start and center[hi - 1 - start] == pr[(hi - 1) % nr]:
        hi -= 1
    if hi == start:
        steps = 0
        while steps < horizon and pl[(hi - 1) % nl] == pr[(hi - 1) % nr]:
            hi -= 1
            steps += 1
        if steps == horizon:  # tails coincide; handled above unless patterns alias
            return TwoSidedConfig(pl, (), pl, 0)
    # lo: last coordinate before which the left pattern holds
    lo = start
    while lo < end and center[lo - start] == pl[lo % nl]:
        lo += 1
    if lo == end:
        steps = 0
        while steps < horizon and pr[lo % nr] == pl[lo % nl]:
            lo += 1
            steps += 1

    if lo < hi:
        anchor, core = lo, center[lo - start:hi - start]
    else:
        anchor, core = hi, ()
    _check_coord(anchor)
    left = tuple(pl[(anchor - nl + j) % nl] for j in range(nl))
    right = tuple(pr[(anchor + len(core) + j) % nr] for j in range(nr))
    return TwoSidedConfig(left, core, right, anchor)


def read_at(cfg: Config, i: int) -> int:
    return cfg.read_at(i)


def window(cfg: Config, lo: int, hi: int) -> tuple[int, ...]:
    """Letters on the closed coordinate interval [lo, hi]."""
    return tuple(cfg.read_at(i) for i in range(lo, hi + 1))


def _periodic_image(ca: CellularAutomaton, pattern: tuple[int, ...]) -> tuple[int, ...]:
    """Image of the anchored pattern ``x_i = pattern[i mod n]``, anchored the same way."""
    n = len(pattern)
    seg = np.array([pattern[j % n] for j in range(ca.left, n + ca.right)], dtype=np.int64)
    return tuple(int(a) for a in ca.block(seg))


def step(ca: CellularAutomaton, cfg: Config, max_center: int = DEFAULT_MAX_CENTER) -> Config:
    """Exact image under the global map, in canonical form."""
    if isinstance(cfg, PeriodicConfig):
        return PeriodicConfig.from_pattern(_periodic_image(ca, cfg.pattern()))
    c = cfg.canonical()
    ql = primitive_root(_periodic_image(ca, c.left_pattern()))
    qr = primitive_root(_periodic_image(ca, c.right_pattern()))
    lo, hi = c.anchor - ca.right, c.end - ca.left
    src = [c.read_at(i) for i in range(lo + ca.left, hi + ca.right)]
    core = tuple(int(a) for a in ca.block(np.array(src, dtype=np.int64))) if src else ()
    out = _from_patterns(ql, core, lo, qr)
    if len(out.center) > max_center:
        raise BudgetExceeded(f"center length {len(out.center)} exceeds {max_center}")
    return out


def shift_by(cfg: Config, k: int) -> Config:
    """``sigma^k``: the letter at coordinate i + k moves to coordinate i."""
    if isinstance(cfg, PeriodicConfig):
        return PeriodicConfig(cfg.word, cfg.phase + k).canonical()
    return TwoSidedConfig(cfg.left, cfg.center, cfg.right, cfg.anchor - k).canonical()


def canonicalize(cfg: Config) -> Config:
    return cfg.canonical()


def is_spatially_periodic(cfg: Config) -> tuple[bool, PeriodicConfig | None]:
    if isinstance(cfg, PeriodicConfig):
        return True, cfg.canonical()
    p = cfg.to_periodic()
    return p is not None, p


def _as_two_sided(cfg: Config) -> TwoSidedConfig:
    return cfg.to_two_sided() if isinstance(cfg, PeriodicConfig) else cfg.canonical()


def equals(a: Config, b: Config) -> bool:
    """Equality as functions Z -> A."""
    if isinstance(a, PeriodicConfig) and isinstance(b, PeriodicConfig):
        return a.canonical() == b.canonical()
    return _as_two_sided(a) == _as_two_sided(b)


def canonical_key(cfg: Config):
    """Hashable canonical form, usable across both representations."""
    return _as_two_sided(cfg)


# -- literals -------------------------------------------------------------------

_PERIODIC = re.compile(r"^\s*\^\((?P<u>[^()]*)\)\^\s*(?:@\s*(?P<phase>-?\d+))?\s*$")
_TWO_SIDED = re.compile(
    r"^\s*\^\((?P<l>[^()]*)\)\^(?P<c>[^()^@]*)\^\((?P<r>[^()]*)\)\^\s*(?:@\s*(?P<a>-?\d+))?\s*$"
)


def parse_config(text: str, alphabet: Alphabet) -> Config:
    m = _PERIODIC.match(text)
    if m:
        word = alphabet.encode(m.group("u"))
        if not word:
            raise ValueError(f"empty period word in {text!r}")
        return PeriodicConfig(word, int(m.group("phase") or 0))
    m = _TWO_SIDED.match(text)
    if m:
        left, right = alphabet.encode(m.group("l")), alphabet.encode(m.group("r"))
        if not left or not right:
            raise ValueError(f"empty tail word in {text!r}")
        return TwoSidedConfig(left, alphabet.encode(m.group("c")), right, int(m.group("a") or 0))
    raise ValueError(f"cannot parse configuration literal {text!r}")


def format_config(cfg: Config, alphabet: Alphabet) -> str:
    r = alphabet.render
    if isinstance(cfg, PeriodicConfig):
        return f"^({r(cfg.word)})^" + (f"@{cfg.phase}" if cfg.phase else "")
    center = f" {r(cfg.center)} " if cfg.center else " "
    return f"^({r(cfg.left)})^{center}^({r(cfg.right)})^ @{cfg.anchor}"
