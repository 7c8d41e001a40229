"""Monte-Carlo estimates of measure-theoretic equicontinuity (Gilman classes A/B/C).

For a point x, a window [-m, m] and a central block [-n, n], the quantity of
interest is the conditional probability that a random y agreeing with x on
[-n, n] has the same window trace as x.  Only coordinates inside the
dependence cone of the window over T steps can influence that trace, so each
sample is drawn on that finite support and its agreement indicator is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .config import PeriodicConfig, format_config
from .equicontinuity import (
    BlockingBounds,
    BlockingCertificate,
    blocking_width,
    find_blocking_words,
    near_miss_words,
)
from .rules import CellularAutomaton

__all__ = [
    "MeasureSpec",
    "RatioPoint",
    "RatioCurve",
    "GilmanParams",
    "GilmanReport",
    "estimate_ratio",
    "ratio_curve",
    "classify_gilman",
    "candidate_points",
    "agreement_indicators",
    "trace_agreement",
]


@dataclass(frozen=True)
class MeasureSpec:
    """Bernoulli product measure; ``weights[i]`` is the probability of letter i."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(a) for a in self.weights)
        object.__setattr__(self, "weights", w)
        if any(a <= 0 for a in w) or not math.isclose(sum(w), 1.0, abs_tol=1e-9):
            raise ValueError(f"weights must be positive and sum to 1, got {w}")

    @classmethod
    def uniform(cls, k: int) -> "MeasureSpec":
        return cls((1.0 / k,) * k)


@dataclass(frozen=True)
class RatioPoint:
    n: int
    ratio: float
    halfwidth: float
    samples: int


@dataclass(frozen=True)
class RatioCurve:
    point: str          # configuration literal
    m: int
    points: tuple[RatioPoint, ...]

    def to_dict(self) -> dict:
        return {"x": self.point, "m": self.m,
                "n": [p.n for p in self.points],
                "ratio": [p.ratio for p in self.points],
                "halfwidth": [p.halfwidth for p in self.points],
                "samples": [p.samples for p in self.points]}


def _halfwidth(ratio: float, samples: int) -> float:
    return 1.96 * math.sqrt(max(ratio * (1 - ratio), 0.0) / samples)


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed)] + [int(a) for a in key]))


def agreement_indicators(ca: CellularAutomaton, x, m: int, n: int, T: int, samples: int,
                         rng: np.random.Generator, measure: MeasureSpec) -> np.ndarray:
    """Per-sample indicator: the [-m, m] trace of y equals that of x for t = 0..T."""
    lo, hi = -m + T * ca.left, m + T * ca.right
    width = hi - lo + 1
    xrow = np.array([x.read_at(i) for i in range(lo, hi + 1)], dtype=np.int64)
    ys = rng.choice(ca.k, size=(samples, width), p=measure.weights).astype(np.int64)
    a, b = max(-n, lo), min(n, hi)
    if a <= b:
        ys[:, a - lo:b - lo + 1] = xrow[a - lo:b - lo + 1]
    return trace_agreement(ca, xrow, ys, lo, m, T)


def trace_agreement(ca: CellularAutomaton, xrow, ys, lo: int, m: int, T: int) -> np.ndarray:
    """Indicators for explicit samples ``ys`` covering coordinates ``lo ..``.

    The rows must reach at least the dependence cone of [-m, m] over T steps.
    """
    arr = np.vstack([np.asarray(xrow, dtype=np.int64)[None, :], np.asarray(ys, dtype=np.int64)])
    samples = arr.shape[0] - 1
    alive = np.arange(samples)       # samples still agreeing
    w = 2 * m + 1
    for t in range(T + 1):
        start = -m - lo + t * ca.left
        win = arr[:, start:start + w]
        keep = (win[1:] == win[0]).all(axis=1)
        if not keep.all():
            alive = alive[keep]
            arr = np.vstack([arr[:1], arr[1:][keep]])
        if alive.size == 0 or t == T:
            break
        arr = ca.block(arr)
    out = np.zeros(samples, dtype=bool)
    out[alive] = True
    return out


def estimate_ratio(ca: CellularAutomaton, x, m: int, n: int, T: int, samples: int,
                   seed: int, measure: MeasureSpec | None = None) -> RatioPoint:
    """Fraction of sampled y (agreeing with x on [-n, n]) sharing x's window trace."""
    if m < 1 or n < m or T < 1 or samples < 1:
        raise ValueError("need m >= 1, n >= m, T >= 1, samples >= 1")
    measure = measure or MeasureSpec.uniform(ca.k)
    ind = agreement_indicators(ca, x, m, n, T, samples, _rng(seed, m, n, T), measure)
    ratio = float(ind.mean())
    return RatioPoint(n, ratio, _halfwidth(ratio, samples), samples)


def ratio_curve(ca, x, m, ns, T, samples, seed, measure=None, alphabet=None) -> RatioCurve:
    pts = tuple(estimate_ratio(ca, x, m, n, T, samples, seed, measure) for n in ns)
    return RatioCurve(format_config(x, alphabet or ca.alphabet), m, pts)


@dataclass(frozen=True)
class GilmanParams:
    m: int | None = None                       # None: the radius (at least 1)
    n_multipliers: tuple[int, ...] = (1, 2, 4, 8, 16)
    T: int = 128
    samples: int = 2000
    seed: int = 0
    measure: MeasureSpec | None = None         # None: uniform
    high: float = 0.99
    low: float = 0.05
    candidate_len: int = 4
    near_misses: int = 4
    blocking: BlockingBounds = field(default_factory=BlockingBounds)

    def window(self, ca: CellularAutomaton) -> int:
        return self.m if self.m is not None else max(1, ca.radius)

    def to_dict(self, ca: CellularAutomaton) -> dict:
        measure = self.measure or MeasureSpec.uniform(ca.k)
        m = self.window(ca)
        return {"m": m, "n": [m * c for c in self.n_multipliers], "T": self.T,
                "samples": self.samples, "seed": self.seed,
                "measure": list(measure.weights), "high": self.high, "low": self.low,
                "candidate_len": self.candidate_len, "near_misses": self.near_misses,
                "max_blocking_len": self.blocking.max_len}


@dataclass(frozen=True)
class GilmanReport:
    cls: str                                   # "A" | "B" | "C" | "inconclusive"
    certificates: tuple[BlockingCertificate, ...] = ()
    curves: tuple[RatioCurve, ...] = ()
    decay: tuple[tuple[str, float], ...] = ()  # (x literal, final ratio)
    params: dict = field(default_factory=dict)

    @property
    def statistical(self) -> bool:
        return self.cls != "A"

    def to_dict(self, alphabet) -> dict:
        return {
            "class": self.cls,
            "statistical": self.statistical,
            "certificates": [c.to_dict(alphabet) for c in self.certificates],
            "curves": [c.to_dict() for c in self.curves],
            "decay": [[x, r] for x, r in self.decay],
            "params": self.params,
        }


def candidate_points(ca: CellularAutomaton, params: GilmanParams) -> list:
    """Spatially periodic points over short words, then near-miss blocking words."""
    seen, out = set(), []
    words = [w for n in range(1, params.candidate_len + 1)
             for w in itertools.product(range(ca.k), repeat=n)]
    if params.near_misses:
        words += near_miss_words(ca, blocking_width(ca), params.blocking.max_len,
                                 params.blocking, top=params.near_misses)
    for w in words:
        c = PeriodicConfig(w).canonical()
        if c not in seen:
            seen.add(c)
            out.append(PeriodicConfig(w))
    return out


def classify_gilman(ca: CellularAutomaton, params: GilmanParams = GilmanParams(),
                    certificates=None) -> GilmanReport:
    """Class A (certified), B/C (statistical) or inconclusive.

    A: a blocking word is certified.  B: some candidate point has a ratio
    curve ending at >= ``high`` and non-decreasing over its last three
    points.  C: every candidate's ratio at the largest n is below ``low``.
    """
    info = params.to_dict(ca)
    if certificates is None:
        s = blocking_width(ca)
        certificates = find_blocking_words(ca, s, max(params.blocking.max_len, s),
                                           params.blocking)
    if certificates:
        return GilmanReport("A", tuple(certificates), params=info)

    measure = params.measure or MeasureSpec.uniform(ca.k)
    m = params.window(ca)
    ns = [m * c for c in params.n_multipliers]
    decay = []
    all_low = True
    for idx, x in enumerate(candidate_points(ca, params)):
        literal = format_config(x, ca.alphabet)
        seed = int(np.random.SeedSequence([params.seed, idx]).generate_state(1)[0])
        final = estimate_ratio(ca, x, m, ns[-1], params.T, params.samples, seed, measure)
        decay.append((literal, final.ratio))
        if final.ratio >= params.high:
            pts = [estimate_ratio(ca, x, m, n, params.T, params.samples, seed, measure)
                   for n in ns[:-1]] + [final]
            tail = [p.ratio for p in pts[-3:]]
            if all(a <= b for a, b in zip(tail, tail[1:])):
                curve = RatioCurve(literal, m, tuple(pts))
                return GilmanReport("B", (), (curve,), tuple(decay), info)
        if final.ratio >= params.low:
            all_low = False
    return GilmanReport("C" if all_low else "inconclusive", (), (), tuple(decay), info)


def with_seed(params: GilmanParams, seed: int) -> GilmanParams:
    return replace(params, seed=seed)
