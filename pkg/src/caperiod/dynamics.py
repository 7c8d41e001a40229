"""Orbits, exact cycle detection and column traces."""

from __future__ import annotations

from dataclasses import dataclass

from .config import (
    DEFAULT_MAX_CENTER,
    BudgetExceeded,
    EventualPeriod,
    PeriodicConfig,
    step,
    window as read_window,
)
from .rules import CellularAutomaton

__all__ = ["ColumnTrace", "trace", "orbit", "orbit_cycle", "column_period", "eventual_period",
           "DEFAULT_MAX_STEPS"]

DEFAULT_MAX_STEPS = 10_000


@dataclass(frozen=True)
class ColumnTrace:
    """Rows ``F^t(x)`` restricted to the closed window ``[i1, i2]`` for t = 0..T."""

    window: tuple[int, int]
    rows: tuple[tuple[int, ...], ...]
    generator: object

    def render(self, alphabet) -> list[str]:
        return [alphabet.render(r) for r in self.rows]


def trace(ca: CellularAutomaton, x, window: tuple[int, int], steps: int,
          max_center: int = DEFAULT_MAX_CENTER) -> ColumnTrace:
    if steps < 0:
        raise ValueError("steps must be >= 0")
    i1, i2 = window
    if i2 < i1:
        raise ValueError(f"empty window {window}")
    rows = []
    cur = x
    for t in range(steps + 1):
        rows.append(read_window(cur, i1, i2))
        if t < steps:
            cur = step(ca, cur, max_center=max_center)
    return ColumnTrace((i1, i2), tuple(rows), x)


@dataclass(frozen=True)
class Orbit:
    states: tuple  # canonical F^0(x) .. F^{m+p-1}(x)
    period: EventualPeriod


def orbit(ca: CellularAutomaton, x, max_steps: int = DEFAULT_MAX_STEPS,
          max_center: int = DEFAULT_MAX_CENTER) -> Orbit:
    """Iterate until a canonical state repeats; the first repeat gives minimal (m, p).

    Raises BudgetExceeded if no state repeats within ``max_steps`` steps.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    cur = x.canonical()
    seen = {cur: 0}
    states = [cur]
    for t in range(1, max_steps + 1):
        try:
            cur = step(ca, cur, max_center=max_center)
        except BudgetExceeded as exc:
            raise BudgetExceeded(exc.reason, steps=t) from None
        first = seen.get(cur)
        if first is not None:
            return Orbit(tuple(states), EventualPeriod(first, t - first))
        seen[cur] = t
        states.append(cur)
    raise BudgetExceeded(f"no cycle within {max_steps} steps", steps=max_steps)


def orbit_cycle(ca: CellularAutomaton, x, max_steps: int = DEFAULT_MAX_STEPS,
                max_center: int = DEFAULT_MAX_CENTER) -> EventualPeriod:
    """Minimal (preperiod, period) of the orbit of a finitely represented configuration.

    Spatially periodic inputs always terminate given enough steps, since the
    orbit lives in a finite set of at most ``k**n * n`` configurations.
    """
    if isinstance(x, PeriodicConfig):
        n = len(x.word)
        max_steps = max(max_steps, min(ca.k ** n * n, 1 << 24))
    return orbit(ca, x, max_steps, max_center).period


def eventual_period(seq, m0: int, p0: int) -> EventualPeriod:
    """Minimal eventual period of a sequence known to satisfy s[t + p0] = s[t] for t >= m0.

    ``seq`` must hold at least ``m0 + p0`` items.
    """
    cycle = [seq[t] for t in range(m0, m0 + p0)]
    p = next(q for q in range(1, p0 + 1)
             if p0 % q == 0 and all(cycle[j] == cycle[(j + q) % p0] for j in range(p0)))

    def at(t):
        return seq[t] if t < m0 + p0 else cycle[(t - m0) % p0]

    m = m0
    while m > 0 and at(m - 1) == at(m - 1 + p):
        m -= 1
    return EventualPeriod(m, p)


def column_period(ca: CellularAutomaton, x, window: tuple[int, int],
                  max_steps: int = DEFAULT_MAX_STEPS,
                  max_center: int = DEFAULT_MAX_CENTER) -> EventualPeriod:
    """Minimal eventual period of the window rows of the orbit of ``x``.

    Derived from the orbit cycle; the column period divides the orbit period.
    Raises BudgetExceeded (inconclusive) when the orbit does not close.
    """
    orb = orbit(ca, x, max_steps, max_center)
    m0, p0 = orb.period
    i1, i2 = window
    rows = [read_window(s, i1, i2) for s in orb.states]
    return eventual_period(rows, m0, p0)
