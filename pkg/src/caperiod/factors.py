"""Periodic factors onto (Z/pZ, +1) read off an eventually periodic column.

Membership in ``W`` is decided by window content only: a configuration lies
in ``W_k`` when its window shows the k-th class word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_MAX_CENTER, BudgetExceeded, format_config, step, window as read_window
from .dynamics import DEFAULT_MAX_STEPS, column_period, trace
from .rules import CellularAutomaton

__all__ = ["PeriodicFactor", "FactorError", "build_periodic_factor", "verify_factor"]


class FactorError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodicFactor:
    p: int
    m: int
    window: tuple[int, int]
    class_words: tuple[tuple[int, ...], ...]
    assignment: dict           # class word -> residue in Z/pZ
    generator: object = None

    def residue(self, cfg) -> int | None:
        return self.assignment.get(read_window(cfg, *self.window))

    def to_dict(self, alphabet) -> dict:
        return {
            "kind": "factor",
            "p": self.p,
            "m": self.m,
            "window": list(self.window),
            "class_words": [alphabet.render(w) for w in self.class_words],
            "residues": [self.assignment[w] for w in self.class_words],
            "x": None if self.generator is None else format_config(self.generator, alphabet),
        }


def build_periodic_factor(ca: CellularAutomaton, x, window: tuple[int, int],
                          max_steps: int = DEFAULT_MAX_STEPS,
                          max_center: int = DEFAULT_MAX_CENTER) -> PeriodicFactor:
    """Factor map sending W_k (k = m..m+p-1) to k - m.

    When a class word repeats inside the cycle the period is reduced to the
    gcd of the repetition gaps so the assignment stays well defined.
    """
    try:
        m, p = column_period(ca, x, window, max_steps, max_center)
    except BudgetExceeded as exc:
        raise FactorError(f"inconclusive column period: {exc.reason}") from None
    rows = trace(ca, x, window, m + p - 1, max_center).rows
    cycle = rows[m:m + p]
    q = p
    first: dict = {}
    for j, r in enumerate(cycle):
        if r in first:
            q = math.gcd(q, j - first[r])
        else:
            first[r] = j
    words = tuple(first)
    assignment = {w: first[w] % q for w in words}
    return PeriodicFactor(q, m, tuple(window), words, assignment, x)


def verify_factor(ca: CellularAutomaton, factor: PeriodicFactor, test_points,
                  horizon: int | None = None, max_center: int = DEFAULT_MAX_CENTER) -> bool:
    """Exact check of pi(F(y)) = pi(y) + 1 mod p along each test orbit.

    Raises FactorError if a test point does not start in W.
    """
    horizon = horizon if horizon is not None else 4 * (factor.m + factor.p)
    for y in test_points:
        r = factor.residue(y)
        if r is None:
            raise FactorError("test point outside W")
        cur = y
        for _ in range(horizon):
            try:
                cur = step(ca, cur, max_center=max_center)
            except BudgetExceeded:
                return False
            nxt = factor.residue(cur)
            if nxt is None or nxt != (r + 1) % factor.p:
                return False
            r = nxt
    return True
