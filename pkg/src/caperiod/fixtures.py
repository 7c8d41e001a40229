"""Bundled rule files and the parameters they are meant to be analysed with."""

from __future__ import annotations

from importlib import resources

from .gilman import GilmanParams, MeasureSpec
from .rules import CellularAutomaton, parse_rule, rule_hints

__all__ = ["FIXTURES", "fixture_text", "load_fixture", "example1", "example2", "gilman_params_for"]

FIXTURES = ("example1", "example2")


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return resources.files("caperiod").joinpath("data", f"{name}.rule").read_text(encoding="utf-8")


def load_fixture(name: str) -> CellularAutomaton:
    return parse_rule(fixture_text(name))


def example1() -> CellularAutomaton:
    """Three-letter particle automaton (background, left movers, stationary)."""
    return load_fixture("example1")


def example2() -> CellularAutomaton:
    """Non-surjective automaton over {w, 0, r} with radius-one left neighbourhood."""
    return load_fixture("example2")


def gilman_params_for(name: str, base: GilmanParams = GilmanParams()) -> GilmanParams:
    """``base`` with the fixture's recorded measure filled in, if it has one."""
    hints = rule_hints(fixture_text(name))
    if "measure" in hints and base.measure is None:
        from dataclasses import replace
        return replace(base, measure=MeasureSpec(hints["measure"]))
    return base
