"""Command-line entry points: simulate, analyze, survey, verify.

Exit status: 0 when the command ran (Unknown verdicts included), 1 on input
errors, 2 when an internal invariant or a re-checked certificate fails, 3 when
a simulation exceeds its representation budget.
The default seed is read from ``CAPERIOD_SEED``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .config import BudgetExceeded, PeriodicConfig, parse_config
from .dynamics import trace
from .fixtures import FIXTURES
from .render import ascii_diagram, write_ppm
from .rules import RuleError, parse_rule
from .survey import ANALYSES, RuleSource, SurveyParams, analyze, dumps, expand_rule_set, run_survey, verify_record

SEED_ENV = "CAPERIOD_SEED"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _source(args) -> RuleSource:
    if args.eca is not None and args.rule is not None:
        raise InputError("give --rule or --eca, not both")
    if args.eca is not None:
        return RuleSource.eca(args.eca)
    if args.rule is None:
        raise InputError("a rule is required (--rule or --eca)")
    found = expand_rule_set(args.rule)
    if len(found) != 1:
        raise InputError(f"--rule must name exactly one rule, got {len(found)}")
    return found[0]


def _window(text: str | None, cfg):
    if text:
        try:
            a, b = (int(t) for t in text.split(":"))
        except ValueError:
            raise InputError(f"window must look like LO:HI, got {text!r}") from None
        return a, b
    if isinstance(cfg, PeriodicConfig):
        return 0, len(cfg.word) - 1
    return cfg.anchor - len(cfg.left), cfg.end + len(cfg.right) - 1


def _params(args) -> SurveyParams:
    analyses = tuple(a.strip() for a in args.only.split(",")) if args.only else ANALYSES
    bad = set(analyses) - set(ANALYSES)
    if bad:
        raise InputError(f"unknown analyses {sorted(bad)}")
    measure = None
    if args.gilman_measure:
        measure = tuple(float(t) for t in args.gilman_measure.split(","))
    return SurveyParams(seed=args.seed, max_blocking_len=args.max_blocking_len,
                        gilman_samples=args.gilman_samples, gilman_horizon=args.gilman_horizon,
                        stp_max_ingredient=args.stp_max_ingredient, analyses=analyses,
                        measure=measure, timings=args.timings)


def cmd_simulate(args) -> int:
    src = _source(args)
    ca = parse_rule(src.text)
    if not args.init:
        raise InputError("--init is required")
    try:
        x = parse_config(args.init, ca.alphabet)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rows = trace(ca, x, _window(args.window, x), args.steps).rows
    if args.render == "pixmap":
        if not args.out:
            raise InputError("--render pixmap needs --out")
        write_ppm(rows, args.out, scale=args.scale)
        return 0
    text = ascii_diagram(rows, ca.alphabet)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_analyze(args) -> int:
    record = analyze(_source(args), _params(args))
    if "error" in record:
        raise InputError(record["error"])
    line = dumps(record) + "\n"
    if args.out:
        Path(args.out).write_text(line, encoding="utf-8")
    else:
        sys.stdout.write(line)
    return 0


def cmd_survey(args) -> int:
    spec = args.rules or args.rule or ("eca:all" if args.eca is None else f"eca:{args.eca}")
    if not args.out:
        raise InputError("survey needs --out")
    try:
        sources = expand_rule_set(spec)
    except (FileNotFoundError, RuleError, ValueError) as exc:
        raise InputError(str(exc)) from None
    n = run_survey(sources, args.out, _params(args), jobs=args.jobs)
    print(f"{n} record(s) written, {len(sources) - n} already present", file=sys.stderr)
    return 0


def _load_json_objects(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    try:
        return [json.loads(text)]
    except json.JSONDecodeError:
        pass
    try:
        return [json.loads(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as exc:
        raise InputError(f"not JSON or JSON lines: {exc}") from None


def cmd_verify(args) -> int:
    ca = None
    if args.rule is not None or args.eca is not None:
        ca = parse_rule(_source(args).text)
    failures = 0
    for obj in _load_json_objects(args.file):
        try:
            results = verify_record(obj, ca, samples=args.samples)
        except (KeyError, ValueError) as exc:
            raise InputError(f"cannot verify object: {exc}") from None
        rule_id = obj.get("rule", {}).get("id") if isinstance(obj, dict) else None
        for r in results:
            failures += not r["ok"]
            print(dumps({"rule": rule_id, "kind": r["kind"], "ok": r["ok"]}))
    return 2 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="caperiod", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--rule", help=f"rule file, fixture ({', '.join(FIXTURES)}) or eca:N")
        sp.add_argument("--eca", type=int, help="elementary rule code")
        sp.add_argument("--out", help="output path")
        sp.add_argument("--seed", type=int, default=int(os.environ.get(SEED_ENV, "0")))

    def analysis(sp):
        sp.add_argument("--max-blocking-len", type=int, default=6)
        sp.add_argument("--gilman-samples", type=int, default=2000)
        sp.add_argument("--gilman-horizon", type=int, default=128)
        sp.add_argument("--gilman-measure", help="comma-separated letter weights")
        sp.add_argument("--stp-max-ingredient", type=int, default=2)
        sp.add_argument("--only", help=f"comma-separated subset of {','.join(ANALYSES)}")
        sp.add_argument("--timings", action="store_true", help="record wall-clock timings")

    s = sub.add_parser("simulate", help="space-time diagram of one configuration")
    common(s)
    s.add_argument("--init", help="configuration literal, e.g. '^(wr000w)^'")
    s.add_argument("--steps", type=int, default=16)
    s.add_argument("--window", help="closed coordinate interval LO:HI")
    s.add_argument("--render", choices=("ascii", "pixmap"), default="ascii")
    s.add_argument("--scale", type=int, default=4, help="pixels per cell for pixmaps")
    s.set_defaults(func=cmd_simulate)

    a = sub.add_parser("analyze", help="one analysis record on standard output")
    common(a)
    analysis(a)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("survey", help="records for a rule set, one JSON line each")
    common(v)
    analysis(v)
    v.add_argument("rules", nargs="?", help="eca:all, eca:N, fixture names, files or directories")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_survey)

    c = sub.add_parser("verify", help="re-check serialized certificates")
    common(c)
    c.add_argument("file", help="JSON certificate, record or record file ('-' for stdin)")
    c.add_argument("--samples", type=int, default=1000)
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, RuleError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"caperiod: error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"caperiod: budget exceeded: {exc.reason}", file=sys.stderr)
        return 3
    except AssertionError as exc:
        print(f"caperiod: invariant violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
