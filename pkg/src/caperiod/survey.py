"""Per-rule analysis records, rule-set surveys and certificate re-verification.

A record is a JSON object holding the rule itself (as rule-file text) and the
outcome of every analysis, so it can be re-checked without the run that
produced it.  Analyses that were not run carry ``{"skipped": reason}``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .config import PeriodicConfig, parse_config
from .debruijn import is_injective, is_surjective
from .equicontinuity import (
    BlockingBounds,
    blocking_width,
    certify_blocking,
    classify_kurka,
    find_blocking_words,
    verify_certificate,
)
from .factors import FactorError, build_periodic_factor, verify_factor
from .fixtures import FIXTURES, fixture_text
from .gilman import GilmanParams, MeasureSpec, classify_gilman
from .rules import CellularAutomaton, RuleError, format_rule, parse_rule, rule_hints
from .stp import StpBounds, StpCertificate, search_stp, verify_stp

__all__ = [
    "ANALYSES",
    "RuleSource",
    "SurveyParams",
    "expand_rule_set",
    "analyze",
    "run_survey",
    "verify_record",
    "dumps",
]

ANALYSES = ("surjectivity", "injectivity", "blocking", "kurka", "gilman", "stp", "factors")

# certificates stored per record (counts are always complete)
MAX_STORED = 32


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


@dataclass(frozen=True)
class RuleSource:
    """Rule text plus a stable identity: ``eca:N`` or a hash of the text."""

    rule_id: str
    text: str
    origin: str = ""

    @classmethod
    def eca(cls, code: int) -> "RuleSource":
        if not 0 <= code <= 255:
            raise RuleError(f"elementary code out of range: {code}")
        return cls(f"eca:{code}", f"eca: {code}\n", f"eca:{code}")

    @classmethod
    def from_text(cls, text: str, origin: str = "") -> "RuleSource":
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]
        return cls(f"sha256:{digest}", text, origin)


def expand_rule_set(spec: str) -> list[RuleSource]:
    """Comma-separated items: ``eca:all``, ``eca:N``, a bare code, a fixture name,
    a rule file or a directory of ``*.rule`` files (sorted by name)."""
    out = []
    for item in (s.strip() for s in spec.split(",")):
        if not item:
            continue
        low = item.lower()
        if low == "eca:all":
            out.extend(RuleSource.eca(c) for c in range(256))
        elif low.startswith("eca:") or item.isdigit():
            out.append(RuleSource.eca(int(item.split(":")[-1])))
        elif item in FIXTURES:
            out.append(RuleSource.from_text(fixture_text(item), item))
        else:
            path = Path(item)
            if path.is_dir():
                files = sorted(path.glob("*.rule"))
            elif path.is_file():
                files = [path]
            else:
                raise FileNotFoundError(f"no such rule set item: {item!r}")
            out.extend(RuleSource.from_text(f.read_text(encoding="utf-8"), f.name) for f in files)
    seen, unique = set(), []
    for src in out:
        if src.rule_id not in seen:
            seen.add(src.rule_id)
            unique.append(src)
    return unique


@dataclass(frozen=True)
class SurveyParams:
    seed: int = 0
    max_blocking_len: int = 6
    gilman_samples: int = 2000
    gilman_horizon: int = 128
    stp_max_ingredient: int = 2
    analyses: tuple[str, ...] = ANALYSES
    measure: tuple[float, ...] | None = None   # overrides any rule hint
    timings: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        d["analyses"] = list(self.analyses)
        d["measure"] = None if self.measure is None else list(self.measure)
        d.pop("timings")
        return d


def _capped(items, alphabet):
    return {"count": len(items), "stored": min(len(items), MAX_STORED),
            "certificates": [c.to_dict(alphabet) for c in items[:MAX_STORED]]}


def _factor_summary(ca: CellularAutomaton, certs, equicontinuous: str) -> dict:
    """Periodic factors over spatially periodic points ``^(w u)^`` with w blocking."""
    words = []
    for c in certs:
        if c.word not in words:
            words.append(c.word)
    words = words[:4]
    factors, spectrum, failures, seen = [], set(), 0, set()
    for w in words:
        for n in range(0, 3):
            for u in itertools.product(range(ca.k), repeat=n):
                if w + u in seen:
                    continue
                seen.add(w + u)
                x = PeriodicConfig(w + u)
                try:
                    f = build_periodic_factor(ca, x, (0, len(w + u) - 1), max_steps=4096)
                except FactorError:
                    failures += 1
                    continue
                tps = [PeriodicConfig(cw) for cw in f.class_words]
                ok = verify_factor(ca, f, tps)
                if not ok:
                    failures += 1
                    continue
                spectrum.add(f.p)
                if len(factors) < MAX_STORED:
                    factors.append(f.to_dict(ca.alphabet))
    return {"spectrum": sorted(spectrum), "factors": factors, "unverified": failures,
            "upper_bound_claim": equicontinuous == "yes"}


def analyze(source: RuleSource, params: SurveyParams = SurveyParams()) -> dict:
    """Full record for one rule; malformed rules yield a record with ``error``."""
    record: dict = {"rule": {"id": source.rule_id, "origin": source.origin}}
    try:
        ca = parse_rule(source.text)
        hints = rule_hints(source.text)
    except (RuleError, ValueError) as exc:
        record["error"] = f"{type(exc).__name__}: {exc}"
        return record
    measure = params.measure or hints.get("measure")
    text = format_rule(ca) + (f"measure: {' '.join(map(repr, measure))}\n" if measure else "")
    record["rule"].update({"name": ca.name, "alphabet": list(ca.alphabet.letters),
                           "neighborhood": [ca.left, ca.right], "text": text})
    record["params"] = params.to_dict()
    timings = {}
    wanted = set(params.analyses)
    bounds = BlockingBounds(max_len=params.max_blocking_len, seed=params.seed)
    s = blocking_width(ca)
    certs = None
    kurka = None

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        timings[name] = round(time.perf_counter() - t0, 4)
        return out

    for name in ANALYSES:
        if name not in wanted:
            record[name] = {"skipped": "not selected"}
    if "surjectivity" in wanted:
        record["surjectivity"] = timed("surjectivity", lambda: is_surjective(ca).to_dict(ca.alphabet))
    if "injectivity" in wanted:
        record["injectivity"] = timed("injectivity", lambda: is_injective(ca).to_dict(ca.alphabet))
    if wanted & {"blocking", "kurka", "gilman", "stp", "factors"}:
        certs = timed("blocking", lambda: find_blocking_words(
            ca, s, max(params.max_blocking_len, s), bounds))
    if "blocking" in wanted:
        record["blocking"] = {"s": s, "max_len": max(params.max_blocking_len, s), **_capped(certs, ca.alphabet)}
    if wanted & {"kurka", "factors"}:
        kurka = timed("kurka", lambda: classify_kurka(ca, bounds, certs))
        if "kurka" in wanted:
            record["kurka"] = kurka.to_dict(ca.alphabet)
    if "gilman" in wanted:
        gp = GilmanParams(T=params.gilman_horizon, samples=params.gilman_samples, seed=params.seed,
                          measure=MeasureSpec(measure) if measure else None, blocking=bounds)
        rep = timed("gilman", lambda: classify_gilman(ca, gp, certs))
        d = rep.to_dict(ca.alphabet)
        d["certificates"] = _capped(list(rep.certificates), ca.alphabet)
        record["gilman"] = d
    if "stp" in wanted:
        sb = StpBounds(max_ingredient=params.stp_max_ingredient, blocking=bounds)
        stps = timed("stp", lambda: search_stp(ca, sb, certs))
        record["stp"] = {"bounds": {"max_word_len": sb.max_word_len, "max_ingredient": sb.max_ingredient,
                                    "max_steps": sb.max_steps}, **_capped(stps, ca.alphabet)}
    if "factors" in wanted:
        if certs:
            record["factors"] = timed("factors", lambda: _factor_summary(ca, certs, kurka.equicontinuous))
        else:
            record["factors"] = {"skipped": "no certified blocking word"}
    record["timings"] = timings if params.timings else {"skipped": "disabled for byte-stable output"}
    return record


def _analyze_line(args) -> str:
    source, params = args
    return dumps(analyze(source, params))


def _existing_ids(path: Path) -> set[str]:
    """Rule ids already recorded; a torn final line is cut off."""
    if not path.exists():
        return set()
    data = path.read_bytes()
    if data and not data.endswith(b"\n"):
        data = data[:data.rfind(b"\n") + 1]
        path.write_bytes(data)
    ids = set()
    for line in data.decode("utf-8").splitlines():
        if line.strip():
            ids.add(json.loads(line)["rule"]["id"])
    return ids


def run_survey(sources, out, params: SurveyParams = SurveyParams(), jobs: int = 1) -> int:
    """Append one record per rule to ``out`` in input order; returns records written."""
    out = Path(out)
    done = _existing_ids(out)
    todo = [s for s in sources if s.rule_id not in done]
    if not todo:
        return 0
    with open(out, "a", encoding="utf-8") as fh:
        if jobs <= 1:
            lines = map(_analyze_line, ((s, params) for s in todo))
            for line in lines:
                fh.write(line + "\n")
                fh.flush()
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for line in pool.map(_analyze_line, [(s, params) for s in todo], chunksize=1):
                    fh.write(line + "\n")
                    fh.flush()
    return len(todo)


# -- verification ------------------------------------------------------------------

def _certificates(obj):
    if isinstance(obj, dict):
        if obj.get("kind") in ("blocking", "stp", "factor"):
            yield obj
            return
        for v in obj.values():
            yield from _certificates(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _certificates(v)


def verify_one(ca: CellularAutomaton, cert: dict, samples: int = 1000) -> bool:
    a = ca.alphabet
    kind = cert["kind"]
    if kind == "blocking":
        word = a.encode(cert["word"])
        got = certify_blocking(ca, word, int(cert["s"]), int(cert["p"]))
        if not got:
            return False
        c = got[0]
        if [a.render(r) for r in c.rows] != cert["rows"]:
            return False
        if [c.period.preperiod, c.period.period] != cert["column_period"]:
            return False
        return verify_certificate(ca, c, samples=samples)
    if kind == "stp":
        c = StpCertificate.from_dict(cert, a)
        return verify_stp(ca, c)
    if kind == "factor":
        x = parse_config(cert["x"], a)
        f = build_periodic_factor(ca, x, tuple(cert["window"]))
        if f.to_dict(a) != {**cert, "window": list(cert["window"])}:
            return False
        return verify_factor(ca, f, [PeriodicConfig(w) for w in f.class_words])
    raise ValueError(f"unknown certificate kind {kind!r}")


def verify_record(obj, ca: CellularAutomaton | None = None, samples: int = 1000) -> list[dict]:
    """Re-check every certificate inside ``obj`` (a record or a bare certificate)."""
    if isinstance(obj, dict) and "rule" in obj and "text" in obj.get("rule", {}):
        ca = parse_rule(obj["rule"]["text"])
    if ca is None:
        raise ValueError("no rule given and the object does not embed one")
    results = []
    for cert in _certificates(obj):
        results.append({"kind": cert["kind"], "ok": bool(verify_one(ca, cert, samples)),
                        "certificate": cert})
    return results
