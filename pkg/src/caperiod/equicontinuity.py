"""Blocking words and Kůrka-style classification.

A word ``w`` is s-blocking at offset p when every configuration holding ``w``
at coordinate 0 shows the same contents on ``[p, p + s)`` at all times.

Certification propagates the set of possible contents of the |w|-cell
window: ``U_0 = {w}`` and ``U_{t+1}`` is the set of images of ``a u b`` over
``u`` in ``U_t`` and *all* boundary words ``a``, ``b``.  This forgets the
correlations carried by the real surroundings, so ``U_t`` over-approximates
the reachable window contents.  If the sequence ``U_t`` closes a cycle while
the offset window stays a singleton, the word is blocking.  The check is
sound and incomplete; failure falls back to falsification, then Unknown.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from .config import EventualPeriod, TwoSidedConfig
from .dynamics import eventual_period, trace
from .rules import CellularAutomaton, all_words

__all__ = [
    "BlockingBounds",
    "BlockingCertificate",
    "Certified",
    "Falsified",
    "Unknown",
    "KurkaVerdict",
    "check_blocking",
    "certify_blocking",
    "find_blocking_words",
    "near_miss_words",
    "classify_kurka",
    "equicontinuity_period",
    "verify_certificate",
    "replay_falsification",
]


@dataclass(frozen=True)
class BlockingBounds:
    max_len: int = 6
    depth: int | None = None          # falsification depth; None means 2|w| + 32
    enum_limit: int = 1 << 16         # contexts enumerated exhaustively
    random_probes: int = 256
    max_cert_steps: int = 2048
    max_set: int = 1 << 16            # largest uncertainty set tracked
    eq_max_steps: int = 64            # m + p bound for equicontinuity
    eq_table_limit: int = 1 << 20
    seed: int = 0

    def depth_for(self, word_len: int) -> int:
        return self.depth if self.depth is not None else 2 * word_len + 32


@dataclass(frozen=True)
class BlockingCertificate:
    word: tuple[int, ...]
    s: int
    p: int
    rows: tuple[tuple[int, ...], ...]   # certified window contents, t = 0..m+q-1
    period: EventualPeriod

    def row_at(self, t: int) -> tuple[int, ...]:
        m, q = self.period
        return self.rows[t] if t < m + q else self.rows[m + (t - m) % q]

    def to_dict(self, alphabet) -> dict:
        return {
            "kind": "blocking",
            "word": alphabet.render(self.word),
            "s": self.s,
            "p": self.p,
            "column_period": [self.period.preperiod, self.period.period],
            "rows": [alphabet.render(r) for r in self.rows],
        }


@dataclass(frozen=True)
class Certified:
    certificate: BlockingCertificate


@dataclass(frozen=True)
class Falsified:
    """Two finite extensions of the word whose offset windows differ at ``time``.

    ``contexts[i]`` is a full word ``a + w + b`` with ``w`` starting at index
    ``offset``.
    """
    contexts: tuple[tuple[int, ...], tuple[int, ...]]
    offset: int
    time: int


@dataclass(frozen=True)
class Unknown:
    certify_steps: int
    exhaustive_depth: int
    probe_depth: int


def _with_contexts(ca: CellularAutomaton, U: np.ndarray) -> np.ndarray:
    L, R = -ca.left, ca.right
    ctx = all_words(ca.k, L + R)
    n = U.shape[1]
    big = np.empty((U.shape[0], ctx.shape[0], n + L + R), dtype=np.int64)
    big[:, :, L:L + n] = U[:, None, :]
    big[:, :, :L] = ctx[None, :, :L]
    big[:, :, L + n:] = ctx[None, :, L:]
    return big.reshape(-1, n + L + R)


def _uncertainty_sequence(ca: CellularAutomaton, word: tuple[int, ...], offsets, s: int,
                          bounds: BlockingBounds):
    """Run the set propagation; yield surviving offsets and the closing cycle.

    Returns ``(alive, rows_by_offset, cycle)`` where ``alive`` is the set of
    offsets whose window stayed a singleton, ``rows_by_offset[p]`` lists the
    window contents per step, and ``cycle`` is ``(m, q)`` or None if the
    budget ran out.
    """
    alive = set(offsets)
    U = np.asarray([word], dtype=np.int64)
    rows = {p: [word[p:p + s]] for p in alive}
    seen = {U.tobytes(): 0}
    for t in range(1, bounds.max_cert_steps + 1):
        U = np.unique(ca.block(_with_contexts(ca, U)), axis=0)
        if U.shape[0] > bounds.max_set:
            return set(), rows, None
        for p in sorted(alive):
            win = U[:, p:p + s]
            if (win != win[0]).any():
                alive.discard(p)
            else:
                rows[p].append(tuple(int(a) for a in win[0]))
        if not alive:
            return alive, rows, None
        key = U.tobytes()
        if key in seen:
            return alive, rows, (seen[key], t - seen[key])
        seen[key] = t
    return set(), rows, None


def certify_blocking(ca: CellularAutomaton, word, s: int, p: int | None = None,
                     bounds: BlockingBounds = BlockingBounds()) -> list[BlockingCertificate]:
    """Certificates for ``word`` at offset ``p`` (or at every admissible offset)."""
    word = tuple(word)
    offsets = range(len(word) - s + 1) if p is None else [p]
    alive, rows, cycle = _uncertainty_sequence(ca, word, offsets, s, bounds)
    if cycle is None:
        return []
    m0, q0 = cycle
    certs = []
    for off in sorted(alive):
        period = eventual_period(rows[off], m0, q0)
        keep = tuple(rows[off][:period.preperiod + period.period])
        certs.append(BlockingCertificate(word, s, off, keep, period))
    return certs


def _offset_windows(ca, ext, t_max, base, p, s):
    """Window contents [p, p+s) (relative to the word) at times 0..t_max."""
    out = []
    cur = ext
    for t in range(t_max + 1):
        start = base + p + t * ca.left
        out.append(cur[:, start:start + s])
        if t < t_max:
            cur = ca.block(cur)
    return out


def _first_disagreement(wins):
    for t, w in enumerate(wins):
        diff = np.nonzero((w != w[0]).any(axis=1))[0]
        if diff.size:
            return t, int(diff[0])
    return None


def _falsify(ca: CellularAutomaton, word, s, p, bounds: BlockingBounds):
    L, R, d, k = -ca.left, ca.right, ca.d, ca.k
    n = len(word)
    exhaustive = 0
    if d > 0:
        while k ** ((exhaustive + 1) * d) <= bounds.enum_limit:
            exhaustive += 1
    depth = bounds.depth_for(n)
    exhaustive = min(exhaustive, depth)
    if exhaustive > 0:
        a, b = exhaustive * L, exhaustive * R
        ctx = all_words(k, a + b)
        ext = np.concatenate([ctx[:, :a], np.tile(np.asarray(word, dtype=np.int64), (len(ctx), 1)),
                              ctx[:, a:]], axis=1)
        hit = _first_disagreement(_offset_windows(ca, ext, exhaustive, a, p, s))
        if hit is not None:
            t, j = hit
            return Falsified((tuple(map(int, ext[0])), tuple(map(int, ext[j]))), a, t), exhaustive
    if bounds.random_probes > 1 and depth > exhaustive and d > 0:
        rng = np.random.default_rng([bounds.seed, n, p, s] + list(word))
        a, b = depth * L, depth * R
        ext = rng.integers(0, k, size=(bounds.random_probes, a + n + b), dtype=np.int64)
        ext[:, a:a + n] = word
        hit = _first_disagreement(_offset_windows(ca, ext, depth, a, p, s))
        if hit is not None:
            t, j = hit
            return Falsified((tuple(map(int, ext[0])), tuple(map(int, ext[j]))), a, t), exhaustive
    return None, exhaustive


def check_blocking(ca: CellularAutomaton, word, s: int, p: int,
                   bounds: BlockingBounds = BlockingBounds()):
    """Certified, Falsified or Unknown verdict for (word, s, p)."""
    word = tuple(ca.alphabet.encode(word)) if isinstance(word, str) else tuple(word)
    if s < 1 or len(word) < s or not 0 <= p <= len(word) - s:
        raise ValueError(f"need s >= 1, |w| >= s and 0 <= p <= |w| - s (got s={s}, p={p})")
    certs = certify_blocking(ca, word, s, p, bounds)
    if certs:
        return Certified(certs[0])
    verdict, exhaustive = _falsify(ca, word, s, p, bounds)
    if verdict is not None:
        return verdict
    return Unknown(bounds.max_cert_steps, exhaustive, bounds.depth_for(len(word)))


def replay_falsification(ca: CellularAutomaton, verdict: Falsified, s: int, p: int):
    """Window rows of both contexts at the stated time, recomputed with ``trace``."""
    out = []
    for ctx in verdict.contexts:
        x = TwoSidedConfig((0,), ctx, (0,), -verdict.offset)
        tr = trace(ca, x, (p, p + s - 1), verdict.time)
        out.append(tr.rows[verdict.time])
    return tuple(out)


@functools.lru_cache(maxsize=64)
def _scan(ca: CellularAutomaton, s: int, max_len: int, bounds: BlockingBounds):
    """Certificates and per-word survival (steps the best offset stayed a singleton)."""
    certs, survival = [], {}
    for n in range(s, max_len + 1):
        for word in itertools.product(range(ca.k), repeat=n):
            alive, rows, cycle = _uncertainty_sequence(ca, word, range(n - s + 1), s, bounds)
            if cycle is not None:
                m0, q0 = cycle
                for off in sorted(alive):
                    period = eventual_period(rows[off], m0, q0)
                    keep = tuple(rows[off][:period.preperiod + period.period])
                    certs.append(BlockingCertificate(word, s, off, keep, period))
            else:
                survival[word] = max(len(r) for r in rows.values()) - 1
    return tuple(certs), survival


def find_blocking_words(ca: CellularAutomaton, s: int, max_len: int,
                        bounds: BlockingBounds = BlockingBounds()) -> list[BlockingCertificate]:
    """All certified (word, offset) pairs with s <= |word| <= max_len.

    Ordered by length, then lexicographically (alphabet order), then offset.
    """
    if max_len < s:
        raise ValueError("max_len must be >= s")
    return list(_scan(ca, s, max_len, bounds)[0])


def near_miss_words(ca: CellularAutomaton, s: int, max_len: int,
                    bounds: BlockingBounds = BlockingBounds(), top: int = 4) -> list:
    """Uncertified words whose offset window stayed determined the longest."""
    survival = _scan(ca, s, max(max_len, s), bounds)[1]
    ranked = sorted(survival, key=lambda w: (-survival[w], len(w), w))
    return ranked[:top]


def verify_certificate(ca: CellularAutomaton, cert: BlockingCertificate, samples: int = 1000,
                       depth: int | None = None, seed: int = 0) -> bool:
    """Randomised soundness spot-check: random contexts reproduce the certified rows."""
    n = len(cert.word)
    depth = depth if depth is not None else 2 * n + 32
    L, R = -ca.left, ca.right
    rng = np.random.default_rng([seed, n, cert.p, cert.s])
    a, b = depth * L, depth * R
    ext = rng.integers(0, ca.k, size=(samples, a + n + b), dtype=np.int64)
    ext[:, a:a + n] = cert.word
    for t, win in enumerate(_offset_windows(ca, ext, depth, a, cert.p, cert.s)):
        if (win != np.asarray(cert.row_at(t), dtype=np.int64)).any():
            return False
    return True


# -- equicontinuity --------------------------------------------------------------

def _reduce(lo: int, hi: int, table: np.ndarray, k: int):
    """Drop inessential outer variables; constant maps normalise to [0, 0]."""
    while hi > lo:
        t = table.reshape(k, -1)
        if (t == t[0]).all():
            table, lo = t[0].copy(), lo + 1
            continue
        t = table.reshape(-1, k)
        if (t == t[:, :1]).all():
            table, hi = t[:, 0].copy(), hi - 1
            continue
        break
    if hi == lo and (table == table[0]).all():
        lo = hi = 0
    return lo, hi, table


def equicontinuity_period(ca: CellularAutomaton, bounds: BlockingBounds = BlockingBounds()):
    """Minimal (m, p) with F^(m+p) = F^m as block maps, or None within bounds.

    Each power is computed exactly as a local rule on its essential
    coordinate interval, so equality of reduced tables is equality of maps.
    """
    k = ca.k
    g = (0, 0, np.arange(k, dtype=np.int64))
    key = (g[0], g[1], g[2].tobytes())
    seen = {key: 0}
    for n in range(1, bounds.eq_max_steps + 1):
        lo, hi = g[0] + ca.left, g[1] + ca.right
        size = k ** (hi - lo + 1)
        if size > bounds.eq_table_limit:
            return None
        words = all_words(k, hi - lo + 1)
        inner = np.zeros((words.shape[0], (hi - lo + 1) - (g[1] - g[0])), dtype=np.int64)
        span = g[1] - g[0]
        for j in range(span + 1):
            inner *= k
            inner += words[:, j:j + inner.shape[1]]
        table = ca.block(g[2][inner])[:, 0]
        g = _reduce(lo, hi, table, k)
        key = (g[0], g[1], g[2].tobytes())
        if key in seen:
            return EventualPeriod(seen[key], n - seen[key])
        seen[key] = n
    return None


@dataclass(frozen=True)
class KurkaVerdict:
    has_equicontinuity_points: str      # "yes" | "no-up-to-bounds"
    equicontinuous: str                 # "yes" | "no-up-to-bounds"
    equicontinuity_period: EventualPeriod | None
    sensitive_candidate: bool
    certificates: tuple[BlockingCertificate, ...] = field(default=())

    def to_dict(self, alphabet) -> dict:
        ep = self.equicontinuity_period
        return {
            "has_equicontinuity_points": self.has_equicontinuity_points,
            "equicontinuous": self.equicontinuous,
            "equicontinuity_period": None if ep is None else [ep.preperiod, ep.period],
            "sensitive_candidate": self.sensitive_candidate,
        }


def blocking_width(ca: CellularAutomaton) -> int:
    """Window width used for classification: the radius (at least 1)."""
    return max(1, ca.radius)


def classify_kurka(ca: CellularAutomaton, bounds: BlockingBounds = BlockingBounds(),
                   certificates=None) -> KurkaVerdict:
    if certificates is None:
        s = blocking_width(ca)
        certificates = find_blocking_words(ca, s, max(bounds.max_len, s), bounds)
    ep = equicontinuity_period(ca, bounds)
    found = bool(certificates)
    return KurkaVerdict(
        "yes" if found else "no-up-to-bounds",
        "yes" if ep is not None else "no-up-to-bounds",
        ep,
        not found,
        tuple(certificates),
    )
