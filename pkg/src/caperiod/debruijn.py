"""Surjectivity and injectivity of the global map via the de Bruijn graph.

Vertices are words of length d (the neighbourhood span) encoded in base k;
the edge for a (d+1)-word ``e`` runs from ``e // k`` to ``e % k**d`` and is
labelled by the local rule output ``table[e]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .config import PeriodicConfig, equals, format_config, step
from .rules import CellularAutomaton, Neighborhood, all_words

__all__ = [
    "DeBruijnGraph",
    "SurjectivityReport",
    "InjectivityReport",
    "de_bruijn_graph",
    "preimage_count",
    "preimage_counts",
    "is_surjective",
    "is_injective",
]

# brute-force oracle limit (number of candidate preimages enumerated)
ORACLE_LIMIT = 1 << 22


@dataclass(frozen=True)
class DeBruijnGraph:
    k: int
    d: int
    sources: np.ndarray  # per edge
    targets: np.ndarray
    labels: np.ndarray

    @property
    def n_vertices(self) -> int:
        return self.k ** self.d

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.sources, minlength=self.n_vertices)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.targets, minlength=self.n_vertices)


def de_bruijn_graph(ca: CellularAutomaton) -> DeBruijnGraph:
    e = np.arange(ca.k ** (ca.d + 1), dtype=np.int64)
    return DeBruijnGraph(ca.k, ca.d, e // ca.k, e % (ca.k ** ca.d), ca.table.copy())


@dataclass(frozen=True)
class SurjectivityReport:
    surjective: bool
    witness: tuple[int, ...] | None = None
    witness_count: int | None = None
    expected: int | None = None

    def to_dict(self, alphabet) -> dict:
        return {
            "surjective": self.surjective,
            "witness": None if self.witness is None else alphabet.render(self.witness),
            "witness_count": self.witness_count,
            "expected": self.expected,
        }


@dataclass(frozen=True)
class InjectivityReport:
    injective: bool
    witness: tuple[PeriodicConfig, PeriodicConfig] | None = None

    def to_dict(self, alphabet) -> dict:
        return {
            "injective": self.injective,
            "witness": None if self.witness is None
            else [format_config(c, alphabet) for c in self.witness],
        }


def preimage_count(ca: CellularAutomaton, word) -> int:
    """Number of words of length |word| + d mapped onto ``word`` (brute force)."""
    word = ca.alphabet.encode(word) if isinstance(word, str) else tuple(word)
    n = len(word)
    if n < 1:
        raise ValueError("word must be non-empty")
    if ca.k ** (n + ca.d) > ORACLE_LIMIT:
        raise ValueError("word too long for brute-force enumeration")
    images = ca.block(all_words(ca.k, n + ca.d))
    return int(np.all(images == np.asarray(word, dtype=np.int64), axis=1).sum())


def preimage_counts(ca: CellularAutomaton, n: int) -> np.ndarray:
    """Preimage counts of every word of length n, indexed by base-k encoding."""
    if ca.k ** (n + ca.d) > ORACLE_LIMIT:
        raise ValueError("length too large for brute-force enumeration")
    images = ca.block(all_words(ca.k, n + ca.d))
    codes = np.zeros(images.shape[0], dtype=np.int64)
    for j in range(n):
        codes = codes * ca.k + images[:, j]
    return np.bincount(codes, minlength=ca.k ** n)


def _has_orphan(ca: CellularAutomaton) -> bool:
    """Subset construction over vertex sets (bitmasks); orphan iff empty set reachable."""
    g = de_bruijn_graph(ca)
    nv = g.n_vertices
    succ = [[0] * ca.k for _ in range(nv)]
    for s, t, a in zip(g.sources.tolist(), g.targets.tolist(), g.labels.tolist()):
        succ[s][a] |= 1 << t
    start = (1 << nv) - 1
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for a in range(ca.k):
            nxt = 0
            bits = cur
            while bits:
                low = bits & -bits
                nxt |= succ[low.bit_length() - 1][a]
                bits ^= low
            if nxt == 0:
                return True
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def _shortest_unbalanced(ca: CellularAutomaton) -> tuple[tuple[int, ...], int]:
    """Shortest, then lexicographically least, word with a preimage count != k**d.

    Only called for non-surjective rules, where such a word is guaranteed.
    """
    g = de_bruijn_graph(ca)
    nv = g.n_vertices
    mats = []
    for a in range(ca.k):
        m = np.zeros((nv, nv), dtype=object)
        sel = g.labels == a
        for s, t in zip(g.sources[sel].tolist(), g.targets[sel].tolist()):
            m[s, t] += 1
        mats.append(m)
    balanced = ca.k ** ca.d
    level = [((), np.ones(nv, dtype=object))]
    seen = {tuple(level[0][1])}
    while level:
        nxt = []
        for word, vec in level:
            for a in range(ca.k):
                v = vec.dot(mats[a])
                total = int(v.sum())
                if total != balanced:
                    return word + (a,), total
                key = tuple(v)
                if key not in seen:
                    seen.add(key)
                    nxt.append((word + (a,), v))
        level = nxt
    raise AssertionError("no unbalanced word found for a non-surjective rule")


def is_surjective(ca: CellularAutomaton) -> SurjectivityReport:
    """Exact surjectivity decision; non-surjective rules get a verified witness."""
    if not _has_orphan(ca):
        return SurjectivityReport(True)
    word, count = _shortest_unbalanced(ca)
    if ca.k ** (len(word) + ca.d) <= ORACLE_LIMIT:
        oracle = preimage_count(ca, word)
        if oracle != count:
            raise AssertionError(f"witness count mismatch: {count} vs oracle {oracle}")
    return SurjectivityReport(False, word, count, ca.k ** ca.d)


def _padded(ca: CellularAutomaton) -> CellularAutomaton:
    """Same global map with a one-letter wider (ignored) neighbourhood."""
    table = np.repeat(ca.table, ca.k)
    return CellularAutomaton(ca.alphabet, Neighborhood(ca.left, ca.right + 1), table)


def is_injective(ca: CellularAutomaton) -> InjectivityReport:
    """Decide injectivity on the full shift.

    The map is non-injective iff the pair graph (pairs of de Bruijn vertices
    joined by equally labelled edge pairs) has a cycle through an
    off-diagonal vertex; such a cycle spells two distinct periodic
    configurations with the same image.
    """
    g_ca = ca if ca.d > 0 else _padded(ca)
    k, d = g_ca.k, g_ca.d
    nv = k ** d
    n_edges = k ** (d + 1)
    by_label: dict[int, list[int]] = {}
    for e in range(n_edges):
        by_label.setdefault(int(g_ca.table[e]), []).append(e)
    # adjacency on pair vertices: (u1, u2) -> list of (edge1, edge2)
    adj: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for edges in by_label.values():
        for e1 in edges:
            for e2 in edges:
                adj.setdefault((e1 // k, e2 // k), []).append((e1, e2))

    best = None
    for s1 in range(nv):
        for s2 in range(nv):
            if s1 == s2 or (s1, s2) not in adj:
                continue
            cyc = _shortest_cycle(adj, (s1, s2), k, nv, None if best is None else len(best))
            if cyc is not None and (best is None or len(cyc) < len(best)):
                best = cyc
    if best is None:
        return InjectivityReport(True)
    kd = k ** d
    w1 = tuple(e1 // kd for e1, _ in best)
    w2 = tuple(e2 // kd for _, e2 in best)
    a, b = PeriodicConfig(w1).canonical(), PeriodicConfig(w2).canonical()
    if equals(a, b) or not equals(step(ca, a), step(ca, b)):
        raise AssertionError("invalid injectivity witness")
    return InjectivityReport(False, (a, b))


def _shortest_cycle(adj, start, k, nv, bound):
    parent = {start: None}
    queue = deque([(start, 0)])
    while queue:
        v, dist = queue.popleft()
        if bound is not None and dist + 1 >= bound:
            return None
        for e1, e2 in adj.get(v, ()):
            w = (e1 % nv, e2 % nv)
            if w == start:
                path = [(e1, e2)]
                cur = v
                while parent[cur] is not None:
                    prev, edge = parent[cur]
                    path.append(edge)
                    cur = prev
                return path[::-1]
            if w not in parent:
                parent[w] = (v, (e1, e2))
                queue.append((w, dist + 1))
    return None
