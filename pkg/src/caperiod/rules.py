"""Alphabets, local rules and the global map of one-dimensional cellular automata.

A rule is stored as a flat lookup table over neighbourhood words.  The word
``a_0 a_1 ... a_d`` (letters given by their index in the alphabet) lives at
table position ``sum(a_j * k**(d - j))``, so elementary (Wolfram) codes map
directly onto the table with the alphabet ``('0', '1')``.

Rule-file grammar (one directive per line, ``#`` starts a comment, blank
lines ignored, keys are case-insensitive and whitespace is free)::

    name: example 2                 # optional
    alphabet: w 0 r                 # letters separated by whitespace
    neighborhood: -1 0              # leftmost and rightmost offset
    table:
      w r -> r                      # one entry per line ...
      w0 -> 0, ww -> w              # ... or several separated by ',' / ';'

or, for elementary automata, simply ``eca: 110``.  Input words of a table
entry may be written letter by letter separated by whitespace or ``.``, or
contiguously when every letter is a single character.  ``*`` (when it is not
itself a letter) is a wildcard expanding to every letter.  ``→`` is accepted
in place of ``->``.

An optional ``measure: 0.2 0.2 0.6`` line records the Bernoulli weights a
rule should be studied under; ``parse_rule`` ignores it and
``rule_hints`` returns it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "Alphabet",
    "Neighborhood",
    "CellularAutomaton",
    "RuleError",
    "MissingEntry",
    "DuplicateEntry",
    "UnknownLetter",
    "elementary",
    "shift_rule",
    "parse_rule",
    "load_rule",
    "format_rule",
    "rule_hints",
    "apply_local",
    "apply_block",
]

Word = Union[str, Sequence[str]]

# largest rule table we are willing to materialise
MAX_TABLE_SIZE = 1 << 22


class RuleError(ValueError):
    """Malformed rule specification."""


class MissingEntry(RuleError):
    def __init__(self, word: str):
        super().__init__(f"MissingEntry({word!r})")
        self.word = word


class DuplicateEntry(RuleError):
    def __init__(self, word: str):
        super().__init__(f"DuplicateEntry({word!r})")
        self.word = word


class UnknownLetter(RuleError):
    def __init__(self, letter: str):
        super().__init__(f"UnknownLetter({letter!r})")
        self.letter = letter


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if len(letters) < 2:
            raise RuleError("an alphabet needs at least two letters")
        if len(set(letters)) != len(letters):
            raise RuleError(f"duplicate letters in alphabet {letters}")
        for a in letters:
            if not a or any(c.isspace() for c in a) or "." in a:
                raise RuleError(f"invalid letter {a!r}")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(letters)})

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter) -> bool:
        return letter in self._index

    @property
    def single_char(self) -> bool:
        return all(len(a) == 1 for a in self.letters)

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise UnknownLetter(letter) from None

    def split(self, word: Word) -> tuple[str, ...]:
        """Split a textual word into letters (see module docstring)."""
        if not isinstance(word, str):
            return tuple(word)
        word = word.strip()
        if not word:
            return ()
        if any(c.isspace() for c in word):
            return tuple(word.split())
        if "." in word:
            return tuple(word.split("."))
        if self.single_char:
            return tuple(word)
        return (word,)

    def encode(self, word: Word) -> tuple[int, ...]:
        return tuple(self.index(a) for a in self.split(word))

    def decode(self, idx: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.letters[int(i)] for i in idx)

    def render(self, idx: Iterable[int]) -> str:
        sep = "" if self.single_char else "."
        return sep.join(self.letters[int(i)] for i in idx)


@dataclass(frozen=True)
class Neighborhood:
    left: int
    right: int

    def __post_init__(self):
        if not (self.left <= 0 <= self.right):
            raise RuleError(f"neighbourhood [{self.left},{self.right}] must contain 0")

    @property
    def span(self) -> int:
        return self.right - self.left

    @property
    def radius(self) -> int:
        return max(-self.left, self.right)


class CellularAutomaton:
    """Immutable cellular automaton: alphabet, neighbourhood and local table.

    ``table[i]`` is the index of the output letter for the neighbourhood word
    whose base-``k`` encoding is ``i``.
    """

    __slots__ = ("alphabet", "neighborhood", "table", "name")

    def __init__(self, alphabet: Alphabet, neighborhood: Neighborhood, table, name: str = ""):
        table = np.array(table, dtype=np.int64).ravel()
        k, d = len(alphabet), neighborhood.span
        if table.size != k ** (d + 1):
            raise RuleError(f"table has {table.size} entries, expected {k ** (d + 1)}")
        if table.size and (table.min() < 0 or table.max() >= k):
            raise RuleError("table values outside the alphabet")
        table.setflags(write=False)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "neighborhood", neighborhood)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("CellularAutomaton is immutable")

    def __reduce__(self):
        return (CellularAutomaton, (self.alphabet, self.neighborhood, self.table.copy(), self.name))

    @property
    def k(self) -> int:
        return len(self.alphabet)

    @property
    def d(self) -> int:
        return self.neighborhood.span

    @property
    def left(self) -> int:
        return self.neighborhood.left

    @property
    def right(self) -> int:
        return self.neighborhood.right

    @property
    def radius(self) -> int:
        return self.neighborhood.radius

    def _key(self):
        return (self.alphabet.letters, self.left, self.right, self.table.tobytes())

    def __eq__(self, other):
        return isinstance(other, CellularAutomaton) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<CellularAutomaton{label} k={self.k} nbhd=[{self.left},{self.right}]>"

    # -- index-level kernels -------------------------------------------------

    def local(self, word: Sequence[int]) -> int:
        if len(word) != self.d + 1:
            raise ValueError(f"local rule needs a word of length {self.d + 1}, got {len(word)}")
        i = 0
        for a in word:
            i = i * self.k + int(a)
        return int(self.table[i])

    def block(self, arr) -> np.ndarray:
        """Sliding application along the last axis of an index array."""
        arr = np.asarray(arr, dtype=np.int64)
        n = arr.shape[-1]
        if n < self.d + 1:
            raise ValueError(f"block map needs at least {self.d + 1} letters, got {n}")
        m = n - self.d
        idx = np.zeros(arr.shape[:-1] + (m,), dtype=np.int64)
        for j in range(self.d + 1):
            idx *= self.k
            idx += arr[..., j:j + m]
        return self.table[idx]

    def block_word(self, word: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(a) for a in self.block(np.asarray(word, dtype=np.int64)))

    # -- algebra -------------------------------------------------------------

    def compose(self, inner: "CellularAutomaton") -> "CellularAutomaton":
        """The automaton ``x -> self(inner(x))``."""
        if inner.alphabet != self.alphabet:
            raise RuleError("cannot compose automata over different alphabets")
        nb = Neighborhood(self.left + inner.left, self.right + inner.right)
        size = self.k ** (nb.span + 1)
        if size > MAX_TABLE_SIZE:
            raise RuleError(f"composed table too large ({size} entries)")
        words = all_words(self.k, nb.span + 1)
        table = self.block(inner.block(words))[:, 0]
        return CellularAutomaton(self.alphabet, nb, table)

    def power(self, n: int) -> "CellularAutomaton":
        if n < 1:
            raise ValueError("power needs n >= 1")
        out = self
        for _ in range(n - 1):
            out = self.compose(out)
        return out

    def table_items(self) -> Iterable[tuple[tuple[int, ...], int]]:
        for i, word in enumerate(itertools.product(range(self.k), repeat=self.d + 1)):
            yield word, int(self.table[i])


def all_words(k: int, n: int) -> np.ndarray:
    """Every word of length ``n`` as rows, in lexicographic (table) order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.indices((k,) * n, dtype=np.int64).reshape(n, -1)
    return np.ascontiguousarray(grid.T)


def apply_local(ca: CellularAutomaton, word: Word) -> str:
    """Output letter of the local rule on a neighbourhood word."""
    return ca.alphabet.letters[ca.local(ca.alphabet.encode(word))]


def apply_block(ca: CellularAutomaton, word: Word) -> str:
    """Sliding block map: a word of length n gives a word of length n - d."""
    idx = ca.alphabet.encode(word)
    if len(idx) < ca.d + 1:
        raise ValueError(f"word shorter than the neighbourhood ({len(idx)} < {ca.d + 1})")
    return ca.alphabet.render(ca.block_word(idx))


BINARY = Alphabet(("0", "1"))


def elementary(code: int) -> CellularAutomaton:
    """Elementary automaton with Wolfram code ``code``."""
    if isinstance(code, bool) or not isinstance(code, (int, np.integer)) or not 0 <= code <= 255:
        raise RuleError(f"elementary code must be in 0..255, got {code!r}")
    table = [(int(code) >> i) & 1 for i in range(8)]
    return CellularAutomaton(BINARY, Neighborhood(-1, 1), table, name=f"eca:{int(code)}")


def shift_rule(alphabet: Alphabet, offset: int = 1) -> CellularAutomaton:
    """``F(x)_i = x_{i+offset}``; offset 1 is the left shift sigma."""
    nb = Neighborhood(min(offset, 0), max(offset, 0))
    k = len(alphabet)
    words = all_words(k, nb.span + 1)
    table = words[:, offset - nb.left]
    return CellularAutomaton(alphabet, nb, table, name=f"shift:{offset}")


# -- rule files ---------------------------------------------------------------

_ARROW = re.compile(r"->|→")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_rule(spec_text: str) -> CellularAutomaton:
    """Parse a rule file (see module docstring) into a validated automaton."""
    fields: dict[str, str] = {}
    entries: list[str] = []
    in_table = False
    for raw in spec_text.splitlines():
        line = _strip_comment(raw).strip()
        if not line:
            continue
        m = re.match(r"^([A-Za-z_]+)\s*:(.*)$", line)
        if m and not _ARROW.search(m.group(1)):
            key = m.group(1).lower()
            value = m.group(2).strip()
            if key in fields or (key == "table" and in_table):
                raise RuleError(f"field {key!r} given twice")
            in_table = key == "table"
            if in_table:
                fields[key] = ""
                if value:
                    entries.extend(re.split(r"[,;]", value))
            else:
                fields[key] = value
            continue
        if in_table:
            entries.extend(re.split(r"[,;]", line))
        else:
            raise RuleError(f"cannot parse line {raw!r}")

    unknown = set(fields) - {"name", "alphabet", "neighborhood", "neighbourhood", "table", "eca",
                            "measure"}
    if unknown:
        raise RuleError(f"unknown fields {sorted(unknown)}")
    name = fields.get("name", "")

    if "eca" in fields:
        if "table" in fields:
            raise RuleError("give either eca or table, not both")
        try:
            code = int(fields["eca"])
        except ValueError:
            raise RuleError(f"elementary code must be an integer, got {fields['eca']!r}") from None
        ca = elementary(code)
        if "alphabet" in fields and tuple(fields["alphabet"].split()) != BINARY.letters:
            raise RuleError("elementary rules use the alphabet 0 1")
        nb_text = fields.get("neighborhood", fields.get("neighbourhood"))
        if nb_text is not None and tuple(int(t) for t in nb_text.split()) != (-1, 1):
            raise RuleError("elementary rules use the neighbourhood -1 1")
        return CellularAutomaton(ca.alphabet, ca.neighborhood, ca.table, name=name or ca.name)

    if "alphabet" not in fields or "table" not in fields:
        raise RuleError("a rule file needs alphabet and table (or eca)")
    alphabet = Alphabet(tuple(fields["alphabet"].split()))
    nb_text = fields.get("neighborhood", fields.get("neighbourhood"))
    if nb_text is None:
        raise RuleError("missing neighborhood")
    try:
        left, right = (int(t) for t in nb_text.split())
    except ValueError:
        raise RuleError(f"neighborhood must be two integers, got {nb_text!r}") from None
    nb = Neighborhood(left, right)
    k, n = len(alphabet), nb.span + 1
    if k ** n > MAX_TABLE_SIZE:
        raise RuleError("rule table too large")

    table: dict[tuple[int, ...], int] = {}
    wildcard = "*" not in alphabet
    for entry in entries:
        entry = entry.strip()
        if not entry:
            continue
        parts = _ARROW.split(entry)
        if len(parts) != 2:
            raise RuleError(f"table entry {entry!r} must look like 'word -> letter'")
        lhs, rhs = parts[0].strip(), parts[1].strip()
        out = alphabet.index(rhs)
        letters = _split_entry(alphabet, lhs, n, wildcard)
        choices = [range(k) if a == "*" and wildcard else (alphabet.index(a),) for a in letters]
        for word in itertools.product(*choices):
            if word in table:
                raise DuplicateEntry(alphabet.render(word))
            table[word] = out

    flat = np.empty(k ** n, dtype=np.int64)
    for i, word in enumerate(itertools.product(range(k), repeat=n)):
        if word not in table:
            raise MissingEntry(alphabet.render(word))
        flat[i] = table[word]
    return CellularAutomaton(alphabet, nb, flat, name=name)


def _split_entry(alphabet: Alphabet, lhs: str, n: int, wildcard: bool) -> tuple[str, ...]:
    if any(c.isspace() for c in lhs):
        letters = tuple(lhs.split())
    elif "." in lhs:
        letters = tuple(lhs.split("."))
    elif alphabet.single_char:
        letters = tuple(lhs)
    else:
        letters = (lhs,)
    if len(letters) != n:
        raise RuleError(f"table entry {lhs!r} has {len(letters)} letters, expected {n}")
    for a in letters:
        if not (a == "*" and wildcard):
            alphabet.index(a)
    return letters


def rule_hints(spec_text: str) -> dict:
    """Analysis hints stored next to a rule (currently only ``measure``)."""
    for raw in spec_text.splitlines():
        m = re.match(r"^\s*measure\s*:(.*)$", _strip_comment(raw), re.IGNORECASE)
        if m:
            try:
                return {"measure": tuple(float(t) for t in m.group(1).split())}
            except ValueError:
                raise RuleError(f"bad measure line {raw!r}") from None
    return {}


def load_rule(path) -> CellularAutomaton:
    return parse_rule(Path(path).read_text(encoding="utf-8"))


def format_rule(ca: CellularAutomaton) -> str:
    """Serialise an automaton in the rule-file grammar (always as a full table)."""
    lines = []
    if ca.name:
        lines.append(f"name: {ca.name}")
    lines.append("alphabet: " + " ".join(ca.alphabet.letters))
    lines.append(f"neighborhood: {ca.left} {ca.right}")
    lines.append("table:")
    for word, out in ca.table_items():
        lines.append(f"  {' '.join(ca.alphabet.decode(word))} -> {ca.alphabet.letters[out]}")
    return "\n".join(lines) + "\n"
