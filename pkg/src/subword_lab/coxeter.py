"""Finite Coxeter systems and reduced-word machinery.

Supported types: A_n (n>=1), B_n (n>=2), D_n (n>=4), H_3, and I_2(m), with
the generator numbering used throughout this project: the Coxeter diagram
is the chain s_1 - s_2 - ... - s_n, with the edge s_1 s_2 carrying 4 in
type B and 5 in type H; in type D the generators s_1 and s_2 are the fork
ends both joined to s_3.

Elements of types A/B/D live in their (signed) permutation models with
constant-time ascent tests; H_3 and I_2(m) are precomputed multiplication
tables over a faithful model (exact Q(sqrt 5) reflection matrices, resp.
rotation/flip pairs of the dihedral group).

Reduced words of an element w are exactly the label sequences of strictly
length-increasing walks from the identity to w, which drives everything:
streaming lexicographic enumeration needs no deduplication, and the
abelian-vector aggregation is a dynamic program on (element, vector) pairs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .words import (
    Word,
    abelian_vector,
    alternating_word,
    as_word,
    format_word,
    parse_word,
)

__all__ = [
    "CoxeterSystem",
    "coxeter_system",
    "Budget",
    "BudgetExceededError",
    "SpectrumResult",
    "braid_move_targets",
    "is_reduced",
    "longest_element_reduced_words",
    "reduced_words",
    "c_sorting_word",
    "abelian_spectrum",
    "demazure_product",
]

KNOWN_LONGEST_LENGTH = {
    "A": lambda n, m: n * (n + 1) // 2,
    "B": lambda n, m: n * n,
    "D": lambda n, m: n * (n - 1),
    "H": lambda n, m: 15,
    "I2": lambda n, m: m,
}


class BudgetExceededError(RuntimeError):
    """An enumeration ran past its word or time budget.

    ``partial`` carries whatever aggregate was collected up to the stop.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass
class Budget:
    """Resource limits for enumerations (counts are words/states visited)."""

    max_words: int = 10**8
    max_seconds: float = 600.0
    _used: int = field(default=0, repr=False)
    _started: float = field(default=0.0, repr=False)

    def start(self) -> "Budget":
        self._used = 0
        self._started = time.monotonic()
        return self

    def tick(self, partial=None, step: int = 1) -> None:
        self._used += step
        if self._used > self.max_words:
            raise BudgetExceededError(
                f"word budget exceeded ({self.max_words})", partial
            )
        if self._used % 1024 == 0 and time.monotonic() - self._started > self.max_seconds:
            raise BudgetExceededError(
                f"time budget exceeded ({self.max_seconds}s)", partial
            )


# ---------------------------------------------------------------------------
# group models
# ---------------------------------------------------------------------------


class _TypeAModel:
    """S_{n+1} as one-line tuples of 1..n+1; s_i swaps positions i, i+1."""

    def __init__(self, rank: int):
        self.identity = tuple(range(1, rank + 2))

    def right_multiply(self, u, i):
        v = list(u)
        v[i - 1], v[i] = v[i], v[i - 1]
        return tuple(v)

    def is_ascent(self, u, i):
        return u[i - 1] < u[i]


class _TypeBModel:
    """Signed permutations; s_1 negates position 1, s_i (i>=2) swaps
    positions i-1, i."""

    def __init__(self, rank: int):
        self.identity = tuple(range(1, rank + 1))

    def right_multiply(self, u, i):
        v = list(u)
        if i == 1:
            v[0] = -v[0]
        else:
            v[i - 2], v[i - 1] = v[i - 1], v[i - 2]
        return tuple(v)

    def is_ascent(self, u, i):
        if i == 1:
            return u[0] > 0
        return u[i - 2] < u[i - 1]


class _TypeDModel:
    """Even-signed permutations; s_1 swaps-and-negates positions 1, 2,
    s_2 swaps positions 1, 2, and s_i (i>=3) swaps positions i-2, i-1."""

    def __init__(self, rank: int):
        self.identity = tuple(range(1, rank + 1))

    def right_multiply(self, u, i):
        v = list(u)
        if i == 1:
            v[0], v[1] = -v[1], -v[0]
        elif i == 2:
            v[0], v[1] = v[1], v[0]
        else:
            v[i - 2], v[i - 1] = v[i - 1], v[i - 2]
        return tuple(v)

    def is_ascent(self, u, i):
        if i == 1:
            return u[0] + u[1] > 0
        if i == 2:
            return u[0] < u[1]
        return u[i - 2] < u[i - 1]


class _TabulatedModel:
    """Multiplication/length tables over a concrete finite model."""

    def __init__(self, generators, multiply, identity):
        index = {identity: 0}
        elements = [identity]
        lengths = [0]
        frontier = [identity]
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for u in frontier:
                for g in generators:
                    v = multiply(u, g)
                    if v not in index:
                        index[v] = len(elements)
                        elements.append(v)
                        lengths.append(depth)
                        nxt.append(v)
            frontier = nxt
        n_gen = len(generators)
        self.order = len(elements)
        self.lengths = lengths
        self.table = [
            [index[multiply(u, g)] for g in generators] for u in elements
        ]
        self.identity = 0

    def right_multiply(self, u, i):
        return self.table[u][i - 1]

    def is_ascent(self, u, i):
        return self.lengths[self.table[u][i - 1]] > self.lengths[u]


class _Q5:
    """Exact a + b*sqrt(5) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, o):
        return _Q5(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        return _Q5(self.a - o.a, self.b - o.b)

    def __mul__(self, o):
        return _Q5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    def __eq__(self, o):
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))


def _h3_reflection_matrices():
    """Simple reflections of H_3 in the root basis over Q(sqrt 5)."""
    # pairwise bond values -cos(pi/m_ij) with unit-norm simple roots
    c12 = _Q5(Fraction(-1, 4), Fraction(-1, 4))  # -cos(pi/5)
    c23 = _Q5(Fraction(-1, 2))
    c13 = _Q5(0)
    bond = {
        (1, 1): _Q5(1), (2, 2): _Q5(1), (3, 3): _Q5(1),
        (1, 2): c12, (2, 1): c12,
        (2, 3): c23, (3, 2): c23,
        (1, 3): c13, (3, 1): c13,
    }
    two = _Q5(2)
    mats = []
    for i in (1, 2, 3):
        rows = []
        for r in (1, 2, 3):
            row = []
            for k in (1, 2, 3):
                entry = _Q5(1 if r == k else 0)
                if r == i:
                    entry = entry - two * bond[(k, i)]
                row.append(entry)
            rows.append(tuple(row))
        mats.append(tuple(rows))
    return mats


def _mat_mult(a, b):
    size = len(a)
    return tuple(
        tuple(
            sum((a[r][k] * b[k][c] for k in range(size)), _Q5(0))
            for c in range(size)
        )
        for r in range(size)
    )


def _build_h3_model() -> _TabulatedModel:
    gens = _h3_reflection_matrices()
    identity = tuple(
        tuple(_Q5(1 if r == c else 0) for c in range(3)) for r in range(3)
    )
    return _TabulatedModel(gens, _mat_mult, identity)


def _build_i2_model(m: int) -> _TabulatedModel:
    # dihedral group of order 2m as pairs (rotation, flip)
    def multiply(u, s):
        k, f = u
        ks, _ = s
        return ((k + (ks if f == 0 else -ks)) % m, f ^ 1)

    return _TabulatedModel([(0, 1), (1, 1)], multiply, (0, 0))


# ---------------------------------------------------------------------------
# Coxeter systems
# ---------------------------------------------------------------------------


def _coxeter_matrix(family: str, rank: int, m_param: int | None) -> tuple[tuple[int, ...], ...]:
    m = [[2] * rank for _ in range(rank)]
    for i in range(rank):
        m[i][i] = 1
    def bond(i, j, value):
        m[i - 1][j - 1] = m[j - 1][i - 1] = value
    if family == "A":
        for i in range(1, rank):
            bond(i, i + 1, 3)
    elif family == "B":
        bond(1, 2, 4)
        for i in range(2, rank):
            bond(i, i + 1, 3)
    elif family == "H":
        bond(1, 2, 5)
        bond(2, 3, 3)
    elif family == "D":
        bond(1, 3, 3)
        bond(2, 3, 3)
        for i in range(3, rank):
            bond(i, i + 1, 3)
    elif family == "I2":
        bond(1, 2, m_param)
    return tuple(tuple(row) for row in m)


@dataclass(frozen=True)
class CoxeterSystem:
    """A finite irreducible Coxeter system with a fixed generator order."""

    family: str
    rank: int
    m_param: int | None = None
    coxeter_matrix: tuple[tuple[int, ...], ...] = field(init=False, compare=False)
    _model: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        family, rank, m = self.family, self.rank, self.m_param
        if family == "A" and rank >= 1:
            model = _TypeAModel(rank)
        elif family == "B" and rank >= 2:
            model = _TypeBModel(rank)
        elif family == "D" and rank >= 4:
            model = _TypeDModel(rank)
        elif family == "H" and rank == 3:
            model = _build_h3_model()
        elif family == "I2" and rank == 2 and m is not None and m >= 2:
            model = _build_i2_model(m)
        else:
            raise ValueError(
                f"unsupported type {family}{rank}"
                + (f" with parameter {m}" if m is not None else "")
            )
        object.__setattr__(self, "coxeter_matrix", _coxeter_matrix(family, rank, m))
        object.__setattr__(self, "_model", model)
        if self.longest_length != KNOWN_LONGEST_LENGTH[family](rank, m):
            raise AssertionError(
                f"model for {self.name} disagrees with the known longest length"
            )

    # -- construction and naming -------------------------------------------

    @staticmethod
    def from_name(name: str) -> "CoxeterSystem":
        """Parse a type string: A3, B4, D5, H3, I2:7."""
        name = name.strip()
        if name.upper().startswith("I2"):
            rest = name[2:].lstrip(":")
            if not rest:
                raise ValueError("I2 needs a parameter, e.g. I2:7")
            return CoxeterSystem("I2", 2, int(rest))
        family, rank = name[0].upper(), name[1:]
        if not rank.isdigit():
            raise ValueError(f"cannot parse Coxeter type {name!r}")
        return CoxeterSystem(family, int(rank))

    @property
    def name(self) -> str:
        if self.family == "I2":
            return f"I2:{self.m_param}"
        return f"{self.family}{self.rank}"

    def m(self, i: int, j: int) -> int:
        return self.coxeter_matrix[i - 1][j - 1]

    @property
    def generators(self) -> range:
        return range(1, self.rank + 1)

    # -- element arithmetic -------------------------------------------------

    @property
    def identity(self):
        return self._model.identity

    def right_multiply(self, u, i: int):
        return self._model.right_multiply(u, i)

    def is_ascent(self, u, i: int) -> bool:
        """Whether appending s_i increases the length of u."""
        return self._model.is_ascent(u, i)

    def element_of(self, word: Sequence[int]):
        u = self.identity
        for a in word:
            u = self.right_multiply(u, a)
        return u

    def length(self, u) -> int:
        steps = 0
        while True:
            descent = next((i for i in self.generators if not self.is_ascent(u, i)), None)
            if descent is None:
                return steps
            u = self.right_multiply(u, descent)
            steps += 1

    @property
    def longest_element(self):
        return _longest_element(self)

    @property
    def longest_length(self) -> int:
        u = self.identity
        steps = 0
        while True:
            ascent = next((i for i in self.generators if self.is_ascent(u, i)), None)
            if ascent is None:
                return steps
            u = self.right_multiply(u, ascent)
            steps += 1

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self.rank)

    def format_word(self, word: Sequence[int]) -> str:
        return format_word(word, self.rank)


def _longest_element(sys: CoxeterSystem):
    u = sys.identity
    while True:
        ascent = next((i for i in sys.generators if sys.is_ascent(u, i)), None)
        if ascent is None:
            return u
        u = sys.right_multiply(u, ascent)


def coxeter_system(name: str) -> CoxeterSystem:
    return CoxeterSystem.from_name(name)


# ---------------------------------------------------------------------------
# word-level operations
# ---------------------------------------------------------------------------


def braid_move_targets(
    sys: CoxeterSystem, word: Sequence[int]
) -> set[tuple[tuple[int, int], Word]]:
    """All braid moves applicable to the word: every occurrence of an
    alternating factor of exact length m_ij, with the word after the swap.
    Position ranges are 1-based and inclusive."""
    w = as_word(word)
    out: set[tuple[tuple[int, int], Word]] = set()
    for start in range(len(w)):
        i = w[start]
        for j in sys.generators:
            if j == i:
                continue
            m = sys.m(i, j)
            if m < 2 or start + m > len(w):
                continue
            if w[start : start + m] == alternating_word(i, j, m):
                replaced = w[:start] + alternating_word(j, i, m) + w[start + m :]
                out.add(((start + 1, start + m), replaced))
    return out


def is_reduced(sys: CoxeterSystem, word: Sequence[int]) -> bool:
    """Whether the word is a reduced expression of the element it spells,
    i.e. every letter extends the length of the prefix."""
    u = sys.identity
    for a in as_word(word):
        if not sys.is_ascent(u, a):
            return False
        u = sys.right_multiply(u, a)
    return True


def demazure_product(sys: CoxeterSystem, word: Sequence[int]):
    """0-Hecke product: letters that would shorten are absorbed."""
    u = sys.identity
    for a in as_word(word):
        if sys.is_ascent(u, a):
            u = sys.right_multiply(u, a)
    return u


# ---------------------------------------------------------------------------
# enumeration of reduced words
# ---------------------------------------------------------------------------


def reduced_words(
    sys: CoxeterSystem,
    word: Sequence[int] | None = None,
    budget: Budget | None = None,
) -> Iterator[Word]:
    """Stream all reduced expressions of the element spelled by ``word``
    (default: the longest element), exactly once each, in lexicographic
    order.  Memory is bounded by the recursion depth: a word's letters are
    found left to right by peeling left descents off the remaining factor,
    tracked through its inverse so that only right actions are needed."""
    if word is None:
        target_inverse = sys.longest_element  # the longest element is an involution
        n_letters = sys.longest_length
    else:
        w = as_word(word)
        target_inverse = sys.element_of(tuple(reversed(w)))
        n_letters = sys.length(target_inverse)
    if budget is not None:
        budget.start()
    identity = sys.identity
    prefix: list[int] = []
    # iterative DFS; each frame is (element t, next generator to try)
    stack = [(target_inverse, 1)]
    count = 0
    while stack:
        t, i = stack[-1]
        if t == identity:
            count += 1
            if budget is not None:
                budget.tick(partial=count - 1)
            yield tuple(prefix)
            stack.pop()
            if prefix:
                prefix.pop()
            continue
        advanced = False
        for s in range(i, sys.rank + 1):
            if not sys.is_ascent(t, s):  # right descent of t = next letter
                stack[-1] = (t, s + 1)
                stack.append((sys.right_multiply(t, s), 1))
                prefix.append(s)
                advanced = True
                break
        if not advanced:
            stack.pop()
            if prefix:
                prefix.pop()


def longest_element_reduced_words(
    sys: CoxeterSystem, budget: Budget | None = None
) -> Iterator[Word]:
    return reduced_words(sys, None, budget)


def c_sorting_word(sys: CoxeterSystem, c: Sequence[int] | None = None) -> Word:
    """The reduced word of the longest element whose occurrence in the
    infinite repetition of ``c`` (default s_1 s_2 ... s_n) is leftmost:
    scan c^infinity and greedily keep every letter that lengthens."""
    if c is None:
        c = tuple(sys.generators)
    c = as_word(c)
    u = sys.identity
    word: list[int] = []
    target = sys.longest_length
    pos = 0
    while len(word) < target:
        a = c[pos % len(c)]
        pos += 1
        if sys.is_ascent(u, a):
            u = sys.right_multiply(u, a)
            word.append(a)
        if pos > len(c) * (target + 1) * 4:
            raise AssertionError("greedy scan failed to terminate")
    return tuple(word)


# ---------------------------------------------------------------------------
# abelian vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumResult:
    """Aggregate over all reduced words of one element: the set of abelian
    vectors with word counts, the max letter multiplicity nu, and the
    coordinatewise minimum mu."""

    rank: int
    vectors: frozenset[tuple[int, ...]]
    counts: dict[tuple[int, ...], int]
    word_count: int

    @property
    def nu(self) -> int:
        return max(max(v) for v in self.vectors)

    @property
    def mu(self) -> tuple[int, ...]:
        return tuple(min(v[i] for v in self.vectors) for i in range(self.rank))

    def sorted_vectors(self) -> list[tuple[int, ...]]:
        return sorted(self.vectors, reverse=True)


def abelian_spectrum(
    sys: CoxeterSystem,
    word: Sequence[int] | None = None,
    aggregate: bool = True,
    budget: Budget | None = None,
) -> SpectrumResult:
    """Abelian vectors of all reduced words of the element spelled by
    ``word`` (default: the longest element).

    In aggregate mode (the default) nothing is enumerated word by word:
    reduced words are the strictly increasing walks identity -> element, so
    a dynamic program over (element, abelian vector) pairs along right
    descents yields the full vector multiset; memory never holds a word
    list, which is what makes D_5 feasible."""
    if budget is not None:
        budget.start()
    if aggregate:
        return _spectrum_aggregate(sys, word, budget)
    return _spectrum_streaming(sys, word, budget)


def _spectrum_aggregate(sys, word, budget) -> SpectrumResult:
    target = sys.longest_element if word is None else sys.element_of(word)
    n = sys.rank
    zero = (0,) * n
    memo: dict[object, dict[tuple[int, ...], int]] = {sys.identity: {zero: 1}}

    def visit(u) -> dict[tuple[int, ...], int]:
        # iterative post-order over the weak-order ideal below u
        stack = [u]
        while stack:
            v = stack[-1]
            if v in memo:
                stack.pop()
                continue
            pending = []
            for s in sys.generators:
                if sys.is_ascent(v, s):
                    continue
                child = sys.right_multiply(v, s)
                if child not in memo:
                    pending.append(child)
            if pending:
                stack.extend(pending)
                continue
            acc: dict[tuple[int, ...], int] = {}
            for s in sys.generators:
                if sys.is_ascent(v, s):
                    continue
                child = sys.right_multiply(v, s)
                for vec, cnt in memo[child].items():
                    bumped = vec[: s - 1] + (vec[s - 1] + 1,) + vec[s:]
                    acc[bumped] = acc.get(bumped, 0) + cnt
            if budget is not None:
                budget.tick(partial=acc, step=max(len(acc), 1))
            memo[v] = acc
            stack.pop()
        return memo[u]

    table = visit(target)
    return SpectrumResult(
        rank=n,
        vectors=frozenset(table),
        counts=dict(table),
        word_count=sum(table.values()),
    )


def _spectrum_streaming(sys, word, budget) -> SpectrumResult:
    counts: dict[tuple[int, ...], int] = {}
    total = 0
    for v in reduced_words(sys, word):
        vec = abelian_vector(v, sys.rank)
        counts[vec] = counts.get(vec, 0) + 1
        total += 1
        if budget is not None:
            budget.tick(
                partial=SpectrumResult(sys.rank, frozenset(counts), dict(counts), total)
            )
    return SpectrumResult(sys.rank, frozenset(counts), counts, total)
