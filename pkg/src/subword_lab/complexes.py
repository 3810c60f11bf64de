"""Subword complexes, signature matrices, and chirotope data.

Facets of the subword complex of a word p are the complements of the
occurrences of reduced words of the longest element inside p.  A Gale-side
matrix B is a signature matrix when, over every such occurrence, the
maximal minor of B has exactly the move-parity sign of the occurring
reduced word; the equivalent Schur-side criterion evaluates the
minor-weighted Schur sum of a parameter tensor interpolated through B's
columns and compares its sign with the punctual sign.  Both checkers, the
interpolation extraction, exact Gale transforms, and chirotope sign maps
live here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .coxeter import CoxeterSystem, demazure_product, reduced_words
from .polyring import matrix_det
from .redgraph import SignAssignment, punctual_sign, t_sign
from .tensors import ParameterTensor, schur_sum_value
from .words import Word, abelian_vector, as_word, occurrence_partition, s_sign

__all__ = [
    "SubwordComplex",
    "build_complex",
    "occurrences",
    "GaleMatrixData",
    "Witness",
    "Verdict",
    "check_signature_matrix",
    "extract_parameter_tensor",
    "check_schur_conditions",
    "ChirotopeData",
    "chirotope_from_matrix",
    "gale_transform",
    "Matrix",
    "parse_matrix_csv",
    "parse_matrix_json",
    "matrix_to_json",
]

Matrix = tuple[tuple[Fraction, ...], ...]


def _as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(e) for e in row) for row in rows)


# ---------------------------------------------------------------------------
# occurrences and subword complexes
# ---------------------------------------------------------------------------


def occurrences(sys: CoxeterSystem, p: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All position sets (1-based, increasing) where a reduced word of the
    longest element occurs as a subword of p, in lexicographic order.

    Backtracking over positions: a chosen subword prefix must lengthen at
    every step, and a branch dies when the remaining positions cannot
    supply the missing letters."""
    word = as_word(p)
    target = sys.longest_length
    m = len(word)
    chosen: list[int] = []

    def extend(pos: int, element, length: int) -> Iterator[tuple[int, ...]]:
        if length == target:
            yield tuple(chosen)
            return
        if pos > m or target - length > m - pos + 1:
            return
        a = word[pos - 1]
        if sys.is_ascent(element, a):
            chosen.append(pos)
            yield from extend(pos + 1, sys.right_multiply(element, a), length + 1)
            chosen.pop()
        yield from extend(pos + 1, element, length)

    yield from extend(1, sys.identity, 0)


@dataclass(frozen=True)
class SubwordComplex:
    """Facets are complements of occurrences; non-vertices are the
    positions contained in every occurrence."""

    system: CoxeterSystem
    word: Word
    facets: tuple[tuple[int, ...], ...]
    non_vertices: tuple[int, ...]

    def combinatorial_type(self, facet: Sequence[int]) -> Word:
        """The complement subword spelled by the positions off the facet."""
        off = set(facet)
        return tuple(a for pos, a in enumerate(self.word, start=1) if pos not in off)

    def facet_abelian_vector(self, facet: Sequence[int]) -> tuple[int, ...]:
        return abelian_vector(self.combinatorial_type(facet), self.system.rank)


def build_complex(sys: CoxeterSystem, p: Sequence[int]) -> SubwordComplex:
    """Enumerate all facets of the subword complex of p; empty facet list
    when p does not contain the longest element."""
    word = as_word(p)
    if sys.length(demazure_product(sys, word)) < sys.longest_length:
        return SubwordComplex(sys, word, (), ())
    m = len(word)
    facets = sorted(
        tuple(sorted(set(range(1, m + 1)) - set(occ))) for occ in occurrences(sys, word)
    )
    covered = set()
    for f in facets:
        covered.update(f)
    non_vertices = tuple(sorted(set(range(1, m + 1)) - covered))
    return SubwordComplex(sys, word, tuple(facets), non_vertices)


# ---------------------------------------------------------------------------
# signature matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaleMatrixData:
    """A Gale-side matrix B (one column per letter of p) together with the
    positive parameters x assigned to the letters; x must increase along
    positions carrying the same letter."""

    matrix: Matrix
    word: Word
    x: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", _as_matrix(self.matrix))
        object.__setattr__(self, "word", as_word(self.word))
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))
        m = len(self.word)
        if any(len(row) != m for row in self.matrix):
            raise ValueError("matrix needs one column per letter of the word")
        if len(self.x) != m:
            raise ValueError("need one x value per letter of the word")
        for j, k in combinations(range(m), 2):
            if self.word[j] == self.word[k] and not self.x[j] < self.x[k]:
                raise ValueError(
                    f"x must increase along equal letters; positions {j+1},{k+1} violate this"
                )

    @staticmethod
    def with_default_x(matrix, word) -> "GaleMatrixData":
        word = as_word(word)
        return GaleMatrixData(matrix, word, tuple(Fraction(i) for i in range(1, len(word) + 1)))


@dataclass(frozen=True)
class Witness:
    """One failed occurrence: the reduced word, its positions, the value
    seen, and the sign required."""

    word: Word
    positions: tuple[int, ...]
    found: str
    expected: int
    condition: str  # "basis" for zero values, "sign" otherwise


@dataclass(frozen=True)
class Verdict:
    ok: bool
    checked: int
    witnesses: tuple[Witness, ...] = ()
    by_abelian_vector: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "ok": self.ok,
                "checked": self.checked,
                "witnesses": [
                    {
                        "word": "".join(map(str, w.word)),
                        "positions": list(w.positions),
                        "found": w.found,
                        "expected": w.expected,
                        "condition": w.condition,
                    }
                    for w in self.witnesses
                ],
                "by_abelian_vector": {
                    ",".join(map(str, k)): v for k, v in sorted(self.by_abelian_vector.items())
                },
            },
            indent=2,
        )


def check_signature_matrix(
    data: GaleMatrixData,
    sys: CoxeterSystem,
    tau: SignAssignment | None = None,
    stop_at_first: bool = False,
) -> Verdict:
    """Verify that every maximal minor of B over an occurrence of a reduced
    word v of the longest element (columns in increasing position order)
    has sign equal to the move-parity sign of v.  Zero minors are reported
    as basis failures."""
    if tau is None:
        tau = t_sign(sys)
    rows = len(data.matrix)
    if rows != sys.longest_length:
        raise ValueError(
            f"matrix has {rows} rows but the longest element has length {sys.longest_length}"
        )
    witnesses = []
    checked = 0
    for occ in occurrences(sys, data.word):
        v = tuple(data.word[i - 1] for i in occ)
        det = matrix_det([[row[i - 1] for i in occ] for row in data.matrix])
        expected = tau[v]
        checked += 1
        if det == 0:
            witnesses.append(Witness(v, occ, "0", expected, "basis"))
        elif (det > 0) != (expected > 0):
            witnesses.append(Witness(v, occ, str(det), expected, "sign"))
        if witnesses and stop_at_first:
            break
    return Verdict(ok=not witnesses, checked=checked, witnesses=tuple(witnesses))


def extract_parameter_tensor(data: GaleMatrixData) -> ParameterTensor:
    """Interpolate, letter by letter and coordinate by coordinate, the
    polynomial through the points (x_i, B(k, i)) over the occurrences of
    each letter; returns the tensor of coefficients, with degree one less
    than the largest letter multiplicity in the word."""
    word, x, B = data.word, data.x, data.matrix
    rank = max(word)
    blocks = occurrence_partition(word, rank)
    degree = max(len(b) for b in blocks)
    size = len(B)
    rows = [[Fraction(0)] * (rank * degree) for _ in range(size)]
    for s, block in enumerate(blocks, start=1):
        if not block:
            continue
        points = [x[i - 1] for i in block]
        for k in range(size):
            values = [B[k][i - 1] for i in block]
            coeffs = _interpolate(points, values, degree)
            for t, c in enumerate(coeffs):
                rows[k][(s - 1) * degree + t] = c
    return ParameterTensor(size, rank, degree, tuple(tuple(r) for r in rows))


def _interpolate(points: list[Fraction], values: list[Fraction], degree: int) -> list[Fraction]:
    """Coefficients (low to high, padded to ``degree``) of the unique
    polynomial of degree < len(points) through the given points, by
    Lagrange bases expanded over exact rationals."""
    if len(set(points)) != len(points):
        raise ValueError(f"duplicate interpolation abscissae: {points}")
    coeffs = [Fraction(0)] * degree
    for i, (xi, yi) in enumerate(zip(points, values)):
        # expand prod_{j != i} (t - x_j) / (x_i - x_j)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            denom *= xi - xj
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
        scale = yi / denom
        for t, b in enumerate(basis):
            coeffs[t] += scale * b
    return coeffs


def check_schur_conditions(
    tensor: ParameterTensor,
    p: Sequence[int],
    x: Sequence[Fraction],
    sys: CoxeterSystem,
    punctual: SignAssignment | None = None,
    stop_at_first: bool = False,
) -> Verdict:
    """The Schur-side criterion: for every occurrence of every reduced word
    v of the longest element in p, the minor-weighted Schur sum of the
    tensor, evaluated at the occurrence's x values, must have the punctual
    sign of v.  The verdict also aggregates outcomes per abelian vector
    (occurrences sharing a vector have equal sums up to relabeling)."""
    if punctual is None:
        punctual = punctual_sign(sys)
    word = as_word(p)
    xs = [Fraction(v) for v in x]
    if len(xs) != len(word):
        raise ValueError("need one x value per letter of p")
    witnesses = []
    by_vector: dict[tuple[int, ...], dict[str, int]] = {}
    checked = 0
    for occ in occurrences(sys, word):
        v = tuple(word[i - 1] for i in occ)
        value = schur_sum_value(v, tensor, [xs[i - 1] for i in occ])
        expected = punctual[v]
        checked += 1
        key = abelian_vector(v, sys.rank)
        bucket = by_vector.setdefault(key, {"pass": 0, "fail": 0})
        if value == 0:
            witnesses.append(Witness(v, occ, "0", expected, "basis"))
            bucket["fail"] += 1
        elif (value > 0) != (expected > 0):
            witnesses.append(Witness(v, occ, str(value), expected, "sign"))
            bucket["fail"] += 1
        else:
            bucket["pass"] += 1
        if witnesses and stop_at_first:
            break
    return Verdict(
        ok=not witnesses,
        checked=checked,
        witnesses=tuple(witnesses),
        by_abelian_vector=by_vector,
    )


# ---------------------------------------------------------------------------
# chirotopes and Gale transforms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChirotopeData:
    """Sign map on sorted subsets, extended to arbitrary tuples by the
    alternating rule (repeats give 0)."""

    rank: int
    ground: int
    signs: dict[tuple[int, ...], int]

    def sign(self, subset: Sequence[int]) -> int:
        tup = tuple(subset)
        if len(tup) != self.rank:
            raise ValueError(f"need {self.rank} indices, got {len(tup)}")
        if len(set(tup)) != len(tup):
            return 0
        order = sorted(range(len(tup)), key=lambda i: tup[i])
        swaps = sum(
            1
            for a in range(len(order))
            for b in range(a + 1, len(order))
            if order[b] < order[a]
        )
        base = self.signs[tuple(sorted(tup))]
        return -base if swaps & 1 else base

    def bases(self) -> list[tuple[int, ...]]:
        return sorted(k for k, s in self.signs.items() if s != 0)


def chirotope_from_matrix(A: Sequence[Sequence]) -> ChirotopeData:
    """Sign of every maximal minor of the configuration matrix, indexed by
    sorted column subsets."""
    mat = _as_matrix(A)
    r = len(mat)
    m = len(mat[0]) if mat else 0
    signs = {}
    for cols in combinations(range(1, m + 1), r):
        det = matrix_det([[row[c - 1] for c in cols] for row in mat])
        signs[cols] = 0 if det == 0 else (1 if det > 0 else -1)
    return ChirotopeData(rank=r, ground=m, signs=signs)


def gale_transform(A: Sequence[Sequence]) -> Matrix:
    """An exact basis of the right kernel of A, as rows; requires full row
    rank.  Satisfies A . transpose(B) = 0."""
    mat = [list(row) for row in _as_matrix(A)]
    r = len(mat)
    m = len(mat[0]) if mat else 0
    # reduced row echelon form
    pivots: list[int] = []
    row = 0
    for col in range(m):
        pivot = next((i for i in range(row, r) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        scale = mat[row][col]
        mat[row] = [e / scale for e in mat[row]]
        for i in range(r):
            if i != row and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[row])]
        pivots.append(col)
        row += 1
        if row == r:
            break
    if len(pivots) < r:
        raise ValueError("matrix does not have full row rank")
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * m
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -mat[i][f]
        basis.append(tuple(vec))
    B = tuple(basis)
    for arow in _as_matrix(A):
        for brow in B:
            if sum(a * b for a, b in zip(arow, brow)) != 0:
                raise AssertionError("kernel construction failed")
    return B


# ---------------------------------------------------------------------------
# matrix I/O
# ---------------------------------------------------------------------------


def parse_matrix_csv(text: str) -> Matrix:
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(tuple(Fraction(tok.strip()) for tok in line.split(",")))
    if len({len(r) for r in rows}) > 1:
        raise ValueError("ragged rows in matrix input")
    return tuple(rows)


def parse_matrix_json(text: str) -> Matrix:
    data = json.loads(text)
    if isinstance(data, dict):
        data = data["rows"]
    return tuple(tuple(Fraction(str(e)) for e in row) for row in data)


def matrix_to_json(matrix: Matrix) -> str:
    return json.dumps(
        {"rows": [[str(e) for e in row] for row in matrix]}, indent=2
    )
