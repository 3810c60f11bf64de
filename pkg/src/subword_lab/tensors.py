"""Parameter tensors, model matrices, and the factored determinant.

A parameter tensor P holds, for each of N output coordinates, the
coefficients of one polynomial of degree < d per letter; the model matrix
of a word v of length N puts the letter-v_l polynomial evaluated in the
private variable x_l into column l.  Its determinant factors as

    (letter-order sign of v) * (product of x_k - x_j over equal-letter
    position pairs) * (sum over column supports of minor-of-P times a
    product of Schur polynomials in the per-letter position variables)

and this module computes both sides: the factored form with its
certificate, and the flat column-expansion used as an oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from random import Random
from typing import Iterable, Sequence

from .polyring import (
    MPoly,
    RingElement,
    Scalar,
    det_poly,
    matrix_det,
    partial_schur,
    schur,
    schur_value,
    vandermonde_divisor,
    x_var,
)
from .words import Word, abelian_vector, as_word, occurrence_partition, s_sign

__all__ = [
    "ParameterTensor",
    "ModelMatrix",
    "model_matrix",
    "minor_support",
    "standard_partitions",
    "parameter_minor",
    "FactoredDeterminant",
    "det_factored",
    "flat_minor_sets",
    "flat_minor_permutation_sign",
    "coefficients_matrix",
    "variables_matrix",
    "det_via_flat_minors",
    "schur_sum",
    "schur_sum_value",
    "sign_of_model_det",
    "counting_parameter_tensor",
    "random_parameter_tensor",
    "generic_parameter_tensor",
]

ColumnSet = tuple[tuple[int, int], ...]  # sorted (letter, exponent) pairs


@dataclass(frozen=True)
class ParameterTensor:
    """Coefficients p^i_(s,k) on [N] x [n] x {0..d-1}, stored densely with
    columns in lexicographic (letter, exponent) order."""

    size: int  # N: number of rows
    rank: int  # n: number of letters
    degree: int  # d: polynomial coefficient slots 0..d-1
    rows: tuple[tuple[RingElement, ...], ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if len(self.rows) != self.size or any(
            len(r) != self.rank * self.degree for r in self.rows
        ):
            raise ValueError("rows must be N x (n*d)")

    def entry(self, i: int, s: int, k: int) -> RingElement:
        """p^i_(s,k) with 1-based row i and letter s, exponent 0 <= k < d."""
        if not (1 <= i <= self.size and 1 <= s <= self.rank and 0 <= k < self.degree):
            raise IndexError(f"bad tensor index ({i}, {s}, {k})")
        return self.rows[i - 1][(s - 1) * self.degree + k]

    def column(self, s: int, k: int) -> tuple[RingElement, ...]:
        j = (s - 1) * self.degree + k
        return tuple(row[j] for row in self.rows)

    def is_rational(self) -> bool:
        return not any(isinstance(e, MPoly) for row in self.rows for e in row)

    def substitute(self, assignment) -> "ParameterTensor":
        def ground(e):
            if isinstance(e, MPoly):
                e = e.substitute(assignment)
                if e.is_constant():
                    return e.constant_value()
            return e

        return ParameterTensor(
            self.size,
            self.rank,
            self.degree,
            tuple(tuple(ground(e) for e in row) for row in self.rows),
        )

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        entries = []
        for i in range(1, self.size + 1):
            for s in range(1, self.rank + 1):
                for k in range(self.degree):
                    value = self.entry(i, s, k)
                    if not value:
                        continue
                    if isinstance(value, MPoly):
                        text = str(value)
                    else:
                        f = Fraction(value)
                        text = str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
                    entries.append({"row": i, "letter": s, "deg": k, "value": text})
        return json.dumps(
            {
                "N": self.size,
                "letters": list(range(1, self.rank + 1)),
                "d": self.degree,
                "entries": entries,
            },
            indent=2,
        )

    @staticmethod
    def from_json(text: str | dict) -> "ParameterTensor":
        data = json.loads(text) if isinstance(text, str) else text
        size, d = data["N"], data["d"]
        rank = len(data["letters"])
        rows = [[0] * (rank * d) for _ in range(size)]
        for e in data["entries"]:
            value_text = str(e["value"])
            try:
                value: RingElement = Fraction(value_text)
            except ValueError:
                value = MPoly.from_string(value_text)
            rows[e["row"] - 1][(e["letter"] - 1) * d + e["deg"]] = value
        return ParameterTensor(size, rank, d, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class ModelMatrix:
    """N x N matrix whose column l holds polynomials in x_l only, built
    from a word and a parameter tensor."""

    word: Word
    tensor: ParameterTensor
    matrix: tuple[tuple[MPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.matrix)

    def evaluated(self, xs: Sequence[Scalar]) -> list[list[Scalar]]:
        """Numeric matrix with x_l set to xs[l-1]."""
        if len(xs) != self.size:
            raise ValueError("need one value per column")
        assignment = {f"x{l}": Fraction(v) for l, v in enumerate(xs, start=1)}
        out = []
        for row in self.matrix:
            vals = []
            for e in row:
                g = e.substitute(assignment)
                vals.append(Fraction(g.constant_value()))
            out.append(vals)
        return out


def model_matrix(word: Sequence[int], tensor: ParameterTensor) -> ModelMatrix:
    """M[i][l] = sum_k p^i_(v_l, k) x_l^k."""
    v = as_word(word)
    if len(v) != tensor.size:
        raise ValueError(
            f"word length {len(v)} != tensor row count {tensor.size}"
        )
    if any(a > tensor.rank for a in v):
        raise ValueError("word uses letters outside the tensor alphabet")
    cols = []
    for l, letter in enumerate(v, start=1):
        x = x_var(l)
        col = []
        for i in range(1, tensor.size + 1):
            entry = MPoly.constant(0)
            for k in range(tensor.degree):
                c = tensor.entry(i, letter, k)
                if c:
                    entry = entry + MPoly._coerce(c) * x**k
            col.append(entry)
        cols.append(col)
    matrix = tuple(
        tuple(cols[l][i] for l in range(len(v))) for i in range(tensor.size)
    )
    return ModelMatrix(v, tensor, matrix)


# ---------------------------------------------------------------------------
# column supports, standard partitions, minors
# ---------------------------------------------------------------------------


def minor_support(alpha: Sequence[int], degree: int) -> list[ColumnSet]:
    """All column sets with exactly alpha[i-1] columns of letter i, each a
    sorted tuple of (letter, exponent) pairs; empty when some count
    exceeds the available exponents."""
    choices = []
    for letter, count in enumerate(alpha, start=1):
        if count > degree:
            return []
        choices.append(
            [tuple((letter, r) for r in combo) for combo in combinations(range(degree), count)]
        )
    return [tuple(p for block in pick for p in block) for pick in product(*choices)]


def standard_partitions(
    columns: ColumnSet, alpha: Sequence[int]
) -> tuple[tuple[int, ...], ...]:
    """Per letter: sort the chosen exponents decreasingly and subtract the
    staircase c_i - j from the j-th entry, giving one partition per letter."""
    by_letter: dict[int, list[int]] = {}
    for letter, r in columns:
        by_letter.setdefault(letter, []).append(r)
    out = []
    for letter, count in enumerate(alpha, start=1):
        rs = sorted(by_letter.get(letter, []), reverse=True)
        if len(rs) != count:
            raise ValueError(
                f"column set has {len(rs)} columns for letter {letter}, expected {count}"
            )
        out.append(tuple(r - (count - j) for j, r in enumerate(rs, start=1)))
    return tuple(out)


def parameter_minor(tensor: ParameterTensor, columns: ColumnSet) -> RingElement:
    """Determinant of the square submatrix of the tensor on the given
    columns (taken in lexicographic order)."""
    cols = sorted(columns)
    if len(cols) != tensor.size:
        raise ValueError(
            f"need {tensor.size} columns for a maximal minor, got {len(cols)}"
        )
    sub = [[tensor.entry(i, s, k) for (s, k) in cols] for i in range(1, tensor.size + 1)]
    return det_poly(sub)


# ---------------------------------------------------------------------------
# factored determinant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactoredDeterminant:
    """Certificate for a model-matrix determinant: overall sign, the
    equal-letter Vandermonde divisor, and the non-zero minor terms with
    their Schur factors."""

    word: Word
    sign: int
    divisor: MPoly
    terms: tuple[tuple[ColumnSet, RingElement, MPoly], ...]
    support_size: int

    @property
    def schur_sum(self) -> MPoly:
        total = MPoly.constant(0)
        for _, minor, schur_factor in self.terms:
            total = total + MPoly._coerce(minor) * schur_factor
        return total

    @property
    def polynomial(self) -> MPoly:
        return self.sign * self.divisor * self.schur_sum


def det_factored(word: Sequence[int], tensor: ParameterTensor) -> FactoredDeterminant:
    """Factored determinant of the model matrix of ``word``: assembles the
    sign, Vandermonde divisor, and per-support minor times partial Schur
    function terms, in lexicographic support order."""
    v = as_word(word)
    if len(v) != tensor.size:
        raise ValueError("word length must match tensor row count")
    alpha = abelian_vector(v, tensor.rank)
    omega = occurrence_partition(v, tensor.rank)
    support = minor_support(alpha, tensor.degree)
    terms = []
    for columns in sorted(support):
        minor = parameter_minor(tensor, columns)
        if not minor:
            continue
        shapes = standard_partitions(columns, alpha)
        factor = partial_schur(shapes, omega)
        terms.append((columns, minor, factor))
    return FactoredDeterminant(
        word=v,
        sign=s_sign(v),
        divisor=vandermonde_divisor(v),
        terms=tuple(terms),
        support_size=len(support),
    )


def schur_sum(word: Sequence[int], tensor: ParameterTensor) -> MPoly:
    return det_factored(word, tensor).schur_sum


def schur_sum_value(
    word: Sequence[int], tensor: ParameterTensor, xs: Sequence[Scalar]
) -> Fraction | MPoly:
    """Evaluate the minor-weighted Schur sum at concrete x values (one per
    position of the word) without symbolic expansion."""
    v = as_word(word)
    alpha = abelian_vector(v, tensor.rank)
    omega = occurrence_partition(v, tensor.rank)
    if len(xs) != len(v):
        raise ValueError("need one x value per letter of the word")
    total: Fraction | MPoly = Fraction(0)
    for columns in minor_support(alpha, tensor.degree):
        minor = parameter_minor(tensor, columns)
        if not minor:
            continue
        shapes = standard_partitions(columns, alpha)
        factor = Fraction(1)
        for lam, block in zip(shapes, omega):
            if block:
                factor *= schur_value(lam, [xs[p - 1] for p in block])
        total = minor * factor + total
    return total


def sign_of_model_det(
    word: Sequence[int], tensor: ParameterTensor, xs: Sequence[Scalar]
) -> int:
    """Sign of det M(word, tensor) at positive x values that increase along
    equal letters, computed from the Schur sum (the divisor is positive
    under the hypothesis, so only the sum's sign matters)."""
    v = as_word(word)
    xs = [Fraction(x) for x in xs]
    if any(x <= 0 for x in xs):
        raise ValueError("x values must be positive")
    for j, k in combinations(range(len(v)), 2):
        if v[j] == v[k] and not xs[j] < xs[k]:
            raise ValueError(
                f"x must increase along equal letters; positions {j+1},{k+1} violate this"
            )
    if not tensor.is_rational():
        raise ValueError("sign evaluation needs a rational tensor")
    total = schur_sum_value(v, tensor, xs)
    if total == 0:
        return 0
    return s_sign(v) * (1 if total > 0 else -1)


# ---------------------------------------------------------------------------
# flat column expansion (oracle route)
# ---------------------------------------------------------------------------


def flat_index(position: int, exponent: int, degree: int) -> int:
    """Column (j, k) of the coefficients tensor as the flat index
    (j-1)*d + k in {0, ..., d*N - 1}."""
    return (position - 1) * degree + exponent


def flat_minor_sets(word: Sequence[int], degree: int) -> list[tuple[int, ...]]:
    """All N-subsets of flat column indices with distinct positions (which
    forces one column per position) and distinct exponents on equal
    letters; exactly the supports surviving both vanishing lemmas."""
    v = as_word(word)
    n_pos = len(v)
    out: list[tuple[int, ...]] = []

    def extend(pos: int, chosen: list[int]):
        if pos > n_pos:
            out.append(tuple(chosen))
            return
        for r in range(degree):
            ok = True
            for earlier, z in enumerate(chosen, start=1):
                if v[earlier - 1] == v[pos - 1] and z % degree == r:
                    ok = False
                    break
            if ok:
                chosen.append(flat_index(pos, r, degree))
                extend(pos + 1, chosen)
                chosen.pop()

    extend(1, [])
    return out


def coefficients_matrix(word: Sequence[int], tensor: ParameterTensor) -> list[list[RingElement]]:
    """The flattened coefficients tensor: N rows, one column block of d
    exponent slots per position, each block a copy of the letter's columns."""
    v = as_word(word)
    d = tensor.degree
    return [
        [
            tensor.entry(i, v[z // d], z % d)
            for z in range(d * len(v))
        ]
        for i in range(1, tensor.size + 1)
    ]


def variables_matrix(degree: int, size: int) -> list[list[MPoly]]:
    """The flattened variables tensor: d*N rows by N columns, row
    (j-1)*d + k carrying x_j^k in column j."""
    rows = []
    for z in range(degree * size):
        j, k = z // degree + 1, z % degree
        rows.append(
            [x_var(j) ** k if l == j else MPoly.constant(0) for l in range(1, size + 1)]
        )
    return rows


def flat_minor_permutation_sign(word: Sequence[int], flat_set: Sequence[int], degree: int) -> int:
    """Sign of the within-letter reordering that sorts the chosen exponent
    per position into lexicographic column order."""
    v = as_word(word)
    sign = 1
    for letter in set(v):
        rs = [z % degree for z in flat_set if v[z // degree] == letter]
        inversions = sum(
            1 for a in range(len(rs)) for b in range(a + 1, len(rs)) if rs[b] < rs[a]
        )
        if inversions & 1:
            sign = -sign
    return sign


def flat_to_column_set(word: Sequence[int], flat_set: Sequence[int], degree: int) -> ColumnSet:
    v = as_word(word)
    return tuple(sorted((v[z // degree], z % degree) for z in flat_set))


def det_via_flat_minors(word: Sequence[int], tensor: ParameterTensor) -> MPoly:
    """Column-expansion determinant: sum over surviving flat supports of
    the coefficients-matrix minor times the monomial of chosen exponents.
    Independent oracle for the factored route."""
    v = as_word(word)
    d = tensor.degree
    coeffs = coefficients_matrix(v, tensor)
    total = MPoly.constant(0)
    for flat_set in flat_minor_sets(v, d):
        sub = [[coeffs[i][z] for z in flat_set] for i in range(tensor.size)]
        minor = det_poly(sub)
        if not minor:
            continue
        mono = MPoly.constant(1)
        for z in flat_set:
            mono = mono * x_var(z // d + 1) ** (z % d)
        total = total + MPoly._coerce(minor) * mono
    return total


# ---------------------------------------------------------------------------
# ready-made and random tensors
# ---------------------------------------------------------------------------


def _m_value(m: int | None) -> RingElement:
    return MPoly.variable("m") if m is None else Fraction(m)


def counting_parameter_tensor(c_word: str, m: int | None = None) -> ParameterTensor:
    """The parameter tensors behind the classical counting-matrix
    construction, for initial words "1", "12", "123", "213"; ``m`` is the
    repetition parameter, symbolic when None."""
    mm = _m_value(m)
    half = Fraction(1, 2)
    if c_word == "1":
        return ParameterTensor(1, 1, 1, ((1,),))
    if c_word == "12":
        rows = (
            (1, 0, 0, 0),
            (mm, -1, 0, 1),
            (0, 0, 1, 0),
        )
        return ParameterTensor(3, 2, 2, rows)
    if c_word == "123":
        binom2 = (mm + 2) * (mm + 1) * half  # C(m+2, 2)
        rows = (
            (1, 0, 0, 0, 0, 0, 0, 0, 0),
            (0, 1, 0, mm + 1, -1, 0, 0, 0, 0),
            (0, half, half, 0, mm + 1, -1, binom2, -mm - Fraction(3, 2), half),
            (0, 0, 0, 1, 0, 0, 0, 0, 0),
            (0, 0, 0, 0, 1, 0, mm + 1, -1, 0),
            (0, 0, 0, 0, 0, 0, 1, 0, 0),
        )
        return ParameterTensor(6, 3, 3, tuple(tuple(_tidy(e) for e in r) for r in rows))
    if c_word == "213":
        binom1 = (mm + 1) * mm * half  # C(m+1, 2)
        rows = (
            (0, 0, 0, 1, 0, 0, 0, 0, 0),
            (mm + 1, -1, 0, 0, 1, 0, 0, 0, 0),
            (0, 0, 0, 0, 1, 0, mm + 1, -1, 0),
            (binom1, half, -half, 0, 0, 1, binom1, half, -half),
            (0, 0, 0, 0, 0, 0, 1, 0, 0),
            (1, 0, 0, 0, 0, 0, 0, 0, 0),
        )
        return ParameterTensor(6, 3, 3, tuple(tuple(_tidy(e) for e in r) for r in rows))
    raise ValueError(f"no built-in parameter tensor for initial word {c_word!r}")


def _tidy(e: RingElement) -> RingElement:
    if isinstance(e, MPoly) and e.is_constant():
        return e.constant_value()
    if isinstance(e, Fraction) and e.denominator == 1:
        return int(e)
    return e


def random_parameter_tensor(
    size: int, rank: int, degree: int, rng: Random, max_num: int = 9, max_den: int = 4
) -> ParameterTensor:
    rows = tuple(
        tuple(
            Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
            for _ in range(rank * degree)
        )
        for _ in range(size)
    )
    return ParameterTensor(size, rank, degree, rows)


def generic_parameter_tensor(size: int, rank: int, degree: int) -> ParameterTensor:
    """Fully symbolic tensor with one variable per entry."""
    rows = tuple(
        tuple(
            MPoly.variable(f"p{i}_{s}_{k}")
            for s in range(1, rank + 1)
            for k in range(degree)
        )
        for i in range(1, size + 1)
    )
    return ParameterTensor(size, rank, degree, rows)
