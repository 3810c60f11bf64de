"""Sparse multivariate polynomials over exact rationals.

Polynomials carry their own ordered variable universe, so values from
different computations can be combined freely; the canonical term order is
graded lex.  Everything is exact: coefficients are ints or ``Fraction``s,
never floats.  On top of the arithmetic live the determinant routines
(fraction-free Bareiss with a cofactor fallback), exact division, and the
Schur-function machinery (bialternant quotients, partial Schur products,
Vandermonde divisors).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence, Union

Scalar = Union[int, Fraction]
RingElement = Union[int, Fraction, "MPoly"]

__all__ = [
    "MPoly",
    "ExactDivisionError",
    "variable",
    "x_var",
    "det_poly",
    "exact_divide",
    "matrix_det",
    "is_partition",
    "conjugate_partition",
    "partitions_in_box",
    "schur",
    "schur_value",
    "partial_schur",
    "vandermonde_matrix",
    "vandermonde_divisor",
    "semistandard_tableaux",
    "schur_via_tableaux",
]


class ExactDivisionError(ArithmeticError):
    """Raised when a polynomial division leaves a non-zero remainder."""

    def __init__(self, message: str, remainder: "MPoly"):
        super().__init__(message)
        self.remainder = remainder


_NAME_SPLIT = re.compile(r"^(.*?)(\d*)$")


def _name_key(name: str) -> tuple[str, int]:
    """Sort key splitting a trailing number, so x2 < x10 and m < x1."""
    stem, digits = _NAME_SPLIT.match(name).groups()
    return (stem, int(digits) if digits else -1)


def _norm_coeff(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _coeff_str(c: Scalar) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class MPoly:
    """Immutable sparse polynomial: map from exponent vectors to coefficients.

    ``names`` is the ordered variable universe of this particular value;
    binary operations merge universes and the canonical form never stores
    zero coefficients or unused variables.
    """

    __slots__ = ("names", "terms", "_hash")

    def __init__(self, names: Sequence[str] = (), terms: Mapping[tuple[int, ...], Scalar] | None = None):
        names = tuple(names)
        terms = dict(terms or {})
        # prune zero coefficients and unused variables for canonical form
        terms = {e: _norm_coeff(c) for e, c in terms.items() if c}
        used = [i for i in range(len(names)) if any(e[i] for e in terms)]
        if len(used) != len(names):
            names = tuple(names[i] for i in used)
            terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
        keys = sorted(range(len(names)), key=lambda i: _name_key(names[i]))
        if keys != list(range(len(names))):
            names = tuple(names[i] for i in keys)
            terms = {tuple(e[i] for i in keys): c for e, c in terms.items()}
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(c: Scalar) -> "MPoly":
        return MPoly((), {(): c} if c else {})

    @staticmethod
    def variable(name: str) -> "MPoly":
        return MPoly((name,), {(1,): 1})

    @staticmethod
    def _coerce(value: RingElement) -> "MPoly":
        if isinstance(value, MPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return MPoly.constant(value)
        raise TypeError(f"cannot interpret {value!r} as a polynomial")

    # -- basic queries -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.names

    def constant_value(self) -> Scalar:
        if self.names:
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        if name not in self.names:
            return 0
        i = self.names.index(name)
        return max(e[i] for e in self.terms)

    def leading_term(self) -> tuple[tuple[int, ...], Scalar]:
        """Leading (exponents, coefficient) in graded lex order."""
        if not self.terms:
            return ((0,) * len(self.names), 0)
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def _order_key(self) -> tuple:
        e, _ = self.leading_term()
        return (sum(e), e)

    # -- alignment of variable universes ------------------------------------

    def _aligned(self, other: "MPoly") -> tuple[tuple[str, ...], dict, dict]:
        if self.names == other.names:
            return self.names, self.terms, other.terms
        names = tuple(sorted(set(self.names) | set(other.names), key=_name_key))
        return names, _remap(self, names), _remap(other, names)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: RingElement) -> "MPoly":
        other = MPoly._coerce(other)
        names, a, b = self._aligned(other)
        terms = dict(a)
        for e, c in b.items():
            terms[e] = terms.get(e, 0) + c
        return MPoly(names, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: RingElement) -> "MPoly":
        return self + (-MPoly._coerce(other))

    def __rsub__(self, other: RingElement) -> "MPoly":
        return MPoly._coerce(other) + (-self)

    def __mul__(self, other: RingElement) -> "MPoly":
        other = MPoly._coerce(other)
        if other.is_constant():
            c = other.terms.get((), 0)
            if not c:
                return MPoly.constant(0)
            return MPoly(self.names, {e: v * c for e, v in self.terms.items()})
        if self.is_constant():
            return other * self
        names, a, b = self._aligned(other)
        terms: dict[tuple[int, ...], Scalar] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                terms[e] = terms.get(e, 0) + ca * cb
        return MPoly(names, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def exact_div(self, den: RingElement) -> "MPoly":
        """Exact quotient self/den; raises ExactDivisionError on remainder."""
        den = MPoly._coerce(den)
        if not den:
            raise ZeroDivisionError("polynomial division by zero")
        if den.is_constant():
            c = Fraction(den.constant_value())
            return MPoly(self.names, {e: Fraction(v) / c for e, v in self.terms.items()})
        names, a, b = self._aligned(den)
        rem = dict(a)
        quot: dict[tuple[int, ...], Scalar] = {}
        de, dc = max(b, key=lambda e: (sum(e), e)), None
        dc = b[de]
        while rem:
            re = max(rem, key=lambda e: (sum(e), e))
            qe = tuple(i - j for i, j in zip(re, de))
            if any(i < 0 for i in qe):
                raise ExactDivisionError("non-exact polynomial division", MPoly(names, rem))
            qc = _div_scalar(rem[re], dc)
            quot[qe] = quot.get(qe, 0) + qc
            for e, c in b.items():
                se = tuple(i + j for i, j in zip(qe, e))
                nc = rem.get(se, 0) - qc * c
                if nc:
                    rem[se] = nc
                else:
                    rem.pop(se, None)
        return MPoly(names, quot)

    # -- substitution --------------------------------------------------------

    def substitute(self, assignment: Mapping[str, RingElement]) -> "MPoly":
        """Substitute values (scalars or polynomials) for named variables."""
        if not any(n in assignment for n in self.names):
            return self
        result = MPoly.constant(0)
        for e, c in self.terms.items():
            factor = MPoly.constant(c)
            for name, exp in zip(self.names, e):
                if not exp:
                    continue
                value = assignment.get(name)
                base = MPoly.variable(name) if value is None else MPoly._coerce(value)
                factor = factor * base**exp
            result = result + factor
        return result

    def __call__(self, **bindings: RingElement) -> "MPoly":
        return self.substitute(bindings)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        a = {e: Fraction(c) for e, c in self.terms.items()}
        b = {e: Fraction(c) for e, c in other.terms.items()}
        return self.names == other.names and a == b

    def __hash__(self):
        if self._hash is None:
            h = hash((self.names, frozenset((e, Fraction(c)) for e, c in self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # -- serialization ---------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        """Terms in descending graded lex order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k
            )
            frac = Fraction(c)
            mag = _coeff_str(abs(frac))
            if mono and mag == "1":
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = mag
            sign = "-" if frac < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MPoly({self})"

    @staticmethod
    def from_string(text: str) -> "MPoly":
        """Parse the canonical string format produced by ``str``."""
        text = text.strip()
        if text == "0":
            return MPoly.constant(0)
        text = text.replace(" - ", " + -").lstrip()
        result = MPoly.constant(0)
        for chunk in text.split(" + "):
            chunk = chunk.strip()
            neg = chunk.startswith("-")
            if neg:
                chunk = chunk[1:]
            term = MPoly.constant(-1 if neg else 1)
            for factor in chunk.split("*"):
                factor = factor.strip()
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    term = term * Fraction(factor)
                else:
                    m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*?)(?:\^(\d+))?", factor)
                    if not m:
                        raise ValueError(f"cannot parse factor {factor!r}")
                    name, exp = m.group(1), int(m.group(2) or 1)
                    term = term * MPoly.variable(name) ** exp
            result = result + term
        return result

    def to_json(self) -> dict:
        return {
            "vars": list(self.names),
            "terms": [
                {"exponents": list(e), "coeff": _coeff_str(c)}
                for e, c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json(data: dict | str) -> "MPoly":
        if isinstance(data, str):
            data = json.loads(data)
        names = tuple(data["vars"])
        terms = {
            tuple(t["exponents"]): Fraction(t["coeff"]) for t in data["terms"]
        }
        return MPoly(names, terms)


def _remap(p: MPoly, names: tuple[str, ...]) -> dict[tuple[int, ...], Scalar]:
    pos = {n: i for i, n in enumerate(names)}
    out = {}
    for e, c in p.terms.items():
        ne = [0] * len(names)
        for n, k in zip(p.names, e):
            ne[pos[n]] = k
        out[tuple(ne)] = c
    return out


def _div_scalar(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return _norm_coeff(Fraction(a) / Fraction(b))


def variable(name: str) -> MPoly:
    return MPoly.variable(name)


def x_var(i: int) -> MPoly:
    """The position variable x_i."""
    return MPoly.variable(f"x{i}")


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------


def _ring_exact_div(a: RingElement, b: RingElement) -> RingElement:
    if isinstance(a, MPoly) or isinstance(b, MPoly):
        return MPoly._coerce(a).exact_div(b)
    return _div_scalar(a, b)


def _pivot_key(e: RingElement) -> tuple:
    if isinstance(e, MPoly):
        lead, _ = e.leading_term()
        return (sum(lead), lead)
    return (0, ())


def det_poly(matrix: Sequence[Sequence[RingElement]], method: str = "bareiss") -> RingElement:
    """Exact determinant of a square matrix of polynomials or rationals.

    ``method`` is "bareiss" (fraction-free elimination, pivots chosen with
    minimal graded-lex leading term) or "cofactor" (expansion by minors with
    shared subproblems, the fallback when elimination is unattractive).
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    if method == "cofactor":
        return _det_cofactor(matrix)
    if method != "bareiss":
        raise ValueError(f"unknown method {method!r}")
    m = [list(row) for row in matrix]
    sign = 1
    prev: RingElement = 1
    for k in range(n - 1):
        pivots = [i for i in range(k, n) if m[i][k]]
        if not pivots:
            return MPoly.constant(0) if _has_poly(matrix) else 0
        pick = min(pivots, key=lambda i: _pivot_key(m[i][k]))
        if pick != k:
            m[k], m[pick] = m[pick], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _ring_exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = 0
        prev = m[k][k]
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result


def _has_poly(matrix) -> bool:
    return any(isinstance(e, MPoly) for row in matrix for e in row)


def _det_cofactor(matrix: Sequence[Sequence[RingElement]]) -> RingElement:
    """Column-by-column Laplace expansion with subset memoization.

    The hot loop runs on integer coefficients (denominators are cleared
    per row and restored at the end) with exponent vectors packed into
    single ints, so no per-operation normalization happens.
    """
    n = len(matrix)
    entries = [[MPoly._coerce(e) for e in row] for row in matrix]
    names = tuple(
        sorted({nm for row in entries for e in row for nm in e.names}, key=_name_key)
    )
    raw = [[_remap(e, names) for e in row] for row in entries]

    # clear denominators row by row; det scales by the product
    restore = Fraction(1)
    for i in range(n):
        denom = 1
        for cell in raw[i]:
            for c in cell.values():
                if isinstance(c, Fraction):
                    denom = denom * c.denominator // _gcd(denom, c.denominator)
        if denom != 1:
            restore /= denom
            raw[i] = [
                {e: int(c * denom) for e, c in cell.items()} for cell in raw[i]
            ]
        else:
            raw[i] = [
                {e: int(c) if isinstance(c, Fraction) else c for e, c in cell.items()}
                for cell in raw[i]
            ]

    # pack exponent vectors into ints; per-variable budget from column maxima
    width = []
    for v in range(len(names)):
        bound = sum(
            max((e[v] for i in range(n) for e in raw[i][col]), default=0)
            for col in range(n)
        )
        width.append(max(bound.bit_length(), 1))
    shifts = [0] * len(names)
    for v in range(1, len(names)):
        shifts[v] = shifts[v - 1] + width[v - 1]

    def pack(e: tuple[int, ...]) -> int:
        key = 0
        for v, k in enumerate(e):
            key |= k << shifts[v]
        return key

    packed = [[{pack(e): c for e, c in cell.items()} for cell in row] for row in raw]

    states: dict[int, dict[int, int]] = {0: {0: 1}}
    for col in range(n):
        nxt: dict[int, dict[int, int]] = {}
        for used, acc in states.items():
            flips = 0
            for i in range(n - 1, -1, -1):
                bit = 1 << i
                if used & bit:
                    flips += 1
                    continue
                entry = packed[i][col]
                if not entry:
                    continue
                negate = flips & 1
                bucket = nxt.setdefault(used | bit, {})
                get = bucket.get
                for ea, ca in acc.items():
                    if negate:
                        ca = -ca
                    for eb, cb in entry.items():
                        e = ea + eb
                        bucket[e] = get(e, 0) + ca * cb
        states = {
            k: cleaned for k, v in nxt.items() if (cleaned := {e: c for e, c in v.items() if c})
        }
        if not states:
            return MPoly.constant(0) if _has_poly(matrix) else 0
    final = states.get((1 << n) - 1, {})

    mask = [(1 << w) - 1 for w in width]
    terms = {
        tuple((key >> shifts[v]) & mask[v] for v in range(len(names))): c * restore
        for key, c in final.items()
    }
    result = MPoly(names, terms)
    if not _has_poly(matrix) and result.is_constant():
        return result.constant_value()
    return result


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def matrix_det(matrix: Sequence[Sequence[Scalar]]) -> Fraction:
    """Determinant of a rational matrix, as a Fraction."""
    value = det_poly([[Fraction(e) for e in row] for row in matrix])
    return Fraction(value)


def exact_divide(num: RingElement, den: RingElement) -> MPoly:
    """Exact polynomial quotient; raises ExactDivisionError with the
    offending remainder when ``den`` does not divide ``num``."""
    return MPoly._coerce(num).exact_div(den)


# ---------------------------------------------------------------------------
# partitions and Schur functions
# ---------------------------------------------------------------------------


def is_partition(parts: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(parts, parts[1:])) and all(p >= 0 for p in parts)


def conjugate_partition(parts: Sequence[int]) -> tuple[int, ...]:
    if not is_partition(parts):
        raise ValueError(f"not weakly decreasing: {parts}")
    width = parts[0] if parts else 0
    return tuple(sum(1 for p in parts if p > j) for j in range(width))


def partitions_in_box(rows: int, width: int) -> Iterator[tuple[int, ...]]:
    """All weakly decreasing tuples of length ``rows`` with parts <= width."""
    if rows == 0:
        yield ()
        return
    for first in range(width, -1, -1):
        for rest in partitions_in_box(rows - 1, first):
            yield (first,) + rest


def _var_names(indices: Sequence[int | str]) -> tuple[str, ...]:
    return tuple(j if isinstance(j, str) else f"x{j}" for j in indices)


def vandermonde_matrix(indices: Sequence[int | str]) -> list[list[MPoly]]:
    """The matrix (x_j^(i-1)) with columns in the order of ``indices``."""
    names = _var_names(indices)
    return [[MPoly.variable(n) ** i for n in names] for i in range(len(names))]


def _bialternant_matrix(lam: Sequence[int], names: Sequence[str]) -> list[list[MPoly]]:
    d = len(names)
    return [
        [MPoly.variable(n) ** (i + lam[d - 1 - i]) for n in names]
        for i in range(d)
    ]


@lru_cache(maxsize=None)
def _schur_cached(lam: tuple[int, ...], names: tuple[str, ...]) -> MPoly:
    if not names:
        return MPoly.constant(1)
    num = det_poly(_bialternant_matrix(lam, names), method="cofactor")
    den = det_poly(vandermonde_matrix(names), method="cofactor")
    return MPoly._coerce(num).exact_div(den)


def schur(lam: Sequence[int], indices: Sequence[int | str]) -> MPoly:
    """Schur polynomial of shape ``lam`` in the variables indexed by
    ``indices`` (ints j mean x_j), as a bialternant quotient."""
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError(f"not a partition: {lam}")
    names = _var_names(indices)
    if len(lam) != len(names):
        raise ValueError(f"partition length {len(lam)} != variable count {len(names)}")
    return _schur_cached(lam, names)


def schur_value(lam: Sequence[int], values: Sequence[Scalar]) -> Fraction:
    """Evaluate the Schur polynomial at distinct rational values without
    expanding it symbolically (ratio of numeric determinants)."""
    lam = tuple(lam)
    d = len(values)
    if len(lam) != d:
        raise ValueError("shape/value length mismatch")
    if d == 0:
        return Fraction(1)
    xs = [Fraction(v) for v in values]
    num = [[xs[j] ** (i + lam[d - 1 - i]) for j in range(d)] for i in range(d)]
    den = Fraction(1)
    for i, j in combinations(range(d), 2):
        den *= xs[j] - xs[i]
    if den == 0:
        raise ZeroDivisionError("repeated values in Schur evaluation")
    return matrix_det(num) / den


def partial_schur(
    shapes: Sequence[Sequence[int]], parts: Sequence[Sequence[int]]
) -> MPoly:
    """Product of Schur polynomials over the blocks of an ordered set
    partition of positions; empty blocks contribute the factor 1."""
    if len(shapes) != len(parts):
        raise ValueError("one shape per block required")
    result = MPoly.constant(1)
    for lam, block in zip(shapes, parts):
        if len(lam) != len(block):
            raise ValueError(
                f"shape {tuple(lam)} has {len(lam)} parts but block {tuple(block)} has {len(block)} positions"
            )
        if block:
            result = result * schur(lam, tuple(block))
    return result


def vandermonde_divisor(word: Sequence[int]) -> MPoly:
    """Product of (x_k - x_j) over position pairs j < k carrying equal
    letters; the polynomial that always divides a model-matrix determinant."""
    result = MPoly.constant(1)
    for j, k in combinations(range(1, len(word) + 1), 2):
        if word[j - 1] == word[k - 1]:
            result = result * (x_var(k) - x_var(j))
    return result


# ---------------------------------------------------------------------------
# independent tableau-sum oracle (kept separate from the bialternant route)
# ---------------------------------------------------------------------------


def semistandard_tableaux(lam: Sequence[int], alphabet: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All semistandard fillings of shape ``lam`` with entries from the
    ordered ``alphabet``: rows weakly increase, columns strictly increase."""
    lam = tuple(p for p in lam if p > 0)
    letters = tuple(alphabet)

    def fill(row: int, above: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if row == len(lam):
            yield ()
            return
        width = lam[row]

        def row_fill(col: int, prev_rank: int) -> Iterator[tuple[int, ...]]:
            if col == width:
                yield ()
                return
            lo = prev_rank
            if row > 0:
                lo = max(lo, letters.index(above[col]) + 1)
            for rank in range(lo, len(letters)):
                for rest in row_fill(col + 1, rank):
                    yield (letters[rank],) + rest

        for this_row in row_fill(0, 0):
            for rest in fill(row + 1, this_row):
                yield (this_row,) + rest

    return fill(0, ())


def schur_via_tableaux(lam: Sequence[int], indices: Sequence[int]) -> MPoly:
    """Schur polynomial as the generating function of semistandard Young
    tableaux; brute-force oracle for the bialternant construction."""
    letters = tuple(sorted(indices))
    names = _var_names(letters)
    pos = {j: i for i, j in enumerate(letters)}
    terms: dict[tuple[int, ...], Scalar] = {}
    for tab in semistandard_tableaux(lam, letters):
        e = [0] * len(letters)
        for row in tab:
            for entry in row:
                e[pos[entry]] += 1
        e = tuple(e)
        terms[e] = terms.get(e, 0) + 1
    if not terms:
        terms = {(0,) * len(letters): 1}
    return MPoly(names, terms)
