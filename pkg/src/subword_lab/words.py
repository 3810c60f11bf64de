"""Combinatorics on plain words over the ordered alphabet s_1 < ... < s_n.

Words are tuples of 1-based generator indices.  This module knows nothing
about group relations: it provides abelian vectors, ordered set partitions
of positions, inversion counts, standardization, the letter-order sign of a
word, and the predicted sign ratio across a braid move.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Word = tuple[int, ...]

__all__ = [
    "Word",
    "as_word",
    "parse_word",
    "format_word",
    "abelian_vector",
    "occurrence_partition",
    "reverse_word",
    "flip_alphabet",
    "lexicographic_normal_form",
    "inversion_number",
    "s_sign",
    "standardization",
    "permutation_sign",
    "alternating_word",
    "BraidMoveContext",
    "braid_move_sign_ratio",
]


def as_word(letters: Sequence[int]) -> Word:
    w = tuple(int(a) for a in letters)
    if any(a < 1 for a in w):
        raise ValueError(f"letters must be positive indices: {w}")
    return w


def parse_word(text: str, rank: int) -> Word:
    """Parse '121321' (rank <= 9) or '1,2,1,3,2,1' into a word."""
    text = text.strip()
    if not text or text in ("e", "-"):
        return ()
    letters = [int(t) for t in text.split(",")] if "," in text else [int(ch) for ch in text]
    w = as_word(letters)
    if any(a > rank for a in w):
        raise ValueError(f"letter out of range 1..{rank} in {text!r}")
    return w


def format_word(word: Sequence[int], rank: int) -> str:
    if not word:
        return "e"
    if rank <= 9:
        return "".join(str(a) for a in word)
    return ",".join(str(a) for a in word)


def abelian_vector(word: Sequence[int], rank: int) -> tuple[int, ...]:
    """Occurrence counts (|w|_1, ..., |w|_n)."""
    counts = [0] * rank
    for a in word:
        if not 1 <= a <= rank:
            raise ValueError(f"letter {a} out of range 1..{rank}")
        counts[a - 1] += 1
    return tuple(counts)


def occurrence_partition(word: Sequence[int], rank: int) -> tuple[tuple[int, ...], ...]:
    """Ordered set partition of positions by letter: block i holds the
    1-based positions where s_i occurs."""
    blocks: list[list[int]] = [[] for _ in range(rank)]
    for pos, a in enumerate(word, start=1):
        if not 1 <= a <= rank:
            raise ValueError(f"letter {a} out of range 1..{rank}")
        blocks[a - 1].append(pos)
    return tuple(tuple(b) for b in blocks)


def reverse_word(word: Sequence[int]) -> Word:
    return tuple(reversed(word))


def flip_alphabet(word: Sequence[int], rank: int) -> Word:
    """Apply the order-reversing relabeling s_i -> s_(n-i+1)."""
    return tuple(rank - a + 1 for a in word)


def lexicographic_normal_form(word: Sequence[int]) -> Word:
    return tuple(sorted(word))


def inversion_number(word: Sequence[int]) -> int:
    """Number of position pairs i < j whose letters are out of order;
    equal letters do not count."""
    w = tuple(word)
    return sum(
        1
        for i in range(len(w))
        for j in range(i + 1, len(w))
        if w[j] < w[i]
    )


def s_sign(word: Sequence[int]) -> int:
    """The letter-order sign (-1)^(inversion number)."""
    return -1 if inversion_number(word) & 1 else 1


def standardization(word: Sequence[int]) -> tuple[int, ...]:
    """The permutation with exactly the inversions of the word: position p
    gets the rank of (letter, p) among all (letter, position) pairs.
    Its inverse sorts the word to lexicographic normal form."""
    w = tuple(word)
    order = sorted(range(len(w)), key=lambda p: (w[p], p))
    std = [0] * len(w)
    for rank_, p in enumerate(order, start=1):
        std[p] = rank_
    return tuple(std)


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given in one-line notation (any distinct values)."""
    return s_sign(tuple(perm))


def alternating_word(i: int, j: int, length: int) -> Word:
    """The alternating word s_i s_j s_i ... of the given length."""
    return tuple(i if k % 2 == 0 else j for k in range(length))


@dataclass(frozen=True)
class BraidMoveContext:
    """Decomposition u . (alternating factor in s_i, s_j) . v with i < j.

    kappa counts letters s_k of u with i < k <= j; mu counts letters s_k of
    v with i <= k < j.  Both are recomputed from u and v on demand.
    """

    u: Word
    i: int
    j: int
    v: Word

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError(f"need i < j, got ({self.i}, {self.j})")

    @property
    def kappa(self) -> int:
        return sum(1 for a in self.u if self.i < a <= self.j)

    @property
    def mu(self) -> int:
        return sum(1 for a in self.v if self.i <= a < self.j)


def braid_move_sign_ratio(ctx: BraidMoveContext, m_ij: int) -> int:
    """Predicted ratio s_sign(u b_ij v) / s_sign(u b_ji v) for a braid move
    of length m_ij: (-1)^(m/2) for even m, (-1)^(kappa+mu) for odd m."""
    if m_ij < 2:
        raise ValueError(f"braid move length must be >= 2, got {m_ij}")
    if m_ij % 2 == 0:
        return -1 if (m_ij // 2) % 2 else 1
    return -1 if (ctx.kappa + ctx.mu) % 2 else 1
