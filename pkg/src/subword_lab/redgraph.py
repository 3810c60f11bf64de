"""Graphs of reduced expressions, their contractions, and sign functions.

Vertices of the base graph are the reduced expressions of one element,
edges are braid moves labeled by their length m_ij.  Contracting a set of
lengths merges vertices into classes (commutation classes for length 2,
braid classes for length 3, and so on) and fuses parallel edges so that at
most one edge per surviving length joins two classes.

On top of the graph live three sign functions on reduced words of the
longest element: the letter-order sign of the word itself, the move-parity
sign propagated along edges by (-1)^(m-1) from a normalized base word, and
their pointwise product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coxeter import (
    CoxeterSystem,
    braid_move_targets,
    c_sorting_word,
    reduced_words,
)
from .words import Word, s_sign

__all__ = [
    "RedGraph",
    "SignAssignment",
    "BipartitionResult",
    "build_graph",
    "contract",
    "bipartition",
    "t_sign",
    "punctual_sign",
    "CONTRACTION_PRESETS",
    "contract_preset",
    "to_dot",
    "to_json",
]


@dataclass(frozen=True)
class RedGraph:
    """Graph on classes of reduced expressions with length-labeled edges.

    ``vertices[k]`` is the sorted tuple of words forming class k (classes
    ordered by their lexicographically least member, which serves as the
    class representative); ``edges`` holds distinct (a, b, length) triples
    with a < b; ``kept_lengths`` is the set of labels surviving so far.
    """

    system: CoxeterSystem
    vertices: tuple[tuple[Word, ...], ...]
    edges: frozenset[tuple[int, int, int]]
    kept_lengths: frozenset[int]

    def representative(self, k: int) -> Word:
        return self.vertices[k][0]

    def class_of(self, word: Word) -> int:
        for k, cls in enumerate(self.vertices):
            if word in cls:
                return k
        raise KeyError(f"word {word} not in graph")

    def edge_count(self, length: int | None = None) -> int:
        if length is None:
            return len(self.edges)
        return sum(1 for _, _, l in self.edges if l == length)

    def neighbors(self, k: int) -> list[tuple[int, int]]:
        out = []
        for a, b, l in self.edges:
            if a == k:
                out.append((b, l))
            elif b == k:
                out.append((a, l))
        return sorted(out)


def build_graph(sys: CoxeterSystem, word: Sequence[int] | None = None) -> RedGraph:
    """The graph of all reduced expressions of the element spelled by
    ``word`` (default: the longest element), edges given by braid moves."""
    verts = sorted(reduced_words(sys, word))
    index = {w: k for k, w in enumerate(verts)}
    edges = set()
    lengths = set()
    for w, k in index.items():
        for (start, end), target in braid_move_targets(sys, w):
            j = index.get(target)
            if j is None or j == k:
                continue
            a, b = min(k, j), max(k, j)
            length = end - start + 1
            edges.add((a, b, length))
            lengths.add(length)
    return RedGraph(
        system=sys,
        vertices=tuple((w,) for w in verts),
        edges=frozenset(edges),
        kept_lengths=frozenset(lengths),
    )


def contract(g: RedGraph, contracted_lengths: Iterable[int]) -> RedGraph:
    """Contract every edge whose length lies in ``contracted_lengths``;
    merged classes keep all their member words, and surviving parallel
    edges are fused to one edge per remaining length."""
    drop = frozenset(contracted_lengths)
    parent = list(range(len(g.vertices)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b, length in g.edges:
        if length in drop:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    groups: dict[int, list[Word]] = {}
    for k, cls in enumerate(g.vertices):
        groups.setdefault(find(k), []).extend(cls)
    classes = sorted(tuple(sorted(ws)) for ws in groups.values())
    where = {}
    for new_k, cls in enumerate(classes):
        for w in cls:
            where[w] = new_k
    edges = set()
    lengths = set()
    for a, b, length in g.edges:
        if length in drop:
            continue
        na, nb = where[g.vertices[a][0]], where[g.vertices[b][0]]
        if na == nb:
            continue
        edges.add((min(na, nb), max(na, nb), length))
        lengths.add(length)
    return RedGraph(
        system=g.system,
        vertices=tuple(classes),
        edges=frozenset(edges),
        kept_lengths=frozenset(lengths),
    )


CONTRACTION_PRESETS = ("comm", "braid", "odd", "even", "two", "none")


def contract_preset(g: RedGraph, preset: str) -> RedGraph:
    """Named minors: comm contracts {2}, braid contracts {3}, odd keeps
    only odd lengths, even keeps only even lengths, two keeps only length
    2, none returns the graph unchanged."""
    all_lengths = {l for _, _, l in g.edges}
    if preset == "comm":
        drop = {2}
    elif preset == "braid":
        drop = {3}
    elif preset == "odd":
        drop = {l for l in all_lengths if l % 2 == 0}
    elif preset == "even":
        drop = {l for l in all_lengths if l % 2 == 1}
    elif preset == "two":
        drop = {l for l in all_lengths if l != 2}
    elif preset == "none":
        drop = set()
    else:
        raise ValueError(f"unknown contraction preset {preset!r}")
    return contract(g, drop)


@dataclass(frozen=True)
class BipartitionResult:
    """Either a proper 2-coloring (+1/-1 per vertex class) or an explicit
    odd cycle as a list of vertex indices."""

    coloring: tuple[int, ...] | None
    odd_cycle: tuple[int, ...] | None

    @property
    def is_bipartite(self) -> bool:
        return self.coloring is not None


def bipartition(g: RedGraph) -> BipartitionResult:
    """2-color the classes so that every edge changes color; on failure
    return an odd cycle as the witness."""
    n = len(g.vertices)
    adjacency: dict[int, set[int]] = {k: set() for k in range(n)}
    for a, b, _ in g.edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    color = [0] * n
    parent = {}
    for root in range(n):
        if color[root]:
            continue
        color[root] = 1
        parent[root] = None
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v in adjacency[u]:
                if not color[v]:
                    color[v] = -color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    return BipartitionResult(None, _odd_cycle(parent, u, v))
    return BipartitionResult(tuple(color), None)


def _odd_cycle(parent, u, v) -> tuple[int, ...]:
    def path_to_root(a):
        out = [a]
        while parent[a] is not None:
            a = parent[a]
            out.append(a)
        return out

    pu, pv = path_to_root(u), path_to_root(v)
    seen = set(pu)
    meet = next(a for a in pv if a in seen)
    cycle = pu[: pu.index(meet) + 1] + list(reversed(pv[: pv.index(meet)]))
    return tuple(cycle)


@dataclass(frozen=True)
class SignAssignment:
    """A +-1 value per reduced expression of the longest element."""

    kind: str  # "S", "T", or "punctual"
    values: dict[Word, int]

    def __getitem__(self, word: Word) -> int:
        return self.values[word]

    def flipped(self) -> "SignAssignment":
        return SignAssignment(self.kind, {w: -s for w, s in self.values.items()})


def t_sign(
    sys: CoxeterSystem,
    normalization: str = "greedy",
    graph: RedGraph | None = None,
) -> SignAssignment:
    """The move-parity sign on reduced words of the longest element: it
    changes by (-1)^(m-1) across every braid move of length m, anchored at
    +1 on a normalized base word.

    ``normalization`` picks the base word: "greedy" takes the reduced word
    whose occurrence in (s_1...s_n)^infinity is leftmost; "lex-least" takes
    the lexicographically smallest reduced word.  The value is propagated
    along a spanning tree and validated on every non-tree edge, so any
    inconsistency in the propagation rule surfaces as an explicit error.
    """
    g = graph if graph is not None else build_graph(sys)
    if normalization == "greedy":
        base = c_sorting_word(sys)
    elif normalization == "lex-least":
        base = g.representative(0)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    index = {cls[0]: k for k, cls in enumerate(g.vertices)}
    base_k = index[base]
    values: dict[int, int] = {base_k: 1}
    queue = [base_k]
    adjacency: dict[int, list[tuple[int, int]]] = {k: [] for k in range(len(g.vertices))}
    for a, b, length in g.edges:
        adjacency[a].append((b, length))
        adjacency[b].append((a, length))
    while queue:
        u = queue.pop(0)
        for v, length in sorted(adjacency[u]):
            sign = values[u] * (-1 if length % 2 == 0 else 1)  # (-1)^(m-1)
            if v in values:
                if values[v] != sign:
                    raise AssertionError(
                        f"inconsistent move-parity sign on edge {g.representative(u)}"
                        f" -- {g.representative(v)} (length {length})"
                    )
            else:
                values[v] = sign
                queue.append(v)
    if len(values) != len(g.vertices):
        raise AssertionError("reduced-expression graph is not connected")
    return SignAssignment(
        "T", {cls[0]: values[k] for k, cls in enumerate(g.vertices)}
    )


def punctual_sign(
    sys: CoxeterSystem,
    normalization: str = "greedy",
    graph: RedGraph | None = None,
) -> SignAssignment:
    """Pointwise product of the letter-order sign and the move-parity sign."""
    tau = t_sign(sys, normalization=normalization, graph=graph)
    return SignAssignment(
        "punctual", {w: s_sign(w) * t for w, t in tau.values.items()}
    )


def s_sign_assignment(sys: CoxeterSystem, graph: RedGraph | None = None) -> SignAssignment:
    g = graph if graph is not None else build_graph(sys)
    return SignAssignment("S", {cls[0]: s_sign(cls[0]) for cls in g.vertices})


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def _edge_style(length: int) -> str:
    style = "solid" if length % 2 == 0 else "dashed"
    attrs = [f'style="{style}"', f'label="{length}"']
    if length in (4, 5):
        attrs.append('color="black:invis:black"')  # doubled stroke
    return ", ".join(attrs)


def _vertex_label(g: RedGraph, k: int) -> str:
    sys = g.system
    cls = g.vertices[k]
    if len(cls) == 1:
        return sys.format_word(cls[0])
    return "{" + ",".join(sys.format_word(w) for w in cls) + "}"


def to_dot(g: RedGraph, signs: SignAssignment | None = None) -> str:
    """DOT rendering: solid edges for even move lengths, dashed for odd,
    doubled strokes for lengths 4 and 5; optional signs in the labels."""
    lines = ["graph reduced_expressions {", "  node [shape=ellipse];"]
    for k in range(len(g.vertices)):
        label = _vertex_label(g, k)
        if signs is not None:
            mark = signs.values.get(g.representative(k))
            if mark is not None:
                label += " (+)" if mark > 0 else " (-)"
        lines.append(f'  v{k} [label="{label}"];')
    for a, b, length in sorted(g.edges):
        lines.append(f"  v{a} -- v{b} [{_edge_style(length)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: RedGraph, signs: SignAssignment | None = None) -> str:
    sys = g.system
    payload = {
        "type": sys.name,
        "vertices": [[sys.format_word(w) for w in cls] for cls in g.vertices],
        "edges": [
            {"a": a, "b": b, "length": length} for a, b, length in sorted(g.edges)
        ],
    }
    if signs is not None:
        payload["signs"] = {
            sys.format_word(w): s for w, s in sorted(signs.values.items())
        }
        payload["sign_kind"] = signs.kind
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
