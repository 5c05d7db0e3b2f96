"""Whitehead graphs, the cut-vertex obstruction, and Whitehead's length
reduction for cyclic words."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import networkx as nx

from .free_group import (
    Automorphism,
    CyclicWord,
    Word,
    apply,
    conjugacy_class,
    format_letters,
)

__all__ = [
    "WhiteheadGraph",
    "WhiteheadAutomorphism",
    "whitehead_graph",
    "minimal_set_obstruction",
    "whitehead_automorphisms",
    "whitehead_reduce",
    "is_primitive",
]


def _letters(rank: int) -> list[int]:
    return [x for i in range(1, rank + 1) for x in (i, -i)]


@dataclass(frozen=True)
class WhiteheadGraph:
    """Vertices are the 2N letters; each cyclically adjacent pair ``x.y``
    contributes one edge ``{x^-1, y}``."""

    rank: int
    edges: tuple[tuple[tuple[int, int], int], ...]

    @property
    def vertices(self) -> list[int]:
        return _letters(self.rank)

    def multiplicity(self, x: int, y: int) -> int:
        return dict(self.edges).get((min(x, y), max(x, y)), 0)

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.edges)

    def degree(self, x: int) -> int:
        return sum(m * ((u == x) + (v == x)) for (u, v), m in self.edges)

    def simple_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(pair for pair, _ in self.edges)
        return g

    def to_dot(self, name: str = "whitehead") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  "{format_letters((x,))}";' for x in self.vertices]
        for (u, v), m in self.edges:
            label = f' [label="{m}"]' if m > 1 else ""
            lines.append(f'  "{format_letters((u,))}" -- "{format_letters((v,))}"{label};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def whitehead_graph(c: CyclicWord) -> WhiteheadGraph:
    if not c.letters:
        raise ValueError("the trivial class has no Whitehead graph")
    n = len(c.letters)
    counts: Counter = Counter()
    for i in range(n):
        x, y = c.letters[i], c.letters[(i + 1) % n]
        u, v = -x, y
        counts[(min(u, v), max(u, v))] += 1
    return WhiteheadGraph(c.rank, tuple(sorted(counts.items())))


def minimal_set_obstruction(g: WhiteheadGraph) -> bool:
    """True iff the graph is disconnected or has a cut vertex.

    A generator absent from the word leaves both of its vertices isolated and
    counts as disconnection.  ``False`` certifies that the class is outside
    the minimal set.
    """
    simple = g.simple_graph()
    if not nx.is_connected(simple):
        return True
    return any(True for _ in nx.articulation_points(simple))


@dataclass(frozen=True)
class WhiteheadAutomorphism:
    """Whitehead automorphism ``(S, x)``: each generator ``y != x^{+-1}`` goes to
    ``x^-[y^-1 in S] . y . x^[y in S]``; ``x`` itself is fixed."""

    rank: int
    multiplier: int
    subset: frozenset

    def automorphism(self) -> Automorphism:
        x = self.multiplier
        inv_subset = (self.subset - {x}) | {-x}
        return Automorphism(_wh_images(self.rank, self.subset, x), _wh_images(self.rank, inv_subset, -x))

    def __str__(self) -> str:
        s = ",".join(format_letters((y,)) for y in sorted(self.subset, key=lambda y: (abs(y), y < 0)))
        return f"({{{s}}}, {format_letters((self.multiplier,))})"


def _wh_images(rank: int, subset, x: int) -> list[Word]:
    images = []
    for i in range(1, rank + 1):
        if i == abs(x):
            images.append(Word((i,), rank))
            continue
        letters = []
        if -i in subset:
            letters.append(-x)
        letters.append(i)
        if i in subset:
            letters.append(x)
        images.append(Word(tuple(letters), rank))
    return images


def whitehead_automorphisms(rank: int) -> list[tuple[tuple[int, int], WhiteheadAutomorphism]]:
    """The non-permutation Whitehead automorphisms, each tagged with its
    tie-break key ``(multiplier, subset bitmask)``."""
    letters = _letters(rank)
    out = []
    for x in sorted(letters):
        others = [y for y in letters if abs(y) != abs(x)]
        for mask in range(1 << len(others)):
            chosen = {y for j, y in enumerate(others) if mask >> j & 1}
            if not chosen:
                # only x (and x^-1 as the fixed pair) moves: inner or trivial on classes
                continue
            out.append(((x, mask), WhiteheadAutomorphism(rank, x, frozenset(chosen | {x}))))
    return out


_CACHE: dict[int, list] = {}


def _moves(rank: int):
    if rank not in _CACHE:
        _CACHE[rank] = [(key, wa, wa.automorphism()) for key, wa in whitehead_automorphisms(rank)]
    return _CACHE[rank]


def whitehead_reduce(c: CyclicWord) -> tuple[int, list[WhiteheadAutomorphism]]:
    """Greedy strict descent of cyclic length over Whitehead automorphisms.

    At each step the move giving the shortest image is taken, ties broken by
    ``(multiplier, subset bitmask)``.  By Whitehead's theorem the result is
    the minimal cyclic length in the ``Aut(F_N)`` orbit of ``c``.
    """
    if not c.letters:
        raise ValueError("the trivial class cannot be reduced")
    witness = []
    current = c
    while len(current) > 1:
        best = None
        for key, wa, phi in _moves(c.rank):
            image = conjugacy_class(apply(phi, current.as_word()))
            if len(image) < len(current) and (best is None or len(image) < len(best[1])):
                best = (wa, image)
        if best is None:
            break
        witness.append(best[0])
        current = best[1]
    return len(current), witness


def is_primitive(g: Word) -> bool:
    """Whether ``g`` is part of some free basis of F_N."""
    if not g.letters:
        raise ValueError("the trivial element is not primitive")
    return whitehead_reduce(conjugacy_class(g))[0] == 1
