"""Simplicial points of outer space as marked metric graphs.

Oriented edges are signed integers: ``+(e+1)`` traverses edge ``e`` from ``u``
to ``v`` and ``-(e+1)`` traverses it backwards, so tightening an edge path is
ordinary free reduction over this alphabet.  In JSON the tokens read
``"e0+"`` / ``"e0-"``.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .currents import RationalCurrent
from .free_group import (
    Automorphism,
    RankMismatchError,
    Word,
    _free_reduce,
    _inverse,
    _substitute,
    cyclic_reduce,
    format_letters,
)

__all__ = [
    "MarkedMetricGraph",
    "rose",
    "translation_length",
    "intersection",
    "tree_act",
    "scale_tree",
    "load_graph",
]


class InvalidGraphError(ValueError):
    pass


def _token(text: str) -> int:
    text = text.strip()
    if len(text) < 3 or text[0] != "e" or text[-1] not in "+-":
        raise InvalidGraphError(f"bad edge token {text!r}")
    e = int(text[1:-1])
    return e + 1 if text[-1] == "+" else -(e + 1)


def _token_str(t: int) -> str:
    return f"e{abs(t) - 1}{'+' if t > 0 else '-'}"


@dataclass(frozen=True)
class MarkedMetricGraph:
    """A finite metric graph with a marking ``R_N -> Gamma``.

    ``marking[i]`` is the closed reduced edge path (signed edge tokens) that
    the generator ``a_{i+1}`` is sent to, based at ``basepoint``.
    """

    num_vertices: int
    edges: tuple[tuple[int, int, Fraction], ...]
    marking: tuple[tuple[int, ...], ...]
    basepoint: int = 0

    def __post_init__(self):
        edges = tuple((int(u), int(v), Fraction(length)) for u, v, length in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "marking", tuple(tuple(p) for p in self.marking))
        self._validate()

    @property
    def rank(self) -> int:
        return len(self.marking)

    def _ends(self, t: int) -> tuple[int, int]:
        u, v, _ = self.edges[abs(t) - 1]
        return (u, v) if t > 0 else (v, u)

    def _validate(self):
        n, edges = self.num_vertices, self.edges
        if n < 1 or not edges:
            raise InvalidGraphError("graph needs at least one vertex and one edge")
        valence = [0] * n
        for i, (u, v, length) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraphError(f"edge {i} has an endpoint out of range")
            if length <= 0:
                raise InvalidGraphError(f"edge {i} has nonpositive length {length}")
            valence[u] += 1
            valence[v] += 1
        if min(valence) < 2:
            raise InvalidGraphError("graph has a vertex of valence < 2")
        if len(self._spanning_tree()) != n - 1:
            raise InvalidGraphError("graph is not connected")
        if len(edges) - n + 1 != self.rank:
            raise InvalidGraphError(
                f"first Betti number {len(edges) - n + 1} does not match marking rank {self.rank}")
        for i, path in enumerate(self.marking):
            name = format_letters((i + 1,))
            if not path:
                raise InvalidGraphError(f"marking of {name} is the trivial path")
            if any(not 1 <= abs(t) <= len(edges) for t in path):
                raise InvalidGraphError(f"marking of {name} uses an unknown edge")
            if list(path) != _free_reduce(path):
                raise InvalidGraphError(f"marking of {name} backtracks")
            at = self.basepoint
            for t in path:
                start, end = self._ends(t)
                if start != at:
                    raise InvalidGraphError(f"marking of {name} is not a connected path")
                at = end
            if at != self.basepoint:
                raise InvalidGraphError(f"marking of {name} is not closed at the basepoint")
        if not self._marking_is_basis():
            raise InvalidGraphError("marking is not a homotopy equivalence")

    def _spanning_tree(self) -> dict[int, int]:
        """BFS tree from the basepoint: vertex -> token arriving at it."""
        adj: dict[int, list[int]] = {}
        for i, (u, v, _) in enumerate(self.edges):
            adj.setdefault(u, []).append(i + 1)
            adj.setdefault(v, []).append(-(i + 1))
        parent: dict[int, int] = {}
        seen = {self.basepoint}
        queue = deque([self.basepoint])
        while queue:
            x = queue.popleft()
            for t in adj.get(x, ()):
                y = self._ends(t)[1]
                if y not in seen:
                    seen.add(y)
                    parent[y] = t
                    queue.append(y)
        return parent

    def _marking_is_basis(self) -> bool:
        # pi_1(Gamma, p) is free on the edges outside a spanning tree
        tree_edges = {abs(t) for t in self._spanning_tree().values()}
        loops = [_free_reduce(t for t in path if abs(t) not in tree_edges) for path in self.marking]
        return _generates_free_group(loops, sorted({i + 1 for i in range(len(self.edges))} - tree_edges))

    def to_dict(self) -> dict:
        return {
            "vertices": self.num_vertices,
            "basepoint": self.basepoint,
            "edges": [{"u": u, "v": v, "len": str(length)} for u, v, length in self.edges],
            "marking": {format_letters((i + 1,)): [_token_str(t) for t in p] for i, p in enumerate(self.marking)},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "MarkedMetricGraph":
        marking = data["marking"]
        rank = len(marking)
        paths = []
        for i in range(rank):
            name = format_letters((i + 1,))
            if name not in marking:
                raise InvalidGraphError(f"marking has no entry for generator {name!r}")
            tokens = marking[name]
            if isinstance(tokens, str):
                tokens = tokens.split()
            paths.append(tuple(_token(t) for t in tokens))
        edges = [(e["u"], e["v"], Fraction(str(e.get("len", "1")))) for e in data["edges"]]
        return cls(int(data["vertices"]), tuple(edges), tuple(paths), int(data.get("basepoint", 0)))


def _generates_free_group(words: Sequence[Sequence[int]], alphabet: Sequence[int]) -> bool:
    """Stallings folding: do ``words`` generate the free group on ``alphabet``?"""
    if len(words) < len(alphabet):
        return False
    # out[v][label] -> target; labels are signed alphabet letters
    out: list[dict[int, int]] = [{}]
    pending: list[tuple[int, int, int]] = []
    for w in words:
        at = 0
        for j, x in enumerate(w):
            if j == len(w) - 1:
                nxt = 0
            else:
                out.append({})
                nxt = len(out) - 1
            pending.append((at, x, nxt))
            at = nxt
    parent = list(range(len(out)))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    merges: list[tuple[int, int]] = []

    def add_edge(u, x, v):
        u, v = find(u), find(v)
        for a, lab, b in ((u, x, v), (v, -x, u)):
            prev = out[a].get(lab)
            if prev is None:
                out[a][lab] = b
            elif find(prev) != find(b):
                merges.append((prev, b))

    for u, x, v in pending:
        add_edge(u, x, v)
    while merges:
        a, b = merges.pop()
        a, b = find(a), find(b)
        if a == b:
            continue
        parent[b] = a
        moved, out[b] = out[b], {}
        for lab, tgt in moved.items():
            prev = out[a].get(lab)
            if prev is None:
                out[a][lab] = tgt
            elif find(prev) != find(tgt):
                merges.append((prev, tgt))
    # whole group iff the base vertex carries a loop of every label
    base = find(0)
    return all(x in out[base] and find(out[base][x]) == base for a in alphabet for x in (a, -a))


def rose(rank: int, lengths: Sequence | None = None) -> MarkedMetricGraph:
    """The rose ``R_N`` with the identity marking (unit lengths by default)."""
    lengths = [Fraction(1)] * rank if lengths is None else [Fraction(x) for x in lengths]
    if len(lengths) != rank:
        raise InvalidGraphError(f"need {rank} petal lengths")
    return MarkedMetricGraph(1, tuple((0, 0, x) for x in lengths), tuple((i + 1,) for i in range(rank)))


def load_graph(source: str | Path | Mapping) -> MarkedMetricGraph:
    if isinstance(source, Mapping):
        return MarkedMetricGraph.from_dict(source)
    return MarkedMetricGraph.from_dict(json.loads(Path(source).read_text()))


def _path_table(T: MarkedMetricGraph) -> dict[int, tuple[int, ...]]:
    table = {}
    for i, path in enumerate(T.marking, start=1):
        table[i] = path
        table[-i] = _inverse(path)
    return table


def _loop_length(T: MarkedMetricGraph, path: Sequence[int]) -> Fraction:
    n = len(path)
    k = 0
    while 2 * k + 1 < n and path[k] == -path[n - 1 - k]:
        k += 1
    lengths = [e[2] for e in T.edges]
    return sum((lengths[abs(t) - 1] for t in path[k:n - k]), Fraction(0))


def translation_length(T: MarkedMetricGraph, g: Word) -> Fraction:
    """Length of the reduced circuit representing ``[g]`` in ``T``."""
    if g.rank != T.rank:
        raise RankMismatchError(f"rank {g.rank} vs rank {T.rank}")
    c, _ = cyclic_reduce(g)
    return _loop_length(T, _substitute(_path_table(T), c.letters))


def intersection(T: MarkedMetricGraph, nu: RationalCurrent) -> Fraction:
    """The intersection form ``<T, nu>``; on ``eta_g`` it is ``||g||_T``."""
    if nu.rank != T.rank:
        raise RankMismatchError(f"rank {nu.rank} vs rank {T.rank}")
    table = _path_table(T)
    return sum((coeff * _loop_length(T, _substitute(table, h.letters)) for h, coeff in nu.items()),
               Fraction(0))


def tree_act(T: MarkedMetricGraph, phi: Automorphism) -> MarkedMetricGraph:
    """Right action: ``||g||_{T.phi} = ||phi(g)||_T``.

    ``tree_act(tree_act(T, phi), psi)`` equals ``tree_act(T, compose(phi, psi))``.
    """
    if phi.rank != T.rank:
        raise RankMismatchError(f"rank {phi.rank} vs rank {T.rank}")
    table = _path_table(T)
    marking = tuple(tuple(_substitute(table, img.letters)) for img in phi.images)
    return MarkedMetricGraph(T.num_vertices, T.edges, marking, T.basepoint)


def scale_tree(T: MarkedMetricGraph, c) -> MarkedMetricGraph:
    c = Fraction(c)
    if c <= 0:
        raise ValueError("scale factor must be positive")
    return MarkedMetricGraph(T.num_vertices, tuple((u, v, c * x) for u, v, x in T.edges), T.marking, T.basepoint)
