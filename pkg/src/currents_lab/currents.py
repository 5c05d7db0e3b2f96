"""Rational geodesic currents on F_N.

A rational current is a finite nonnegative combination of counting currents
``eta_g``.  Occurrence counts are taken with respect to the rose with the
standard basis: ``<v, eta_g>`` counts the positions of the cyclic word of
``g`` from which ``v`` or ``v^-1`` can be read going around the cycle
(as many laps as needed).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .free_group import (
    Automorphism,
    CyclicWord,
    RankMismatchError,
    Word,
    _inverse,
    apply,
    conjugacy_class,
    format_letters,
    is_proper_power,
    parse_letters,
    reduce,
)

__all__ = [
    "RationalCurrent",
    "FrequencyProfile",
    "counting_current",
    "occurrences",
    "weight",
    "act",
    "add",
    "scale",
    "frequency_profile",
    "exact_profile",
    "projective_distance",
    "profile_words",
    "load_current",
]


def _class_key(c: CyclicWord) -> CyclicWord:
    # eta_g == eta_{g^-1}: one key per unordered pair of inverse classes,
    # preferring the one that reads first in the order a < A < b < B < ...
    inv = c.inverse()
    if len(c.letters) < 64:
        return c if [_order_key(x) for x in c.letters] <= [_order_key(x) for x in inv.letters] else inv
    a, b = _order_codes(c.letters), _order_codes(inv.letters)
    diff = np.flatnonzero(a != b)
    return c if not len(diff) or a[diff[0]] < b[diff[0]] else inv


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class RationalCurrent:
    """Finite nonnegative rational combination of counting currents.

    ``terms`` maps a primitive canonical class ``h`` to the coefficient of
    ``eta_h``; proper-power multiplicities are folded into the coefficient.
    Each unordered pair ``{[h], [h^-1]}`` is stored under a single key.
    """

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Mapping | Iterable = ()):
        self.rank = rank
        acc: dict[CyclicWord, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for g, coeff in items:
            coeff = _as_fraction(coeff)
            if coeff < 0:
                raise ValueError(f"negative coefficient {coeff}")
            if isinstance(g, str):
                g = Word.parse(g, rank)
            if g.rank != rank:
                raise RankMismatchError(f"term over rank {g.rank} in a rank-{rank} current")
            c = g if isinstance(g, CyclicWord) else conjugacy_class(g)
            if not c.letters:
                raise ValueError("the trivial element has no counting current")
            if coeff == 0:
                continue
            root, k = is_proper_power(c)
            key = _class_key(root)
            acc[key] = acc.get(key, Fraction(0)) + coeff * k
        self._terms = tuple(sorted(acc.items(), key=lambda kv: (len(kv[0]), kv[0].letters)))

    @classmethod
    def zero(cls, rank: int) -> "RationalCurrent":
        return cls(rank)

    @property
    def terms(self) -> dict[CyclicWord, Fraction]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalCurrent) and self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.rank, self._terms))

    def __add__(self, other: "RationalCurrent") -> "RationalCurrent":
        return add(self, other)

    def __rmul__(self, c) -> "RationalCurrent":
        return scale(c, self)

    def max_length(self) -> int:
        return max((len(h) for h, _ in self._terms), default=0)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "terms": [{"word": str(h), "coeff": str(c)} for h, c in self._terms],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "RationalCurrent":
        rank = int(data["rank"])
        return cls(rank, [(Word.parse(t["word"], rank), Fraction(str(t["coeff"]))) for t in data["terms"]])

    def __repr__(self) -> str:
        if not self._terms:
            return f"RationalCurrent(0, rank={self.rank})"
        body = " + ".join(f"{c}*eta[{h}]" for h, c in self._terms)
        return f"RationalCurrent({body}, rank={self.rank})"


def load_current(source: str | Path | Mapping) -> RationalCurrent:
    if isinstance(source, Mapping):
        return RationalCurrent.from_dict(source)
    return RationalCurrent.from_dict(json.loads(Path(source).read_text()))


def counting_current(g: Word | CyclicWord) -> RationalCurrent:
    if not g.letters:
        raise ValueError("counting current of the trivial element is undefined")
    return RationalCurrent(g.rank, [(g, 1)])


def _cyclic_count(c: Sequence[int], v: Sequence[int]) -> int:
    n, k = len(c), len(v)
    laps = -(-(n + k - 1) // n)
    ext = tuple(c) * laps
    v = tuple(v)
    return sum(1 for i in range(n) if ext[i:i + k] == v)


def occurrences(v: Word, nu: RationalCurrent) -> Fraction:
    """Exact ``<v, nu>`` on the standard rose."""
    if not v.letters:
        raise ValueError("occurrences of the empty path are undefined")
    if v.rank != nu.rank:
        raise RankMismatchError(f"rank {v.rank} vs rank {nu.rank}")
    vi = _inverse(v.letters)
    total = Fraction(0)
    for h, coeff in nu.items():
        total += coeff * (_cyclic_count(h.letters, v.letters) + _cyclic_count(h.letters, vi))
    return total


def weight(nu: RationalCurrent) -> Fraction:
    """Sum of occurrences over all 2N oriented edges of the rose."""
    return 2 * sum((coeff * len(h) for h, coeff in nu.items()), Fraction(0))


def add(nu1: RationalCurrent, nu2: RationalCurrent) -> RationalCurrent:
    if nu1.rank != nu2.rank:
        raise RankMismatchError(f"rank {nu1.rank} vs rank {nu2.rank}")
    return RationalCurrent(nu1.rank, itertools.chain(nu1.items(), nu2.items()))


def scale(c, nu: RationalCurrent) -> RationalCurrent:
    c = _as_fraction(c)
    if c < 0:
        raise ValueError("currents form a cone; negative scalars are not allowed")
    return RationalCurrent(nu.rank, [(h, c * coeff) for h, coeff in nu.items()])


def act(phi: Automorphism, nu: RationalCurrent) -> RationalCurrent:
    """Push ``nu`` forward by ``phi``: ``eta_g -> eta_{phi(g)}``."""
    if phi.rank != nu.rank:
        raise RankMismatchError(f"rank {phi.rank} vs rank {nu.rank}")
    return RationalCurrent(nu.rank, [(apply(phi, h.as_word()), coeff) for h, coeff in nu.items()])


# -- frequency profiles ------------------------------------------------------

def _order_key(x: int) -> int:
    # a < A < b < B < ...
    return 2 * (abs(x) - 1) + (x < 0)


@lru_cache(maxsize=None)
def profile_words(rank: int, level: int) -> tuple[tuple[int, ...], ...]:
    """One representative per ``{v, v^-1}`` for all reduced ``1 <= |v| <= level``,
    ordered by length, then by the letter order ``a < A < b < B < ...``."""
    letters = sorted([i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)], key=_order_key)
    out = []
    layer = [(x,) for x in letters]
    for k in range(1, level + 1):
        if k > 1:
            layer = [w + (x,) for w in layer for x in letters if x != -w[-1]]
        for w in layer:
            inv = _inverse(w)
            if [_order_key(x) for x in w] <= [_order_key(x) for x in inv]:
                out.append(w)
    return tuple(out)


def _order_codes(letters: Sequence[int]) -> np.ndarray:
    arr = np.asarray(letters, dtype=np.int64)
    return 2 * (np.abs(arr) - 1) + (arr < 0)


def _codes(words: Sequence[Sequence[int]], base: int) -> np.ndarray:
    out = np.empty(len(words), dtype=np.int64)
    for i, w in enumerate(words):
        code = 0
        for x in w:
            code = code * base + _order_key(x)
        out[i] = code
    return out


def _window_counts(idx: np.ndarray, k: int, base: int) -> np.ndarray:
    """Histogram of cyclic windows of length ``k`` (multi-lap) by code;
    ``idx`` holds the letter codes of the cyclic word."""
    n = len(idx)
    laps = -(-(n + k - 1) // n)
    ext = np.tile(idx, laps)
    codes = np.zeros(n, dtype=np.int64)
    for j in range(k):
        codes = codes * base + ext[j:j + n]
    return np.bincount(codes, minlength=base ** k)


def _occurrence_table(nu: RationalCurrent, level: int) -> tuple[tuple[tuple[int, ...], ...], list[int], int]:
    """Occurrence numerators for every profile word, over a common denominator."""
    base = 2 * nu.rank
    words = profile_words(nu.rank, level)
    denom = lcm(*(coeff.denominator for _, coeff in nu.items())) if len(nu) else 1
    totals = [0] * len(words)
    by_len: dict[int, list[int]] = {}
    for i, w in enumerate(words):
        by_len.setdefault(len(w), []).append(i)
    for h, coeff in nu.items():
        mult = int(coeff * denom)
        idx = _order_codes(h.letters)
        for k, positions in by_len.items():
            hist = _window_counts(idx, k, base)
            fw = _codes([words[i] for i in positions], base)
            bw = _codes([_inverse(words[i]) for i in positions], base)
            counts = hist[fw] + hist[bw]
            for i, cnt in zip(positions, counts.tolist()):
                totals[i] += mult * cnt
    return words, totals, denom


@dataclass(frozen=True)
class FrequencyProfile:
    """Normalized occurrence vector ``<v, nu> / w(nu)`` for ``|v| <= level``."""

    rank: int
    level: int
    words: tuple[tuple[int, ...], ...]
    values: tuple[float, ...]

    def __getitem__(self, v) -> float:
        letters = parse_letters(v, self.rank) if isinstance(v, str) else tuple(v)
        letters = reduce(letters, self.rank).letters
        try:
            return self.values[self._index()[letters]]
        except KeyError:
            return self.values[self._index()[_inverse(letters)]]

    def _index(self) -> dict:
        return {w: i for i, w in enumerate(self.words)}

    def as_dict(self) -> dict[str, float]:
        return {format_letters(w): v for w, v in zip(self.words, self.values)}

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def lengths(self) -> np.ndarray:
        return np.fromiter((len(w) for w in self.words), dtype=np.int64, count=len(self.words))


def exact_profile(nu: RationalCurrent, level: int) -> dict[tuple[int, ...], Fraction]:
    """Exact ``<v, nu> / w(nu)`` keyed by profile representative."""
    if not nu:
        raise ValueError("the zero current has no projective class")
    if level < 1:
        raise ValueError("level must be >= 1")
    words, totals, denom = _occurrence_table(nu, level)
    w = weight(nu) * denom
    return {v: Fraction(t) / w for v, t in zip(words, totals)}


def frequency_profile(nu: RationalCurrent, level: int) -> FrequencyProfile:
    exact = exact_profile(nu, level)
    return FrequencyProfile(nu.rank, level, tuple(exact), tuple(float(x) for x in exact.values()))


def projective_distance(p: FrequencyProfile, q: FrequencyProfile) -> float:
    """Weighted l1 distance ``sum 2^-|v| |p(v) - q(v)|``."""
    if p.rank != q.rank:
        raise RankMismatchError(f"rank {p.rank} vs rank {q.rank}")
    if p.level != q.level:
        raise ValueError(f"level mismatch: {p.level} vs {q.level}")
    weights = np.ldexp(1.0, -p.lengths())
    return float(np.sum(weights * np.abs(p.array() - q.array())))
