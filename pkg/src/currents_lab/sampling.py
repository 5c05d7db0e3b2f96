"""Reproducible random words, automorphisms and currents.

Every stream is a Philox-4x64 counter-based generator keyed by
``SeedSequence([seed, *stream])``, so a stream depends only on the user seed
and its own label, never on how work is scheduled.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .catalog import nielsen_moves
from .currents import RationalCurrent
from .free_group import Automorphism, Word, apply, compose, conjugacy_class

__all__ = ["stream", "random_word", "random_cyclic_word", "random_automorphism",
           "random_primitive", "random_current"]


def stream(seed: int, *labels: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, *labels])))


def _letters(rank: int) -> list[int]:
    return [x for i in range(1, rank + 1) for x in (i, -i)]


def random_word(rng: np.random.Generator, rank: int, length: int) -> Word:
    """Uniform reduced word of the given length."""
    letters = _letters(rank)
    out: list[int] = []
    for _ in range(length):
        choices = [x for x in letters if not out or x != -out[-1]]
        out.append(choices[rng.integers(len(choices))])
    return Word(tuple(out), rank)


def random_cyclic_word(rng: np.random.Generator, rank: int, length: int):
    """Random conjugacy class of cyclic length exactly ``length``."""
    while True:
        c = conjugacy_class(random_word(rng, rank, length))
        if len(c) == length:
            return c


def random_automorphism(rng: np.random.Generator, rank: int, length: int,
                        pool: Sequence[Automorphism] | None = None) -> Automorphism:
    pool = nielsen_moves(rank) if pool is None else pool
    out = Automorphism.identity(rank)
    for _ in range(length):
        out = compose(out, pool[rng.integers(len(pool))])
    return out


def random_primitive(rng: np.random.Generator, rank: int, moves: int, min_length: int = 1) -> Word:
    """Image of a random generator under a random product of Nielsen moves,
    redrawn until its cyclic length reaches ``min_length``."""
    while True:
        phi = random_automorphism(rng, rank, moves)
        g = apply(phi, Word((int(rng.integers(1, rank + 1)),), rank))
        if len(conjugacy_class(g)) >= min_length:
            return g


def random_current(rng: np.random.Generator, rank: int, terms: int = 3, max_length: int = 6,
                   max_coeff: int = 5) -> RationalCurrent:
    out = []
    for _ in range(terms):
        c = random_cyclic_word(rng, rank, int(rng.integers(1, max_length + 1)))
        coeff = Fraction(int(rng.integers(1, max_coeff + 1)), int(rng.integers(1, max_coeff + 1)))
        out.append((c, coeff))
    return RationalCurrent(rank, out)
