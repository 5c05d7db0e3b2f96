"""Exact word algebra in the free group F_N.

Letters are signed integers: ``i`` stands for the generator ``a_i`` and ``-i``
for its inverse, ``1 <= |i| <= N``.  In text form generators are spelled
``a..z`` and inverses ``A..Z``, so ``"abAB"`` is the commutator ``[a, b]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

__all__ = [
    "MalformedWordError",
    "RankMismatchError",
    "Word",
    "CyclicWord",
    "Automorphism",
    "reduce",
    "cyclic_reduce",
    "conjugacy_class",
    "conjugate_equal",
    "is_proper_power",
    "least_rotation",
    "apply",
    "compose",
    "power",
    "verify_inverse",
    "parse_letters",
    "format_letters",
    "load_automorphism",
]

_MAX_RANK = 26
# words at least this long go through the compiled kernels
_FAST_LEN = 256


class MalformedWordError(ValueError):
    """Raised when letters fall outside ``1..N`` in absolute value."""


class RankMismatchError(ValueError):
    """Raised when objects over free groups of different rank are combined."""


def _check_rank(rank: int) -> None:
    if not 2 <= rank <= _MAX_RANK:
        raise MalformedWordError(f"rank must be in 2..{_MAX_RANK}, got {rank}")


def _same_rank(x, y) -> int:
    if x.rank != y.rank:
        raise RankMismatchError(f"rank {x.rank} vs rank {y.rank}")
    return x.rank


def parse_letters(text: str, rank: int) -> tuple[int, ...]:
    """Parse ``"a b A"`` or ``"abA"`` into signed indices (not reduced)."""
    _check_rank(rank)
    out = []
    for ch in text:
        if ch.isspace() or ch in "1.":
            # "1" and "." spell the empty word
            continue
        if "a" <= ch <= "z":
            idx = ord(ch) - ord("a") + 1
        elif "A" <= ch <= "Z":
            idx = -(ord(ch) - ord("A") + 1)
        else:
            raise MalformedWordError(f"unexpected character {ch!r} in {text!r}")
        if abs(idx) > rank:
            raise MalformedWordError(f"letter {ch!r} out of range for rank {rank}")
        out.append(idx)
    return tuple(out)


def format_letters(letters: Iterable[int]) -> str:
    return "".join(chr(ord("a") + x - 1) if x > 0 else chr(ord("A") - x - 1) for x in letters)


def _free_reduce(letters: Iterable[int]) -> list[int]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return stack


def _inverse(letters: Sequence[int]) -> tuple[int, ...]:
    if len(letters) >= _FAST_LEN:
        return tuple((-np.asarray(letters, dtype=np.int8)[::-1]).tolist())
    return tuple(-x for x in reversed(letters))


@dataclass(frozen=True)
class Word:
    """A freely reduced word of F_N.

    Construct through :func:`reduce` or :meth:`Word.parse`; the constructor
    itself only validates.
    """

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        _check_rank(self.rank)
        prev = 0
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise MalformedWordError(f"letter {x} out of range for rank {self.rank}")
            if x == -prev:
                raise MalformedWordError(f"word {format_letters(self.letters)} is not reduced")
            prev = x

    @classmethod
    def parse(cls, text: str, rank: int) -> "Word":
        return reduce(parse_letters(text, rank), rank)

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def generator(cls, i: int, rank: int) -> "Word":
        return cls((i,), rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        rank = _same_rank(self, other)
        return Word._trusted(_free_reduce(self.letters + other.letters), rank)

    def inverse(self) -> "Word":
        return Word._trusted(_inverse(self.letters), self.rank)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word.identity(self.rank)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __str__(self) -> str:
        return format_letters(self.letters) or "1"

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, rank={self.rank})"

    @classmethod
    def _trusted(cls, letters: Iterable[int], rank: int) -> "Word":
        # skips validation; callers guarantee reduced in-range letters
        obj = object.__new__(cls)
        object.__setattr__(obj, "letters", tuple(letters))
        object.__setattr__(obj, "rank", rank)
        return obj


def reduce(raw: Iterable[int], rank: int) -> Word:
    """Freely reduce a sequence of signed generator indices."""
    _check_rank(rank)
    raw = tuple(raw)
    for x in raw:
        if x == 0 or abs(x) > rank:
            raise MalformedWordError(f"letter {x} out of range for rank {rank}")
    return Word._trusted(_free_reduce(raw), rank)


def least_rotation(seq: Sequence[int]) -> int:
    """Start index of the lexicographically least rotation of ``seq``."""
    n = len(seq)
    if n < 2:
        return 0
    if n >= _FAST_LEN:
        return int(_kernels.least_rotation(np.asarray(seq, dtype=np.int8)))
    i, j, k = 0, 1, 0
    while i < n and j < n and k < n:
        a = seq[(i + k) % n]
        b = seq[(j + k) % n]
        if a == b:
            k += 1
            continue
        if a > b:
            i += k + 1
        else:
            j += k + 1
        if i == j:
            j += 1
        k = 0
    return min(i, j)


def _canonical(letters: Sequence[int]) -> tuple[int, ...]:
    s = least_rotation(letters)
    return tuple(letters[s:]) + tuple(letters[:s])


@dataclass(frozen=True)
class CyclicWord:
    """A conjugacy class, stored as the least rotation of a cyclically
    reduced word (order ``-N < ... < -1 < 1 < ... < N``)."""

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        Word(self.letters, self.rank)
        if len(self.letters) > 1 and self.letters[0] == -self.letters[-1]:
            raise MalformedWordError(f"{format_letters(self.letters)} is not cyclically reduced")
        if _canonical(self.letters) != self.letters:
            raise MalformedWordError(f"{format_letters(self.letters)} is not the least rotation")

    @classmethod
    def parse(cls, text: str, rank: int) -> "CyclicWord":
        return conjugacy_class(Word.parse(text, rank))

    @classmethod
    def _trusted(cls, letters: Iterable[int], rank: int) -> "CyclicWord":
        obj = object.__new__(cls)
        object.__setattr__(obj, "letters", tuple(letters))
        object.__setattr__(obj, "rank", rank)
        return obj

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def inverse(self) -> "CyclicWord":
        return CyclicWord._trusted(_canonical(_inverse(self.letters)), self.rank)

    def as_word(self) -> Word:
        return Word._trusted(self.letters, self.rank)

    def __str__(self) -> str:
        return format_letters(self.letters) or "1"

    def __repr__(self) -> str:
        return f"CyclicWord({str(self)!r}, rank={self.rank})"


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Return ``(c, u)`` with ``c`` canonical and ``w == u * c * u^-1``."""
    letters = w.letters
    n = len(letters)
    k = 0
    while 2 * k + 1 < n and letters[k] == -letters[n - 1 - k]:
        k += 1
    core = letters[k:n - k]
    s = least_rotation(core)
    # core = x.y and c = y.x, hence core = x c x^-1
    conj = Word._trusted(letters[:k] + core[:s], w.rank)
    return CyclicWord._trusted(core[s:] + core[:s], w.rank), conj


def conjugacy_class(w: Word) -> CyclicWord:
    return cyclic_reduce(w)[0]


def conjugate_equal(c1: CyclicWord, c2: CyclicWord, allow_inversion: bool = False) -> bool:
    _same_rank(c1, c2)
    if c1.letters == c2.letters:
        return True
    return allow_inversion and c1.letters == c2.inverse().letters


def _smallest_period(seq: Sequence[int]) -> int:
    n = len(seq)
    if n >= _FAST_LEN:
        return int(_kernels.smallest_period(np.asarray(seq, dtype=np.int8)))
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = fail[k - 1]
        if seq[i] == seq[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1]
    return p if n % p == 0 else n


def is_proper_power(c: CyclicWord) -> tuple[CyclicWord, int]:
    """Return ``(root, k)`` with ``c == root**k`` and ``k`` maximal."""
    if not c.letters:
        raise ValueError("the trivial class has no root")
    p = _smallest_period(c.letters)
    # a prefix of a least rotation with period p is itself a least rotation
    return CyclicWord._trusted(c.letters[:p], c.rank), len(c.letters) // p


def verify_inverse(images: Sequence[Word], inverse_images: Sequence[Word]) -> bool:
    """True iff the two generator maps are mutually inverse."""
    if len(images) != len(inverse_images) or not images:
        return False
    rank = images[0].rank
    if any(w.rank != rank for w in (*images, *inverse_images)) or len(images) != rank:
        return False
    fwd = _letter_table(images)
    bwd = _letter_table(inverse_images)
    for i in range(1, rank + 1):
        if _substitute(fwd, _substitute(bwd, (i,))) != [i]:
            return False
        if _substitute(bwd, _substitute(fwd, (i,))) != [i]:
            return False
    return True


def _letter_table(images: Sequence[Word]) -> dict[int, tuple[int, ...]]:
    table = {}
    for i, img in enumerate(images, start=1):
        table[i] = img.letters
        table[-i] = _inverse(img.letters)
    return table


def _flat_table(table: dict[int, tuple[int, ...]], rank: int) -> tuple[np.ndarray, np.ndarray]:
    chunks = [table.get(x, ()) for x in range(-rank, rank + 1)]
    offsets = np.zeros(len(chunks) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(c) for c in chunks])
    flat = np.fromiter((x for c in chunks for x in c), dtype=np.int8, count=int(offsets[-1]))
    return flat, offsets


def _substitute(table: dict[int, tuple[int, ...]], letters: Iterable[int]) -> list[int]:
    # images are reduced, so cancellation only happens across chunk joins
    out: list[int] = []
    pop = out.pop
    for x in letters:
        chunk = table[x]
        i = 0
        m = len(chunk)
        while out and i < m and out[-1] == -chunk[i]:
            pop()
            i += 1
        out.extend(chunk[i:] if i else chunk)
    return out


class Automorphism:
    """An automorphism of F_N given by generator images together with the
    images under its inverse.  The inverse is checked on construction."""

    __slots__ = ("rank", "images", "inverse_images", "name", "_fwd", "_flat")

    def __init__(self, images: Sequence[Word], inverse_images: Sequence[Word], name: str | None = None):
        images = tuple(images)
        inverse_images = tuple(inverse_images)
        if not verify_inverse(images, inverse_images):
            raise ValueError("declared inverse does not invert the automorphism")
        self.rank = images[0].rank
        self.images = images
        self.inverse_images = inverse_images
        self.name = name
        self._fwd = _letter_table(images)
        self._flat = None

    @classmethod
    def from_strings(cls, images: Sequence[str], inverse_images: Sequence[str], rank: int | None = None,
                     name: str | None = None) -> "Automorphism":
        rank = len(images) if rank is None else rank
        return cls([Word.parse(s, rank) for s in images],
                   [Word.parse(s, rank) for s in inverse_images], name=name)

    @classmethod
    def identity(cls, rank: int) -> "Automorphism":
        gens = [Word.generator(i, rank) for i in range(1, rank + 1)]
        return cls(gens, gens, name="id")

    @classmethod
    def from_dict(cls, data: dict, name: str | None = None) -> "Automorphism":
        rank = int(data["rank"])
        images, inv = data["images"], data["inverse_images"]
        if len(images) != rank or len(inv) != rank:
            raise ValueError(f"expected {rank} images and {rank} inverse images")
        return cls.from_strings(images, inv, rank=rank, name=name)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "images": [str(w) for w in self.images],
            "inverse_images": [str(w) for w in self.inverse_images],
        }

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def inverse(self) -> "Automorphism":
        return power(self, -1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        body = ", ".join(f"{format_letters((i,))}->{w}" for i, w in enumerate(self.images, start=1))
        return f"Automorphism({body})"


def apply(phi: Automorphism, w: Word) -> Word:
    """Image of ``w``; negative letters go to inverses of generator images."""
    _same_rank(phi, w)
    if len(w.letters) < _FAST_LEN:
        return Word._trusted(_substitute(phi._fwd, w.letters), w.rank)
    if phi._flat is None:
        phi._flat = _flat_table(phi._fwd, phi.rank)
    flat, offsets = phi._flat
    out = _kernels.substitute(np.asarray(w.letters, dtype=np.int8), flat, offsets, phi.rank)
    return Word._trusted(out.tolist(), w.rank)


def compose(phi: Automorphism, psi: Automorphism) -> Automorphism:
    """The automorphism ``w -> phi(psi(w))``."""
    _same_rank(phi, psi)
    images = [apply(phi, w) for w in psi.images]
    inv = [apply(_swap(psi), w) for w in phi.inverse_images]
    return Automorphism(images, inv)


def _swap(phi: Automorphism) -> Automorphism:
    obj = object.__new__(Automorphism)
    obj.rank = phi.rank
    obj.images = phi.inverse_images
    obj.inverse_images = phi.images
    obj.name = None
    obj._fwd = _letter_table(phi.inverse_images)
    obj._flat = None
    return obj


def power(phi: Automorphism, k: int) -> Automorphism:
    """``phi**k`` by iterated composition; negative ``k`` uses the declared inverse."""
    if k == 0:
        return Automorphism.identity(phi.rank)
    base = phi if k > 0 else _swap(phi)
    out = base
    for _ in range(abs(k) - 1):
        out = compose(base, out)
    return out


def load_automorphism(source: str | Path | dict, name: str | None = None) -> Automorphism:
    """Load ``{"rank": N, "images": [...], "inverse_images": [...]}``."""
    if isinstance(source, dict):
        data = source
    else:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
        data = json.loads(text)
    return Automorphism.from_dict(data, name=name)
