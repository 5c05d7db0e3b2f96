"""Named automorphisms used throughout the experiments."""
from __future__ import annotations

from .free_group import Automorphism, Word, apply, compose, conjugacy_class, format_letters


def fibonacci() -> Automorphism:
    """``a -> ab, b -> a`` on F_2; induced by a pseudo-Anosov of the
    once-punctured torus, so it fixes ``[a, b]`` up to inversion."""
    return Automorphism.from_strings(["ab", "a"], ["b", "Ba"], name="fibonacci")


def phi3() -> Automorphism:
    """``a -> b, b -> c, c -> ab`` on F_3 (growth rate: real root of x^3 = x + 1)."""
    return Automorphism.from_strings(["b", "c", "ab"], ["cA", "a", "b"], name="phi3")


def commutator(rank: int, pairs: int | None = None) -> Word:
    """Boundary word ``[a_1, a_2][a_3, a_4]...`` of a one-holed surface."""
    pairs = rank // 2 if pairs is None else pairs
    letters = []
    for k in range(pairs):
        x, y = 2 * k + 1, 2 * k + 2
        letters += [x, y, -x, -y]
    return Word(tuple(letters), rank)


def nielsen_moves(rank: int) -> list[Automorphism]:
    """Elementary Nielsen automorphisms with their inverses: right and left
    transvections ``a_i -> a_i a_j^{+-1}``, ``a_i -> a_j^{+-1} a_i``, inversions,
    and transpositions of adjacent generators."""
    moves = []

    def build(changes: dict[int, tuple[int, ...]], inverse: dict[int, tuple[int, ...]], name: str):
        images = [Word(changes.get(i, (i,)), rank) for i in range(1, rank + 1)]
        inv = [Word(inverse.get(i, (i,)), rank) for i in range(1, rank + 1)]
        moves.append(Automorphism(images, inv, name=name))

    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            if i == j:
                continue
            for s in (1, -1):
                xi, xj = format_letters((i,)), format_letters((s * j,))
                build({i: (i, s * j)}, {i: (i, -s * j)}, f"{xi}->{xi}{xj}")
                build({i: (s * j, i)}, {i: (-s * j, i)}, f"{xi}->{xj}{xi}")
    for i in range(1, rank + 1):
        build({i: (-i,)}, {i: (-i,)}, f"{format_letters((i,))}->{format_letters((-i,))}")
    for i in range(1, rank):
        build({i: (i + 1,), i + 1: (i,)}, {i: (i + 1,), i + 1: (i,)}, f"swap{i}{i + 1}")
    return moves


def surface_twists(genus: int) -> list[Automorphism]:
    """Automorphisms of F_{2g} fixing the class of ``[a_1,b_1]...[a_g,b_g]``
    (generators ordered ``a_1, b_1, a_2, b_2, ...``): the handle twists
    ``b -> ba`` and ``a -> aB`` of each handle and, in genus 2, the map
    ``a -> Cba, d -> Cbd`` sliding across the two handles."""
    if not 1 <= genus <= 2:
        raise ValueError("only genus 1 and 2 are catalogued")
    rank = 2 * genus
    boundary = conjugacy_class(commutator(rank))
    twists = []

    def build(images: dict[int, tuple[int, ...]], inverse: dict[int, tuple[int, ...]], name: str):
        im = [Word(images.get(i, (i,)), rank) for i in range(1, rank + 1)]
        inv = [Word(inverse.get(i, (i,)), rank) for i in range(1, rank + 1)]
        phi = Automorphism(im, inv, name=name)
        assert conjugacy_class(apply(phi, boundary.as_word())) == boundary
        twists.append(phi)

    for k in range(genus):
        a, b = 2 * k + 1, 2 * k + 2
        xa, xb = format_letters((a,)), format_letters((b,))
        build({b: (b, a)}, {b: (b, -a)}, f"T_{xa}")
        build({a: (a, -b)}, {a: (a, b)}, f"T_{xb}")
    if genus == 2:
        build({1: (-3, 2, 1), 4: (-3, 2, 4)}, {1: (-2, 3, 1), 4: (-2, 3, 4)}, "L_bc")
    return twists


def surface_automorphism(genus: int = 2) -> Automorphism:
    """Mixed-sign product of the maps in :func:`surface_twists`: handle twists
    ``T_a`` positively and ``T_b`` negatively, slides positively.  Fixes the
    boundary class; used as the geometric input of the hyperbolic search."""
    twists = surface_twists(genus)
    handle = twists[:2 * genus]
    slides = twists[2 * genus:]
    out = Automorphism.identity(2 * genus)
    for k in range(genus):
        out = compose(out, handle[2 * k])
    for s in slides:
        out = compose(out, s)
    for k in range(genus):
        out = compose(out, handle[2 * k + 1].inverse())
    out.name = f"surface_genus{genus}"
    return out
