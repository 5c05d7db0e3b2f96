import pytest

from currents_lab.catalog import (
    commutator,
    fibonacci,
    nielsen_moves,
    phi3,
    surface_automorphism,
    surface_twists,
)
from currents_lab.dynamics import BoundaryStatus, boundary_class_test
from currents_lab.free_group import Word, conjugacy_class, verify_inverse
from currents_lab.sampling import (
    random_automorphism,
    random_current,
    random_cyclic_word,
    random_primitive,
    random_word,
    stream,
)
from currents_lab.whitehead import is_primitive


def test_catalog_automorphisms_are_verified():
    for phi in [fibonacci(), phi3(), *nielsen_moves(2), *nielsen_moves(3)]:
        assert verify_inverse(phi.images, phi.inverse_images)


def test_nielsen_move_count():
    # 4 transvections per ordered pair, one inversion per generator, adjacent swaps
    assert len(nielsen_moves(2)) == 4 * 2 + 2 + 1
    assert len(nielsen_moves(3)) == 4 * 6 + 3 + 2


def test_commutator_words():
    assert str(commutator(2)) == "abAB"
    assert str(commutator(4)) == "abABcdCD"


@pytest.mark.parametrize("genus", [1, 2])
def test_surface_maps_fix_the_boundary(genus):
    boundary = commutator(2 * genus)
    for phi in surface_twists(genus):
        assert boundary_class_test(phi, boundary) is BoundaryStatus.PRESERVED
    assert boundary_class_test(surface_automorphism(genus), boundary) is BoundaryStatus.PRESERVED


def test_surface_automorphism_images():
    assert [str(w) for w in surface_automorphism(1).images] == ["aba", "ba"]
    assert [str(w) for w in surface_automorphism(2).images] == ["Cbaaba", "ba", "badc", "Cbadc"]


def test_surface_twists_genus_bound():
    with pytest.raises(ValueError):
        surface_twists(3)


def test_streams_are_reproducible_and_labelled():
    a = stream(5, 1).integers(0, 10 ** 9, size=8)
    b = stream(5, 1).integers(0, 10 ** 9, size=8)
    c = stream(5, 2).integers(0, 10 ** 9, size=8)
    assert (a == b).all() and not (a == c).all()


def test_random_words():
    rng = stream(0)
    for n in range(0, 20):
        w = random_word(rng, 3, n)
        assert len(w) == n and isinstance(w, Word)
    for n in range(1, 12):
        assert len(random_cyclic_word(rng, 2, n)) == n


def test_random_automorphisms_and_primitives():
    rng = stream(1)
    for _ in range(20):
        phi = random_automorphism(rng, 3, 4)
        assert verify_inverse(phi.images, phi.inverse_images)
        g = random_primitive(rng, 2, 5, min_length=3)
        assert len(conjugacy_class(g)) >= 3 and is_primitive(g)


def test_random_current():
    rng = stream(2)
    for _ in range(20):
        nu = random_current(rng, 2)
        assert nu and all(c > 0 for _, c in nu.items())
    assert random_current(stream(9), 3) == random_current(stream(9), 3)
