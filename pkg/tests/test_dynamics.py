import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from currents_lab.catalog import commutator, fibonacci, nielsen_moves, phi3, surface_automorphism
from currents_lab.currents import RationalCurrent, counting_current, projective_distance, scale
from currents_lab.dynamics import (
    BoundaryStatus,
    BudgetError,
    FixedStatus,
    PreconditionError,
    TooManyClassesError,
    boundary_class_test,
    count_classes,
    detect_convergence,
    enumerate_classes,
    estimate_dilatation,
    exceptional_orbit_check,
    fixed_point_check,
    hyperbolic_candidate_search,
    is_primitive_matrix,
    orbit,
    periodic_class_search,
    pf_eigenvalue,
    transition_matrix,
)
from currents_lab.free_group import Automorphism, RankMismatchError, Word, apply, conjugacy_class, conjugate_equal, power

from oracles import bisection_root, naive_canonical, power_iteration, reduced_words
from strategies import coefficients, currents

GOLDEN = (1 + 5 ** 0.5) / 2


def W(text, rank=2):
    return Word.parse(text, rank)


def eta(text, rank=2):
    return counting_current(W(text, rank))


# -- orbits -------------------------------------------------------------------------

def test_identity_orbit_is_constant():
    r = orbit(Automorphism.identity(2), eta("aab"), 5, 3)
    assert all(p == r.profiles[0] for p in r.profiles)
    assert r.growth_ratios == (1.0,) * 5
    assert detect_convergence(r, 1e-9)[0] == 0
    assert estimate_dilatation(r, 1) == 1.0


def test_fibonacci_orbit_weights():
    phi = fibonacci()
    r = orbit(phi, eta("a"), 6, 2)
    assert [int(w) for w in r.weights] == [2, 4, 6, 10, 16, 26, 42]
    # oracle: iterate the word itself
    g = W("a")
    for k in range(7):
        assert r.weights[k] == 2 * len(conjugacy_class(g))
        g = apply(phi, g)


def test_boundary_orbit_weight_constant():
    r = orbit(fibonacci(), eta("abAB"), 6, 3)
    assert all(w == 8 for w in r.weights)
    assert detect_convergence(r, 1e-3)[0] == 0
    assert estimate_dilatation(r, 2) == 1.0


def test_fibonacci_converges():
    r = orbit(fibonacci(), eta("a"), 25, 3)
    k, limit = detect_convergence(r, 1e-3)
    assert k is not None and k <= 25
    assert limit == r.profiles[-1]
    # the letter frequencies approach the Perron-Frobenius eigenvector
    assert abs(limit["a"] / limit["b"] - GOLDEN) < 1e-6


def test_orbit_report_internal_consistency():
    r = orbit(fibonacci(), RationalCurrent(2, [("a", 1), ("aB", 2)]), 8, 3)
    assert len(r.weights) == len(r.profiles) == 9
    assert all(w > 0 for w in r.weights) and all(x > 0 for x in r.growth_ratios)
    for k in range(8):
        assert r.successive_distances[k] == projective_distance(r.profiles[k], r.profiles[k + 1])
        assert r.growth_ratios[k] == float(r.weights[k + 1] / r.weights[k])


def test_orbit_errors():
    with pytest.raises(ValueError):
        orbit(fibonacci(), RationalCurrent.zero(2), 3, 2)
    with pytest.raises(ValueError):
        orbit(fibonacci(), eta("a"), 0, 2)
    with pytest.raises(BudgetError):
        orbit(fibonacci(), eta("a"), 30, 2, max_length=500)


def test_orbit_csv_layout():
    r = orbit(fibonacci(), eta("a"), 3, 2)
    rows = r.to_csv().splitlines()
    assert rows[0].split(",")[:6] == ["step", "weight_num", "weight_den", "ratio", "distance", "a"]
    assert len(rows) == 5
    assert rows[1].split(",")[:5] == ["0", "2", "1", "", ""]
    assert rows[2].split(",")[:4] == ["1", "4", "1", "2"]


@given(st.data())
@settings(max_examples=25)
def test_scaling_covariance(data):
    nu = data.draw(currents(2, max_size=5))
    c = data.draw(coefficients())
    r1 = orbit(fibonacci(), nu, 5, 3)
    r2 = orbit(fibonacci(), scale(c, nu), 5, 3)
    assert r1.profiles == r2.profiles
    assert r1.growth_ratios == r2.growth_ratios


def test_detect_convergence_suffix_window():
    r = orbit(fibonacci(), eta("a"), 12, 2)
    d = r.successive_distances
    k, _ = detect_convergence(r, 1e-2)
    assert all(x < 1e-2 for x in d[k:])
    assert k == 0 or d[k - 1] >= 1e-2
    assert detect_convergence(r, 1e-30)[0] is None


def test_dilatation_estimate():
    r = orbit(fibonacci(), eta("a"), 20, 1)
    assert abs(estimate_dilatation(r, 5) - GOLDEN) < 1e-3
    with pytest.raises(ValueError):
        estimate_dilatation(r, 18)


def test_forward_backward_dilatation_agree():
    phi = fibonacci()
    fwd = estimate_dilatation(orbit(phi, eta("a"), 20, 1), 5)
    bwd = estimate_dilatation(orbit(phi.inverse(), eta("a"), 20, 1), 5)
    assert abs(fwd - bwd) < 1e-3


# -- transition matrices --------------------------------------------------------------

def test_transition_matrices():
    assert transition_matrix(fibonacci()).tolist() == [[1, 1], [1, 0]]
    assert transition_matrix(phi3()).tolist() == [[0, 0, 1], [1, 0, 1], [0, 1, 0]]
    assert transition_matrix(Automorphism.identity(3)).tolist() == np.eye(3, dtype=int).tolist()


def test_pf_eigenvalues_against_oracles():
    fib = pf_eigenvalue(transition_matrix(fibonacci()))
    assert fib.primitive and abs(fib.eigenvalue - GOLDEN) < 1e-9
    root = bisection_root(lambda x: x ** 3 - x - 1, 1.0, 2.0)
    tri = pf_eigenvalue(transition_matrix(phi3()))
    assert tri.primitive and abs(tri.eigenvalue - root) < 1e-9
    assert abs(tri.eigenvalue - power_iteration(transition_matrix(phi3()).tolist())) < 1e-9
    ident = pf_eigenvalue(transition_matrix(Automorphism.identity(2)))
    assert not ident.primitive and abs(ident.eigenvalue - 1.0) < 1e-12


def test_pf_on_reducible_matrix_is_flagged():
    m = np.array([[2, 1], [0, 3]])
    res = pf_eigenvalue(m)
    assert not res.primitive
    assert abs(res.eigenvalue - 3.0) < 1e-8
    assert not is_primitive_matrix(np.array([[0, 1], [1, 0]]))
    assert is_primitive_matrix(np.array([[1, 1], [1, 0]]))


@given(st.lists(st.integers(1, 9), min_size=9, max_size=9))
def test_pf_matches_numpy_on_positive_matrices(entries):
    m = np.array(entries, dtype=float).reshape(3, 3)
    expected = max(abs(np.linalg.eigvals(m)))
    assert abs(pf_eigenvalue(m).eigenvalue - expected) <= 1e-9 * expected


# -- boundary classes ----------------------------------------------------------------

def test_boundary_class_examples():
    phi = fibonacci()
    assert boundary_class_test(phi, W("abAB")) is BoundaryStatus.INVERTED
    assert boundary_class_test(power(phi, 2), W("abAB")) is BoundaryStatus.PRESERVED
    assert boundary_class_test(phi3(), W("abAB", 3)) is BoundaryStatus.MOVED
    with pytest.raises(ValueError):
        boundary_class_test(phi, Word.identity(2))


def test_rank_two_automorphisms_fix_the_commutator_up_to_inversion():
    for phi in nielsen_moves(2) + [fibonacci()]:
        assert boundary_class_test(phi, W("abAB")) is not BoundaryStatus.MOVED


def test_surface_automorphism_fixes_boundary():
    phi = surface_automorphism(2)
    assert boundary_class_test(phi, commutator(4)) is BoundaryStatus.PRESERVED
    assert pf_eigenvalue(transition_matrix(phi)).eigenvalue > 1


# -- class enumeration and periodic classes --------------------------------------------

@pytest.mark.parametrize("rank, max_length", [(2, 1), (2, 4), (2, 6), (3, 4)])
def test_enumeration_matches_brute_force(rank, max_length):
    expected = set()
    for n in range(1, max_length + 1):
        for w in reduced_words(rank, n):
            if n == 1 or w[0] != -w[-1]:
                expected.add(naive_canonical(w))
    got = [c.letters for c in enumerate_classes(rank, max_length)]
    assert len(got) == len(set(got))
    assert set(got) == expected
    assert count_classes(rank, max_length) == len(expected)


def test_identity_every_class_periodic():
    cert = periodic_class_search(Automorphism.identity(2), 3, 1)
    assert cert.exhaustive
    assert all(k == 1 for _, k in cert.findings)
    # one finding per inverse pair
    assert 2 * len(cert.findings) - sum(1 for c, _ in cert.findings if c.inverse() == c) == count_classes(2, 3)


def test_fibonacci_periodic_search():
    cert = periodic_class_search(fibonacci(), 4, 2)
    assert cert.exhaustive and cert.classes_checked == count_classes(2, 4)
    assert len(cert.findings) == 1
    c, k = cert.findings[0]
    assert k == 2 and conjugate_equal(c, conjugacy_class(W("abAB")), allow_inversion=True)


def test_phi3_periodic_search_empty():
    cert = periodic_class_search(phi3(), 6, 4)
    assert cert.empty and cert.exhaustive
    assert cert.classes_checked == count_classes(3, 6)


def test_periodic_search_workers_agree():
    a = periodic_class_search(fibonacci(), 5, 2)
    b = periodic_class_search(fibonacci(), 5, 2, workers=3)
    assert a == b


def test_periodic_findings_reverify():
    phi = power(fibonacci(), 2)
    cert = periodic_class_search(phi, 4, 3)
    for c, k in cert.findings:
        image = c
        for j in range(1, k + 1):
            image = conjugacy_class(apply(phi, image.as_word()))
            assert conjugate_equal(image, c) == (j == k)


def test_periodic_search_refuses_huge_bounds():
    with pytest.raises(TooManyClassesError) as info:
        periodic_class_search(phi3(), 12, 2)
    assert info.value.count == count_classes(3, 12)
    with pytest.raises(ValueError):
        periodic_class_search(phi3(), 0, 2)


def test_periodic_search_budget():
    with pytest.raises(BudgetError):
        periodic_class_search(power(fibonacci(), 6), 3, 3, budget=20)


# -- hyperbolic candidate search ---------------------------------------------------------

def test_hyperbolic_search_preconditions():
    phi = fibonacci()
    with pytest.raises(PreconditionError):
        hyperbolic_candidate_search(phi, phi, W("abAB"), 2, 3, 2)
    for psi in nielsen_moves(2):
        with pytest.raises(PreconditionError):
            hyperbolic_candidate_search(phi, psi, W("abAB"), 2, 3, 2)
    with pytest.raises(RankMismatchError):
        hyperbolic_candidate_search(phi3(), fibonacci(), W("abAB", 3), 1, 2, 1)


def test_hyperbolic_search_rank_four():
    phi = surface_automorphism(2)
    psi = Automorphism.from_strings(["ac", "b", "c", "d"], ["aC", "b", "c", "d"], name="a->ac")
    boundary = commutator(4)
    assert boundary_class_test(psi, boundary) is BoundaryStatus.MOVED
    rep = hyperbolic_candidate_search(phi, psi, boundary, 2, 4, 3)
    assert rep.bounded
    assert [m for m, _ in rep.certificates] == [1, 2]
    assert all(cert.exhaustive for _, cert in rep.certificates)
    assert rep.least_m is not None
    least = dict(rep.certificates)[rep.least_m]
    assert least.empty


def test_hyperbolic_search_budget():
    phi = surface_automorphism(2)
    psi = Automorphism.from_strings(["ac", "b", "c", "d"], ["aC", "b", "c", "d"])
    with pytest.raises(BudgetError):
        hyperbolic_candidate_search(phi, psi, commutator(4), 3, 2, 1, budget=50)


# -- fixed points and exceptional orbits ------------------------------------------------

def test_fixed_point_examples():
    phi = fibonacci()
    phi2 = power(phi, 2)
    assert fixed_point_check(phi2, [eta("abAB"), eta("a"), eta("b")], 3) == [
        FixedStatus.FIXED, FixedStatus.NOT_FIXED, FixedStatus.NOT_FIXED]
    assert fixed_point_check(phi, [eta("a")], 3) == [FixedStatus.NOT_FIXED]
    ident = Automorphism.identity(2)
    assert fixed_point_check(ident, [eta("a"), RationalCurrent(2, [("ab", 1), ("aaB", 3)])], 2) == [
        FixedStatus.FIXED, FixedStatus.FIXED]
    with pytest.raises(ValueError):
        fixed_point_check(phi, [RationalCurrent.zero(2)], 2)


def test_exceptional_orbit_check():
    phi2 = power(fibonacci(), 2)
    rep = exceptional_orbit_check(phi2, eta("abAB"), eta("a"), 12, 3, [W("abAB")])
    assert rep.boundary_stationary and rep.boundary_converged_at == 0
    assert rep.separation > 0.05
    assert rep.passed and not rep.degenerate
    again = exceptional_orbit_check(phi2, eta("abAB"), eta("a"), 12, 3, [W("abAB")])
    assert again == rep


def test_exceptional_orbit_degenerate_and_preconditions():
    ident = Automorphism.identity(2)
    rep = exceptional_orbit_check(ident, eta("abAB"), eta("a"), 4, 3, [W("abAB")])
    assert rep.degenerate and not rep.passed
    phi2 = power(fibonacci(), 2)
    with pytest.raises(PreconditionError):
        exceptional_orbit_check(phi2, eta("abAB"), eta("abAB"), 4, 3, [W("abAB")])
    with pytest.raises(PreconditionError):
        exceptional_orbit_check(phi2, eta("a"), eta("b"), 4, 3, [W("abAB")])
