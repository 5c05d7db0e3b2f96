"""Orbit experiments for automorphisms acting on projectivized currents.

The attracting and repelling currents of an iwip are only ever represented
here as limits of frequency profiles along forward and backward orbits.
Periodic-class searches are exhaustive within their bounds and certify
nothing beyond them.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .currents import (
    FrequencyProfile,
    RationalCurrent,
    act,
    exact_profile,
    frequency_profile,
    projective_distance,
    weight,
)
from .free_group import (
    Automorphism,
    CyclicWord,
    RankMismatchError,
    Word,
    apply,
    compose,
    conjugacy_class,
    conjugate_equal,
    format_letters,
    least_rotation,
)

__all__ = [
    "PreconditionError",
    "BudgetError",
    "TooManyClassesError",
    "OrbitReport",
    "orbit",
    "detect_convergence",
    "estimate_dilatation",
    "transition_matrix",
    "is_primitive_matrix",
    "pf_eigenvalue",
    "PerronFrobenius",
    "BoundaryStatus",
    "boundary_class_test",
    "count_classes",
    "enumerate_classes",
    "PeriodicClassCertificate",
    "periodic_class_search",
    "HyperbolicSearchReport",
    "hyperbolic_candidate_search",
    "FixedStatus",
    "fixed_point_check",
    "ExceptionalReport",
    "exceptional_orbit_check",
]

DEFAULT_SEPARATION = 0.15
MAX_CLASSES = 10 ** 7


class PreconditionError(ValueError):
    pass


class BudgetError(RuntimeError):
    pass


class TooManyClassesError(ValueError):
    def __init__(self, count: int, limit: int):
        super().__init__(f"{count} conjugacy classes within bounds exceeds the limit {limit}")
        self.count = count


def _name(obj, fallback: str) -> str:
    return getattr(obj, "name", None) or fallback


# -- orbits ---------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitReport:
    """Forward orbit ``nu, phi nu, ..., phi^n nu`` at profile level ``level``.

    ``weights`` and ``profiles`` have ``steps + 1`` entries;
    ``successive_distances[k]`` compares profiles ``k`` and ``k + 1`` and
    ``growth_ratios[k] = weights[k + 1] / weights[k]``.
    """

    automorphism_id: str
    seed_id: str
    level: int
    steps: int
    weights: tuple[Fraction, ...]
    profiles: tuple[FrequencyProfile, ...]
    successive_distances: tuple[float, ...]
    growth_ratios: tuple[float, ...]

    @property
    def limit(self) -> FrequencyProfile:
        return self.profiles[-1]

    def to_dict(self) -> dict:
        return {
            "automorphism": self.automorphism_id,
            "seed": self.seed_id,
            "level": self.level,
            "steps": self.steps,
            "profile_words": [format_letters(w) for w in self.profiles[0].words],
            "records": [
                {
                    "step": k,
                    "weight": str(self.weights[k]),
                    "ratio": self.growth_ratios[k - 1] if k else None,
                    "distance": self.successive_distances[k - 1] if k else None,
                    "profile": list(self.profiles[k].values),
                }
                for k in range(self.steps + 1)
            ],
        }

    def to_csv(self, float_format: str = ".12g") -> str:
        """One row per step: step, weight_num, weight_den, ratio, distance,
        then one column per profile representative (blank ratio/distance at
        step 0)."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        words = [format_letters(w) for w in self.profiles[0].words]
        writer.writerow(["step", "weight_num", "weight_den", "ratio", "distance", *words])
        for k in range(self.steps + 1):
            w = self.weights[k]
            ratio = format(self.growth_ratios[k - 1], float_format) if k else ""
            dist = format(self.successive_distances[k - 1], float_format) if k else ""
            writer.writerow([k, w.numerator, w.denominator, ratio, dist,
                             *(format(v, float_format) for v in self.profiles[k].values)])
        return buf.getvalue()


def orbit(phi: Automorphism, nu: RationalCurrent, n: int, level: int, *,
          seed_id: str = "seed", max_length: int | None = None) -> OrbitReport:
    """Iterate ``act(phi, .)`` ``n`` times, recording weights and profiles.

    ``max_length`` bounds the total cyclic length of the current; exceeding
    it raises :class:`BudgetError`.
    """
    if not nu:
        raise ValueError("the zero current has no orbit in projective space")
    if n < 1:
        raise ValueError("need at least one step")
    if phi.rank != nu.rank:
        raise RankMismatchError(f"rank {phi.rank} vs rank {nu.rank}")
    weights = [weight(nu)]
    profiles = [frequency_profile(nu, level)]
    current = nu
    for _ in range(n):
        current = act(phi, current)
        if max_length is not None and sum(len(h) for h, _ in current.items()) > max_length:
            raise BudgetError(f"orbit exceeded the word-length budget {max_length}")
        weights.append(weight(current))
        profiles.append(frequency_profile(current, level))
    distances = tuple(projective_distance(p, q) for p, q in zip(profiles, profiles[1:]))
    ratios = tuple(float(b / a) for a, b in zip(weights, weights[1:]))
    return OrbitReport(_name(phi, "phi"), seed_id, level, n, tuple(weights), tuple(profiles),
                       distances, ratios)


def detect_convergence(report: OrbitReport, tol: float) -> tuple[int | None, FrequencyProfile]:
    """First ``k`` such that every successive distance from ``k`` on is below ``tol``."""
    d = report.successive_distances
    k = len(d)
    while k > 0 and d[k - 1] < tol:
        k -= 1
    return (k if k < len(d) else None), report.limit


def estimate_dilatation(report: OrbitReport, burn_in: int) -> float:
    """Geometric mean of the growth ratios after ``burn_in`` steps."""
    if report.steps <= burn_in + 2:
        raise ValueError(f"report has {report.steps} steps; need more than burn_in + 2 = {burn_in + 2}")
    ratios = report.growth_ratios[burn_in:]
    return math.exp(sum(math.log(r) for r in ratios) / len(ratios))


# -- transition matrices ------------------------------------------------------------

def transition_matrix(phi: Automorphism) -> np.ndarray:
    """Entry ``(i, j)`` counts occurrences of ``a_i^{+-1}`` in ``phi(a_j)``."""
    n = phi.rank
    m = np.zeros((n, n), dtype=np.int64)
    for j, img in enumerate(phi.images):
        for x in img.letters:
            m[abs(x) - 1, j] += 1
    return m


def is_primitive_matrix(m: np.ndarray) -> bool:
    """Whether some power ``m^k`` with ``k <= 2 n^2`` is strictly positive."""
    n = m.shape[0]
    pattern = (np.asarray(m) > 0).astype(np.int64)
    acc = pattern.copy()
    for _ in range(2 * n * n):
        if acc.all():
            return True
        acc = ((acc @ pattern) > 0).astype(np.int64)
    return bool(acc.all())


class PerronFrobenius(NamedTuple):
    eigenvalue: float
    primitive: bool
    eigenvector: np.ndarray
    iterations: int


def pf_eigenvalue(m: np.ndarray, rtol: float = 1e-10, max_iter: int = 100_000) -> PerronFrobenius:
    """Spectral radius of a nonnegative matrix by power iteration.

    For a primitive matrix the iteration stops once the Collatz-Wielandt
    bracket ``min (Mx)_i/x_i <= rho <= max (Mx)_i/x_i`` has relative width
    below ``rtol``.  Otherwise ``M + I`` is iterated (its positive diagonal
    keeps the iterate positive) and the result is flagged non-primitive.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    primitive = is_primitive_matrix(m)
    b = m if primitive else m + np.eye(n)
    x = np.full(n, 1.0 / n)
    lam = 0.0
    for it in range(1, max_iter + 1):
        y = b @ x
        if primitive:
            ratios = y / x
            lo, hi = ratios.min(), ratios.max()
            lam = 0.5 * (lo + hi)
            if hi - lo <= rtol * lam:
                x = y / y.sum()
                break
        else:
            new = y.sum() / x.sum()
            if abs(new - lam) <= rtol * 1e-2 * new:
                lam = new
                x = y / y.sum()
                break
            lam = new
        x = y / y.sum()
    value = lam if primitive else lam - 1.0
    return PerronFrobenius(float(value), primitive, x, it)


# -- boundary classes and periodic classes -----------------------------------------------

class BoundaryStatus(enum.Enum):
    PRESERVED = "Preserved"
    INVERTED = "Inverted"
    MOVED = "Moved"

    def __str__(self) -> str:
        return self.value


def boundary_class_test(phi: Automorphism, boundary: Word) -> BoundaryStatus:
    """Does ``phi`` send ``[g]`` to ``[g]``, to ``[g^-1]``, or elsewhere?"""
    if not boundary.letters:
        raise ValueError("the boundary word must be nontrivial")
    c = conjugacy_class(boundary)
    image = conjugacy_class(apply(phi, boundary))
    if conjugate_equal(image, c):
        return BoundaryStatus.PRESERVED
    if conjugate_equal(image, c, allow_inversion=True):
        return BoundaryStatus.INVERTED
    return BoundaryStatus.MOVED


def _cyclically_reduced_count(rank: int, n: int) -> int:
    return (2 * rank - 1) ** n + 1 + (rank - 1) * (1 + (-1) ** n)


def _totient(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def count_classes(rank: int, max_length: int) -> int:
    """Number of nontrivial conjugacy classes of cyclic length ``<= max_length``
    (Burnside over rotations of cyclically reduced words)."""
    total = 0
    for n in range(1, max_length + 1):
        s = sum(_totient(n // d) * _cyclically_reduced_count(rank, d) for d in range(1, n + 1) if n % d == 0)
        total += s // n
    return total


def enumerate_classes(rank: int, max_length: int, first: int | None = None):
    """Yield each conjugacy class of cyclic length ``1..max_length`` once, as its
    least rotation.  ``first`` restricts to classes starting with that letter."""
    letters = sorted(x for i in range(1, rank + 1) for x in (i, -i))
    heads = letters if first is None else [first]
    for n in range(1, max_length + 1):
        for head in heads:
            # a least rotation has no letter below its first one
            allowed = [x for x in letters if x >= head]
            word = [head]

            def extend():
                if len(word) == n:
                    if n > 1 and word[-1] == -word[0]:
                        return
                    if least_rotation(word) == 0:
                        yield CyclicWord._trusted(word, rank)
                    return
                for x in allowed:
                    if x != -word[-1]:
                        word.append(x)
                        yield from extend()
                        word.pop()

            yield from extend()


@dataclass(frozen=True)
class PeriodicClassCertificate:
    """Bounded search for classes ``c`` with ``phi^k [c] = [c]``, ``k <= period_bound``.

    Each finding is the least period of the class; of a pair ``c, c^-1``
    (which share a period) only the smaller representative is reported.
    """

    automorphism_id: str
    length_bound: int
    period_bound: int
    findings: tuple[tuple[CyclicWord, int], ...]
    exhaustive: bool
    classes_checked: int

    @property
    def empty(self) -> bool:
        return not self.findings

    def to_dict(self) -> dict:
        return {
            "automorphism": self.automorphism_id,
            "length_bound": self.length_bound,
            "period_bound": self.period_bound,
            "exhaustive": self.exhaustive,
            "classes_checked": self.classes_checked,
            "findings": [{"class": str(c), "period": k} for c, k in self.findings],
        }


def _period(phi: Automorphism, c: CyclicWord, p: int, budget: int | None) -> int | None:
    current = c
    for k in range(1, p + 1):
        current = conjugacy_class(apply(phi, current.as_word()))
        if budget is not None and len(current) > budget:
            raise BudgetError(f"image length {len(current)} exceeds the budget {budget}")
        if current == c:
            return k
    return None


def _search_shard(phi: Automorphism, max_length: int, p: int, first: int, budget: int | None):
    found, checked = [], 0
    for c in enumerate_classes(phi.rank, max_length, first=first):
        checked += 1
        k = _period(phi, c, p, budget)
        if k is not None:
            found.append((c, k))
    return found, checked


def periodic_class_search(phi: Automorphism, max_length: int, p: int, *, workers: int = 1,
                          max_classes: int = MAX_CLASSES, budget: int | None = None) -> PeriodicClassCertificate:
    """Test every class of cyclic length ``<= max_length`` for ``phi^k``-fixedness, ``k <= p``."""
    if max_length < 1 or p < 1:
        raise ValueError("bounds must be positive")
    total = count_classes(phi.rank, max_length)
    if total > max_classes:
        raise TooManyClassesError(total, max_classes)
    heads = sorted(x for i in range(1, phi.rank + 1) for x in (i, -i))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_search_shard, *zip(*[(phi, max_length, p, h, budget) for h in heads])))
    else:
        parts = [_search_shard(phi, max_length, p, h, budget) for h in heads]
    found = {c: k for part, _ in parts for c, k in part}
    checked = sum(n for _, n in parts)
    findings = []
    for c, k in found.items():
        inv = c.inverse()
        if inv != c and inv in found and inv.letters < c.letters:
            continue
        findings.append((c, k))
    findings.sort(key=lambda ck: (len(ck[0]), ck[0].letters))
    return PeriodicClassCertificate(_name(phi, "phi"), max_length, p, tuple(findings),
                                    checked == total, checked)


@dataclass(frozen=True)
class HyperbolicSearchReport:
    """Bounded certificates for ``phi^m psi``, ``m = 1..m_max``.

    An empty certificate only says no periodic class of cyclic length
    ``<= length_bound`` with period ``<= period_bound`` exists; it is not a
    proof of hyperbolicity.
    """

    phi_id: str
    psi_id: str
    boundary: Word
    length_bound: int
    period_bound: int
    certificates: tuple[tuple[int, PeriodicClassCertificate], ...]
    bounded: bool = field(default=True)

    @property
    def least_m(self) -> int | None:
        return next((m for m, cert in self.certificates if cert.empty), None)

    def to_dict(self) -> dict:
        return {
            "phi": self.phi_id,
            "psi": self.psi_id,
            "boundary": str(self.boundary),
            "length_bound": self.length_bound,
            "period_bound": self.period_bound,
            "bounded_certificate": self.bounded,
            "least_m": self.least_m,
            "certificates": [{"m": m, **cert.to_dict()} for m, cert in self.certificates],
        }


def hyperbolic_candidate_search(phi: Automorphism, psi: Automorphism, boundary: Word, m_max: int,
                                max_length: int, p: int, *, budget: int = 10 ** 6,
                                workers: int = 1) -> HyperbolicSearchReport:
    """Search ``phi^m psi`` for candidates with no short periodic class.

    ``boundary`` is the boundary word of the surface carrying ``phi``; ``phi``
    must fix its class up to inversion and ``psi`` must move it.
    """
    if not phi.rank == psi.rank == boundary.rank:
        raise RankMismatchError(f"ranks {phi.rank}, {psi.rank}, {boundary.rank} differ")
    if boundary_class_test(phi, boundary) is BoundaryStatus.MOVED:
        raise PreconditionError(f"phi does not fix the boundary class [{boundary}] up to inversion")
    status = boundary_class_test(psi, boundary)
    if status is not BoundaryStatus.MOVED:
        raise PreconditionError(f"psi leaves the boundary class [{boundary}] {status.value.lower()}")
    certificates = []
    phi_m = Automorphism.identity(phi.rank)
    for m in range(1, m_max + 1):
        phi_m = compose(phi, phi_m)
        theta = compose(phi_m, psi)
        size = max(sum(len(w) for w in theta.images), sum(len(w) for w in theta.inverse_images))
        if size > budget:
            raise BudgetError(f"phi^{m} psi has total image length {size} > budget {budget}")
        theta.name = f"{_name(phi, 'phi')}^{m}.{_name(psi, 'psi')}"
        cert = periodic_class_search(theta, max_length, p, workers=workers, budget=budget)
        certificates.append((m, cert))
    return HyperbolicSearchReport(_name(phi, "phi"), _name(psi, "psi"), boundary, max_length, p,
                                  tuple(certificates))


# -- fixed points and exceptional dynamics --------------------------------------------

class FixedStatus(enum.Enum):
    FIXED = "Fixed"
    NOT_FIXED = "NotFixed"

    def __str__(self) -> str:
        return self.value


def _proportional(nu: RationalCurrent, mu: RationalCurrent) -> bool:
    a, b = nu.terms, mu.terms
    if a.keys() != b.keys():
        return False
    ratios = {b[h] / a[h] for h in a}
    return len(ratios) == 1


def fixed_point_check(phi: Automorphism, candidates: Sequence[RationalCurrent], level: int) -> list[FixedStatus]:
    """``Fixed`` iff ``phi nu`` is a positive multiple of ``nu``."""
    out = []
    for nu in candidates:
        if not nu:
            raise ValueError("the zero current is not a projective point")
        image = act(phi, nu)
        same = exact_profile(image, level) == exact_profile(nu, level) and _proportional(nu, image)
        out.append(FixedStatus.FIXED if same else FixedStatus.NOT_FIXED)
    return out


@dataclass(frozen=True)
class ExceptionalReport:
    boundary_converged_at: int | None
    boundary_stationary: bool
    generic_converged_at: int | None
    separation: float
    threshold: float
    degenerate: bool

    @property
    def separated(self) -> bool:
        return self.separation > self.threshold

    @property
    def passed(self) -> bool:
        return not self.degenerate and self.boundary_stationary and self.separated

    def to_dict(self) -> dict:
        return {
            "boundary_converged_at": self.boundary_converged_at,
            "boundary_stationary": self.boundary_stationary,
            "generic_converged_at": self.generic_converged_at,
            "separation": self.separation,
            "threshold": self.threshold,
            "separated": self.separated,
            "degenerate": self.degenerate,
            "passed": self.passed,
        }


def _boundary_keys(boundary_words: Sequence[Word]) -> set[tuple[int, ...]]:
    keys = set()
    for w in boundary_words:
        c = conjugacy_class(w)
        keys.add(c.letters)
        keys.add(c.inverse().letters)
    return keys


def exceptional_orbit_check(phi: Automorphism, boundary: RationalCurrent, generic_seed: RationalCurrent,
                            n: int, level: int, boundary_words: Sequence[Word], *,
                            threshold: float = DEFAULT_SEPARATION, tol: float = 1e-3) -> ExceptionalReport:
    """The boundary orbit must stay put while a generic seed converges to a
    projective limit at distance greater than ``threshold`` from it."""
    keys = _boundary_keys(boundary_words)
    if not boundary or any(h.letters not in keys for h, _ in boundary.items()):
        raise PreconditionError("boundary current must combine boundary-word counting currents")
    if not generic_seed or all(h.letters in keys for h, _ in generic_seed.items()):
        raise PreconditionError("generic seed is a boundary combination")
    b_orbit = orbit(phi, boundary, n, level, seed_id="boundary")
    g_orbit = orbit(phi, generic_seed, n, level, seed_id="generic")
    b_conv, b_limit = detect_convergence(b_orbit, tol)
    g_conv, g_limit = detect_convergence(g_orbit, tol)
    stationary = (b_conv == 0 and all(d == 0.0 for d in b_orbit.successive_distances)
                  and b_limit.values == b_orbit.profiles[0].values)
    degenerate = all(d == 0.0 for d in g_orbit.successive_distances)
    separation = projective_distance(g_limit, b_orbit.profiles[0])
    return ExceptionalReport(b_conv, stationary, g_conv, separation, threshold, degenerate)
