"""Bruhat order on the symmetric-group orbit of a composition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .poset import FinitePoset

# orbit materialization is exponential in m; reject unreasonable requests
MAX_ORBIT_LENGTH = 8

Transposition = tuple[int, int]


def check_composition(nu) -> tuple[int, ...]:
    nu = tuple(int(v) for v in nu)
    if any(v < 0 for v in nu):
        raise ValueError(f"composition entries must be nonnegative: {nu}")
    return nu


def check_partition(lam) -> tuple[int, ...]:
    lam = tuple(int(v) for v in lam)
    if any(v < 0 for v in lam):
        raise ValueError(f"partition parts must be nonnegative: {lam}")
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"partition parts must be weakly decreasing: {lam}")
    return lam


def partition_length(lam) -> int:
    """Number of strictly positive parts."""
    return sum(1 for v in lam if v > 0)


def pad_partition(lam, m: int) -> tuple[int, ...]:
    """Weakly decreasing tuple of length m: parts of lam padded with zeros."""
    lam = check_partition(lam)
    if partition_length(lam) > m:
        raise ValueError(f"partition {lam} has more than {m} positive parts")
    positive = tuple(v for v in lam if v > 0)
    return positive + (0,) * (m - len(positive))


def length(nu) -> int:
    """Bruhat rank of a composition: the number of increasing pairs i < j."""
    nu = check_composition(nu)
    m = len(nu)
    return sum(1 for i in range(m) for j in range(i + 1, m) if nu[i] < nu[j])


@dataclass(frozen=True)
class Orbit:
    """All distinct rearrangements of a padded partition, with Bruhat order."""

    lam: tuple[int, ...]  # weakly decreasing, length m
    m: int
    elements: tuple[tuple[int, ...], ...]

    def __contains__(self, nu) -> bool:
        return tuple(nu) in self._element_set

    @cached_property
    def _element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def dominant(self) -> tuple[int, ...]:
        return self.lam

    @property
    def antidominant(self) -> tuple[int, ...]:
        return self.lam[::-1]

    def leq(self, nu, mu) -> bool:
        nu, mu = tuple(nu), tuple(mu)
        if nu not in self._element_set or mu not in self._element_set:
            raise ValueError("compositions outside the orbit")
        return bruhat_leq(nu, mu)


def orbit(lam, m: int) -> Orbit:
    """The S_m-orbit of the partition lam, padded with zeros to length m."""
    if m > MAX_ORBIT_LENGTH:
        raise ValueError(f"orbit of length {m} exceeds the cap {MAX_ORBIT_LENGTH}")
    padded = pad_partition(lam, m)
    elements = tuple(sorted(set(itertools.permutations(padded))))
    return Orbit(padded, m, elements)


def is_cover_transposition(nu, i: int, j: int) -> bool:
    """True iff swapping 1-based positions i < j is a Bruhat covering move.

    Requires nu_i > nu_j and every intermediate entry outside the closed
    interval [nu_j, nu_i]; with repeated values the closed interval is the
    correct reading.
    """
    if not 1 <= i < j <= len(nu):
        raise ValueError(f"bad transposition ({i},{j}) for length {len(nu)}")
    lo, hi = nu[j - 1], nu[i - 1]
    if hi <= lo:
        return False
    return all(not lo <= nu[k] <= hi for k in range(i, j - 1))


@lru_cache(maxsize=None)
def _covering_edges_cached(lam: tuple, m: int):
    orb = orbit(lam, m)
    covers = []
    labels = {}
    for nu in orb.elements:
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                if is_cover_transposition(nu, i, j):
                    mu = list(nu)
                    mu[i - 1], mu[j - 1] = mu[j - 1], mu[i - 1]
                    edge = (nu, tuple(mu))
                    covers.append(edge)
                    labels[edge] = (i, j)
    poset = FinitePoset(orb.elements, covers)
    return poset, labels


def covering_edges(orb: Orbit) -> tuple[FinitePoset, dict]:
    """The orbit's Bruhat poset plus transposition labels on its Hasse edges."""
    return _covering_edges_cached(orb.lam, orb.m)


def bruhat_leq(nu, mu) -> bool:
    """nu <= mu in the Bruhat order on their common orbit.

    Uses the prefix-count criterion: for every prefix length p and every
    threshold t, nu must have at least as many entries >= t among its first
    p slots as mu.  Validated against Hasse reachability in the test suite.
    """
    nu, mu = tuple(nu), tuple(mu)
    if len(nu) != len(mu) or sorted(nu) != sorted(mu):
        raise ValueError(f"{nu} and {mu} are not in a common orbit")
    thresholds = sorted(set(nu))[1:]  # the smallest value gives trivial counts
    m = len(nu)
    for t in thresholds:
        count_nu = 0
        count_mu = 0
        for p in range(m - 1):
            count_nu += nu[p] >= t
            count_mu += mu[p] >= t
            if count_nu < count_mu:
                return False
    return True


def el_label_key(t: Transposition) -> tuple[int, int]:
    """Sort key realizing the total order on transpositions used for EL-labelling.

    (i,l) comes before (j,k) iff l < k, or l = k and i > j.
    """
    return (t[1], -t[0])


def el_label_order(a: Transposition, b: Transposition) -> int:
    """-1, 0, or 1 comparing transpositions in the EL label order."""
    ka, kb = el_label_key(a), el_label_key(b)
    return (ka > kb) - (ka < kb)


# -- parabolic projection and its adjoints -------------------------------------


def staircase_delta(m: int) -> tuple[int, ...]:
    """The strictly decreasing staircase (m-1, m-2, ..., 0)."""
    return tuple(range(m - 1, -1, -1))


def _regularized(lam, m: int) -> tuple[int, ...]:
    padded = pad_partition(lam, m)
    return tuple(v + d for v, d in zip(padded, staircase_delta(m)))


def pi_lambda(nu, lam) -> tuple[int, ...]:
    """Project an element of the orbit of lam+delta down to the orbit of lam."""
    nu = check_composition(nu)
    m = len(nu)
    padded = pad_partition(lam, m)
    reg = _regularized(lam, m)
    if sorted(nu, reverse=True) != list(reg):
        raise ValueError(f"{nu} is not a rearrangement of {reg}")
    value_map = dict(zip(reg, padded))
    return tuple(value_map[v] for v in nu)


def _lift(b, lam, descending: bool) -> tuple[int, ...]:
    b = check_composition(b)
    m = len(b)
    padded = pad_partition(lam, m)
    reg = _regularized(lam, m)
    if sorted(b, reverse=True) != list(padded):
        raise ValueError(f"{b} is not a rearrangement of {padded}")
    reps: dict[int, list[int]] = {}
    for v, r in zip(padded, reg):
        reps.setdefault(v, []).append(r)  # descending order within each class
    out = [0] * m
    counters = {v: 0 for v in reps}
    order = {v: (rs if descending else rs[::-1]) for v, rs in reps.items()}
    for p, v in enumerate(b):
        out[p] = order[v][counters[v]]
        counters[v] += 1
    return tuple(out)


def psi_plus(b, lam) -> tuple[int, ...]:
    """Minimal-length lift of b from the orbit of lam to the orbit of lam+delta."""
    return _lift(b, lam, descending=True)


def psi_minus(b, lam) -> tuple[int, ...]:
    """Maximal-length lift of b from the orbit of lam to the orbit of lam+delta."""
    return _lift(b, lam, descending=False)
