"""Dominant compositions over arborescent posets and the bubble-sort idempotent.

An arborescent poset with consistent anti-linearization is stored with its
elements identified with their positions in [1, m] (the anti-linearization is
then the identity on positions).  Order-reversing means that larger poset
elements sit at smaller positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import bruhat
from .poset import FinitePoset, transitive_reduce

Transposition = tuple[int, int]


class DominanceError(ValueError):
    """Raised when a composition violates a dominance/admissibility precondition."""


class InconsistentLinearization(ValueError):
    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(
            message
            or f"inconsistent (anti)linearization: violating triple (s,t,r) = {triple}"
        )


def _closure(elements, covers) -> dict[int, frozenset[int]]:
    """Strict up-sets: above[p] = all q with p strictly below q."""
    parents: dict[int, list[int]] = {p: [] for p in elements}
    for x, y in covers:
        parents[x].append(y)
    above: dict[int, frozenset[int]] = {}

    def up(p: int) -> frozenset[int]:
        if p not in above:
            acc: set[int] = set()
            for q in parents[p]:
                acc.add(q)
                acc |= up(q)
            above[p] = frozenset(acc)
        return above[p]

    for p in elements:
        up(p)
    return above


@dataclass(frozen=True)
class AntilinearizedPoset:
    """Arborescent poset, elements = positions in [1, m], order-reversing.

    ``covers`` lists Hasse edges (x, y) with x below y in the poset; being
    order-reversing forces x > y as integers.
    """

    m: int
    elements: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]

    def __post_init__(self):
        elements = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "covers", tuple(sorted(set(self.covers))))
        if elements and not (1 <= elements[0] and elements[-1] <= self.m):
            raise ValueError(f"positions must lie in [1, {self.m}]: {elements}")
        eset = set(elements)
        lower_count: dict[int, int] = {p: 0 for p in elements}
        for x, y in self.covers:
            if x not in eset or y not in eset:
                raise ValueError(f"cover ({x}, {y}) uses a position outside {elements}")
            if not x > y:
                raise ValueError(
                    f"cover ({x}, {y}) breaks the order-reversing convention (need x > y)"
                )
            lower_count[y] += 1
        for p, c in lower_count.items():
            if c > 1:
                raise ValueError(f"element {p} has {c} lower covers; Hasse must be a forest")
        self._validate_consistency()

    def _validate_consistency(self):
        above = self.above
        for r in self.elements:
            for s in above[r]:  # s > r in the poset, so s < r as positions
                for t in self.elements:
                    if s < t < r and t not in above[r]:
                        raise InconsistentLinearization((s, t, r))

    @cached_property
    def above(self) -> dict[int, frozenset[int]]:
        return _closure(self.elements, self.covers)

    @cached_property
    def below(self) -> dict[int, frozenset[int]]:
        down: dict[int, set[int]] = {p: set() for p in self.elements}
        for p, ups in self.above.items():
            for q in ups:
                down[q].add(p)
        return {p: frozenset(s) for p, s in down.items()}

    @cached_property
    def _element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def _count_leq(self) -> tuple[int, ...]:
        """#elements with position <= k, for k = 0..m."""
        counts = [0] * (self.m + 1)
        for p in self.elements:
            counts[p] += 1
        for k in range(1, self.m + 1):
            counts[k] += counts[k - 1]
        return tuple(counts)

    def comparable(self, p: int, q: int) -> bool:
        return p == q or q in self.above[p] or p in self.above[q]

    def poset(self) -> FinitePoset:
        return FinitePoset(self.elements, self.covers)

    def restricted(self) -> tuple["AntilinearizedPoset", dict[int, int]]:
        """Surjective core: drop unused positions.  Returns (base, old->new)."""
        relabel = {p: i + 1 for i, p in enumerate(self.elements)}
        covers = tuple((relabel[x], relabel[y]) for x, y in self.covers)
        core = AntilinearizedPoset(len(self.elements), tuple(relabel.values()), covers)
        return core, relabel

    def flip(self) -> "LinearizedPoset":
        """The opposite order-preserving linearization via p -> m - p + 1."""
        op = lambda p: self.m - p + 1
        return LinearizedPoset(
            self.m,
            tuple(op(p) for p in self.elements),
            tuple((op(x), op(y)) for x, y in self.covers),
        )


@dataclass(frozen=True)
class LinearizedPoset:
    """Arborescent poset with order-preserving embedding into [1, n]."""

    n: int
    elements: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]  # (x, y) with x below y; here x < y

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))
        object.__setattr__(self, "covers", tuple(sorted(set(self.covers))))
        self.flip()  # full validation happens on the anti-linearized twin

    def flip(self) -> AntilinearizedPoset:
        op = lambda p: self.n - p + 1
        return AntilinearizedPoset(
            self.n,
            tuple(op(p) for p in self.elements),
            tuple((op(x), op(y)) for x, y in self.covers),
        )

    @cached_property
    def above(self) -> dict[int, frozenset[int]]:
        return _closure(self.elements, self.covers)

    def poset(self) -> FinitePoset:
        return FinitePoset(self.elements, self.covers)


def example_arbor() -> AntilinearizedPoset:
    """Seven-element arborescent poset on positions {1,2,3,5,6,7,8} of [1,9]."""
    return AntilinearizedPoset(
        9,
        (1, 2, 3, 5, 6, 7, 8),
        ((3, 1), (3, 2), (8, 5), (7, 6), (8, 7)),
    )


def example_nongraded() -> AntilinearizedPoset:
    """Four-slot base whose dominant poset at (3,2,2,1) fails gradedness."""
    return AntilinearizedPoset(4, (1, 2, 3, 4), ((2, 1),))


# -- dominance and admissibility ------------------------------------------------


def is_admissible(base: AntilinearizedPoset, d) -> bool:
    """Prefix counts of nonzero entries never exceed prefix counts of elements."""
    d = bruhat.check_composition(d)
    _check_length(base, d)
    nonzero = 0
    for k in range(1, base.m + 1):
        nonzero += d[k - 1] > 0
        if nonzero > base._count_leq[k]:
            return False
    return True


def is_position_dominant(base: AntilinearizedPoset, d, l: int) -> bool:
    """Dominance at one position: zero off the elements, else dominated from above."""
    if l not in base._element_set:
        return d[l - 1] == 0
    return all(d[s - 1] >= d[l - 1] for s in base.above[l])


def is_dominant_upto(base: AntilinearizedPoset, d, k: int) -> bool:
    d = bruhat.check_composition(d)
    _check_length(base, d)
    return all(is_position_dominant(base, d, l) for l in range(1, k + 1))


def is_dominant(base: AntilinearizedPoset, d) -> bool:
    return is_dominant_upto(base, d, base.m)


def _check_length(base, d):
    if len(d) != base.m:
        raise DominanceError(f"composition length {len(d)} != ambient length {base.m}")


def minimal_disorders(base: AntilinearizedPoset, d) -> list[Transposition]:
    """All minimal disorders of a dominant composition.

    A pair (i, j) of element positions qualifies when i < j are incomparable,
    d_i > d_j, and every intermediate element position l satisfies the
    blocking conditions: below i forces d_l <= d_j, above j forces d_l >= d_i,
    incomparable with both forces d_l outside the closed interval [d_j, d_i].
    """
    d = bruhat.check_composition(d)
    if not is_dominant(base, d):
        raise DominanceError(f"{d} is not dominant for the base")
    out = []
    elems = base.elements
    for a, i in enumerate(elems):
        for j in elems[a + 1:]:
            if d[i - 1] <= d[j - 1] or base.comparable(i, j):
                continue
            hi, lo = d[i - 1], d[j - 1]
            ok = True
            for l in elems:
                if not i < l < j:
                    continue
                if i in base.above[l]:  # l below i
                    ok = d[l - 1] <= lo
                elif l in base.above[j]:  # l above j
                    ok = d[l - 1] >= hi
                else:
                    ok = not lo <= d[l - 1] <= hi
                if not ok:
                    break
            if ok:
                out.append((i, j))
    return out


def apply_transposition(d, t: Transposition) -> tuple[int, ...]:
    i, j = t
    out = list(d)
    out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
    return tuple(out)


# -- bubble sort ------------------------------------------------------------------


def bubble_sort_step(base: AntilinearizedPoset, d, k: int):
    """One pass fixing dominance at position k.  Returns (composition, swaps).

    While position k breaks dominance, the entry d_k is swapped with the entry
    at position j, where j is the largest position carrying a maximal element
    among those elements before k whose value is smaller than d_k.
    """
    d = bruhat.check_composition(d)
    _check_length(base, d)
    if not is_admissible(base, d):
        raise DominanceError(f"{d} is not admissible")
    if not is_dominant_upto(base, d, k - 1):
        raise DominanceError(f"{d} is not dominant up to position {k - 1}")
    out = list(d)
    swaps: list[Transposition] = []
    while not is_position_dominant(base, out, k):
        small = {s for s in base.elements if s < k and out[s - 1] < out[k - 1]}
        maxima = [s for s in small if not (base.above[s] & small)]
        j = max(maxima)
        out[j - 1], out[k - 1] = out[k - 1], out[j - 1]
        swaps.append((j, k))
    return tuple(out), swaps


def bubble_sort(base: AntilinearizedPoset, d):
    """Sort an admissible composition into the dominant one below it.

    Returns (dominant composition, swap trace).  The result is a nonincreasing
    monotone idempotent for the Bruhat order.
    """
    d = bruhat.check_composition(d)
    if not is_admissible(base, d):
        raise DominanceError(f"{d} is not admissible")
    swaps: list[Transposition] = []
    out = tuple(d)
    for k in range(1, base.m + 1):
        out, step_swaps = bubble_sort_step(base, out, k)
        swaps.extend(step_swaps)
    return out, swaps


def bubble_sort_op(linbase: LinearizedPoset, d):
    """Opposite bubble sort for a linearized base: a nondecreasing idempotent.

    Implemented through the opposite anti-linearization: reverse the
    composition, sort, reverse back.
    """
    d = bruhat.check_composition(d)
    flipped = linbase.flip()
    out, swaps = bubble_sort(flipped, d[::-1])
    n = linbase.n
    back = [(n - k + 1, n - j + 1) for j, k in swaps]
    return out[::-1], back


# -- the poset of dominant compositions --------------------------------------------


@dataclass(frozen=True)
class DominantSet:
    """All dominant compositions with a given value multiset, Bruhat-ordered."""

    base: AntilinearizedPoset
    lam: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]
    poset: FinitePoset
    edge_labels: dict = field(compare=False, hash=False)

    def __len__(self) -> int:
        return len(self.elements)


def _monotone_assignments(base: AntilinearizedPoset, values: tuple[int, ...]):
    """All dominant compositions with the given value multiset on the elements."""
    for perm in set(itertools.permutations(values)):
        d = [0] * base.m
        for p, v in zip(base.elements, perm):
            d[p - 1] = v
        d = tuple(d)
        if all(
            all(d[s - 1] >= d[p - 1] for s in base.above[p]) for p in base.elements
        ):
            yield d


def dominant_set(base: AntilinearizedPoset, lam) -> DominantSet:
    """Build the poset of dominant compositions with nonzero values lam."""
    lam = bruhat.check_partition(lam)
    k = len(base.elements)
    if bruhat.partition_length(lam) > k:
        return DominantSet(base, lam, (), FinitePoset((), ()), {})
    values = bruhat.pad_partition(lam, k)
    elements = sorted(_monotone_assignments(base, values))
    edges = []
    labels = {}
    for d in elements:
        for t in minimal_disorders(base, d):
            e = apply_transposition(d, t)
            edges.append((d, e))
            labels[(d, e)] = t
    poset = transitive_reduce(edges, elements)
    if set(poset.covers) != set(edges):
        raise AssertionError(
            "minimal-disorder edge implied by others; Hasse assumption violated"
        )
    return DominantSet(base, tuple(lam), tuple(elements), poset, labels)


def bbs_fibers(base: AntilinearizedPoset, lam) -> dict[tuple, frozenset]:
    """Partition of the admissible compositions into bubble-sort fibers."""
    lam = bruhat.check_partition(lam)
    if bruhat.partition_length(lam) > len(base.elements):
        return {}
    orb = bruhat.orbit(lam, base.m)
    fibers: dict[tuple, set] = {}
    for d in orb.elements:
        if is_admissible(base, d):
            out, _ = bubble_sort(base, d)
            fibers.setdefault(out, set()).add(d)
    return {k: frozenset(v) for k, v in fibers.items()}


def is_regular_for(base: AntilinearizedPoset, lam) -> bool:
    """True when the value multiset on the elements has no repeats."""
    values = bruhat.pad_partition(lam, len(base.elements))
    return len(set(values)) == len(values)


@dataclass(frozen=True)
class PropertyReport:
    regular: bool
    bounded: bool
    graded: bool
    subthin: bool | None
    thin: bool | None
    el_shellable: bool
    mobius_values: tuple[int, ...]
    mobius_formula_ok: bool | None

    def all_structure_flags(self) -> bool:
        return bool(self.bounded and self.graded and self.subthin and self.el_shellable)


def property_report(ds: DominantSet) -> PropertyReport:
    """Structure flags and Möbius diagnostics for a dominant-composition poset."""
    poset = ds.poset
    bounded = poset.is_bounded()
    graded = poset.is_graded()
    thin = subthin = None
    if graded:
        thin, subthin, _ = poset.thinness()
    el_ok, _ = poset.is_el_labelling(ds.edge_labels, key=bruhat.el_label_key)
    values = set()
    mobius_ok: bool | None = None
    regular = is_regular_for(ds.base, ds.lam)
    pair_mobius = {}
    for x in ds.elements:
        for y in ds.elements:
            if poset.leq(x, y):
                mu = poset.mobius(x, y)
                pair_mobius[(x, y)] = mu
                values.add(mu)
    if regular and ds.elements:
        mobius_ok = _check_mobius_formula(ds, pair_mobius)
    return PropertyReport(
        regular=regular,
        bounded=bounded,
        graded=graded,
        subthin=subthin,
        thin=thin,
        el_shellable=el_ok,
        mobius_values=tuple(sorted(values)),
        mobius_formula_ok=mobius_ok,
    )


def _check_mobius_formula(ds: DominantSet, pair_mobius) -> bool:
    """For regular lam: mu = +-1 on intervals that stay inside the dominant set,
    0 as soon as the ambient orbit interval contains a non-dominant composition."""
    orb = bruhat.orbit(ds.lam, ds.base.m)
    ranks = {d: bruhat.length(d) for d in orb.elements}
    for (x, y), mu in pair_mobius.items():
        if x == y:
            if mu != 1:
                return False
            continue
        full = all(
            is_dominant(ds.base, z)
            for z in orb.elements
            if ranks[x] < ranks[z] < ranks[y]
            and bruhat.bruhat_leq(x, z)
            and bruhat.bruhat_leq(z, y)
        )
        expected = (-1) ** (ranks[y] - ranks[x]) if full else 0
        if mu != expected:
            return False
    return True


def check_parabolic_square(base: AntilinearizedPoset, lam, k: int) -> bool:
    """Exhaustively verify that the k-th bubble-sort pass commutes with the
    parabolic projection and its minimal lift.

    The check runs on the surjective core of the base (dominant compositions
    are zero off the elements, so nothing is lost); a position k outside the
    elements contributes an identity pass.
    """
    lam = bruhat.check_partition(lam)
    core, relabel = base.restricted()
    if k not in base._element_set:
        return True
    k = relabel[k]
    m = core.m
    if bruhat.partition_length(lam) > m:
        return True
    padded = bruhat.pad_partition(lam, m)
    reg = tuple(v + d for v, d in zip(padded, bruhat.staircase_delta(m)))

    def ad_set(values):
        orb = bruhat.orbit(values, m)
        return [
            d
            for d in orb.elements
            if is_admissible(core, d) and is_dominant_upto(core, d, k - 1)
        ]

    for d in ad_set(reg):
        left = bruhat.pi_lambda(bubble_sort_step(core, d, k)[0], lam)
        right = bubble_sort_step(core, bruhat.pi_lambda(d, lam), k)[0]
        if left != right:
            return False
    for b in ad_set(padded):
        left = bruhat.psi_plus(bubble_sort_step(core, b, k)[0], lam)
        right = bubble_sort_step(core, bruhat.psi_plus(b, lam), k)[0]
        if left != right:
            return False
    return True
