"""Finite posets: Hasse diagrams, gradedness, Möbius functions, EL-labellings."""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterable, Mapping, Sequence


class PosetError(ValueError):
    """Raised on invalid poset input (cycles, undefined queries)."""


class CycleError(PosetError):
    def __init__(self, cycle: Sequence[Hashable]):
        self.cycle = list(cycle)
        chain = " < ".join(repr(x) for x in cycle)
        super().__init__(f"relation contains a cycle: {chain} < {cycle[0]!r}")


def _element_key(x) -> str:
    return str(x)


class FinitePoset:
    """A finite poset stored via its covering relation.

    ``covers`` holds pairs ``(x, y)`` meaning ``x`` is covered by ``y``
    (``x`` below ``y``, nothing in between).  The constructor assumes the
    input already is a transitive reduction; use :func:`transitive_reduce`
    to build a poset from an arbitrary acyclic relation.
    """

    def __init__(self, elements: Iterable[Hashable], covers: Iterable[tuple]):
        self.elements = tuple(sorted(set(elements), key=_element_key))
        self._index = {x: i for i, x in enumerate(self.elements)}
        self.covers = frozenset((x, y) for x, y in covers)
        for x, y in self.covers:
            if x not in self._index or y not in self._index:
                raise PosetError(f"cover ({x!r}, {y!r}) uses unknown element")
        n = len(self.elements)
        self._up_adj: list[list[int]] = [[] for _ in range(n)]
        self._down_adj: list[list[int]] = [[] for _ in range(n)]
        for x, y in self.covers:
            self._up_adj[self._index[x]].append(self._index[y])
            self._down_adj[self._index[y]].append(self._index[x])
        for adj in self._up_adj:
            adj.sort()
        for adj in self._down_adj:
            adj.sort()
        self._strict_up: list[frozenset[int]] = [self._reach(i, self._up_adj) for i in range(n)]
        self._check_reduced()
        self._mobius_cache: dict[tuple[int, int], int] = {}

    # -- construction helpers ------------------------------------------------

    def _reach(self, start: int, adj: list[list[int]]) -> frozenset[int]:
        seen: set[int] = set()
        stack = list(adj[start])
        while stack:
            v = stack.pop()
            if v not in seen:
                seen.add(v)
                stack.extend(adj[v])
        if start in seen:
            raise CycleError([self.elements[start]])
        return frozenset(seen)

    def _check_reduced(self) -> None:
        for x, y in self.covers:
            i, j = self._index[x], self._index[y]
            for k in self._up_adj[i]:
                if k != j and j in self._strict_up[k]:
                    raise PosetError(f"cover ({x!r}, {y!r}) is implied by other covers")

    # -- basic queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinitePoset)
            and self.elements == other.elements
            and self.covers == other.covers
        )

    def __hash__(self) -> int:
        return hash((self.elements, self.covers))

    def __repr__(self) -> str:
        return f"FinitePoset({len(self.elements)} elements, {len(self.covers)} covers)"

    def leq(self, x, y) -> bool:
        """True iff ``x`` is less than or equal to ``y``."""
        i, j = self._index[x], self._index[y]
        return i == j or j in self._strict_up[i]

    def lt(self, x, y) -> bool:
        return self._index[y] in self._strict_up[self._index[x]]

    def upper_covers(self, x) -> list:
        return [self.elements[j] for j in self._up_adj[self._index[x]]]

    def lower_covers(self, x) -> list:
        return [self.elements[j] for j in self._down_adj[self._index[x]]]

    def minimal_elements(self) -> list:
        return [x for x in self.elements if not self._down_adj[self._index[x]]]

    def maximal_elements(self) -> list:
        return [x for x in self.elements if not self._up_adj[self._index[x]]]

    def interval(self, x, y) -> list:
        """The closed interval [x, y], empty when x is not below y."""
        i, j = self._index[x], self._index[y]
        if i == j:
            return [x]
        if j not in self._strict_up[i]:
            return []
        mid = [k for k in self._strict_up[i] if j in self._strict_up[k]]
        return [x] + [self.elements[k] for k in sorted(mid)] + [y]

    def open_interval(self, x, y) -> list:
        inner = self.interval(x, y)
        return [z for z in inner if z != x and z != y]

    def comparable_pairs(self) -> Iterable[tuple]:
        """All pairs (x, y) with x strictly below y."""
        for i, x in enumerate(self.elements):
            for j in sorted(self._strict_up[i]):
                yield x, self.elements[j]

    # -- boundedness / gradedness ---------------------------------------------

    def bottom(self):
        mins = self.minimal_elements()
        if len(mins) != 1:
            raise PosetError(f"poset has {len(mins)} minimal elements, no bottom")
        return mins[0]

    def top(self):
        maxs = self.maximal_elements()
        if len(maxs) != 1:
            raise PosetError(f"poset has {len(maxs)} maximal elements, no top")
        return maxs[0]

    def is_bounded(self) -> bool:
        if not self.elements:
            return False
        return len(self.minimal_elements()) == 1 and len(self.maximal_elements()) == 1

    def _chain_lengths_from(self, i: int) -> tuple[dict[int, int], dict[int, int]]:
        """Longest and shortest cover-path lengths from node i to nodes above it."""
        filt = self._strict_up[i]
        # topological order of the filter: sort by up-set size, largest first
        topo = sorted(filt, key=lambda k: -len(self._strict_up[k]))
        longest = {i: 0}
        shortest = {i: 0}
        for v in topo:
            preds = [u for u in self._down_adj[v] if u == i or u in filt]
            ls = [longest[u] for u in preds if u in longest]
            if ls:
                longest[v] = max(ls) + 1
                shortest[v] = min(shortest[u] for u in preds if u in shortest) + 1
        longest.pop(i)
        shortest.pop(i)
        return longest, shortest

    def is_graded(self) -> bool:
        """True iff within every interval all maximal chains share one length."""
        for i in range(len(self.elements)):
            longest, shortest = self._chain_lengths_from(i)
            for j in self._strict_up[i]:
                if longest[j] != shortest[j]:
                    return False
        return True

    def rank_function(self) -> dict:
        """Ranks for a bounded graded poset, normalized to rank(bottom) = 0."""
        if not self.is_bounded():
            raise PosetError("rank requires a bounded poset")
        if not self.is_graded():
            raise PosetError("rank requires a graded poset")
        bot = self.bottom()
        longest, _ = self._chain_lengths_from(self._index[bot])
        ranks = {bot: 0}
        for j, r in longest.items():
            ranks[self.elements[j]] = r
        return ranks

    def rank(self, x) -> int:
        return self.rank_function()[x]

    def structure_report(self) -> dict:
        report = {"bounded": self.is_bounded(), "graded": self.is_graded()}
        if report["bounded"] and report["graded"]:
            report["rank"] = self.rank(self.top())
        return report

    # -- thinness --------------------------------------------------------------

    def thinness(self) -> tuple[bool, bool, tuple | None]:
        """(is_thin, is_subthin, witness) over all length-2 intervals.

        The witness is an interval (x, y) with middle count not equal to 2
        (for thin) or above 2 (for subthin).  Requires a graded poset.
        """
        if not self.is_graded():
            raise PosetError("thinness requires a graded poset")
        thin, subthin, witness = True, True, None
        for i, x in enumerate(self.elements):
            longest, _ = self._chain_lengths_from(i)
            for j, length in longest.items():
                if length != 2:
                    continue
                y = self.elements[j]
                middle = len(self.open_interval(x, y))
                if middle > 2:
                    return False, False, (x, y)
                if middle != 2:
                    thin = False
                    witness = witness or (x, y)
        return thin, subthin, witness if not thin else None

    def is_thin(self) -> bool:
        return self.thinness()[0]

    def is_subthin(self) -> bool:
        return self.thinness()[1]

    # -- Möbius function ---------------------------------------------------------

    def mobius(self, x, y) -> int:
        """μ(x, y) by the recursive definition, memoized per poset."""
        i, j = self._index[x], self._index[y]
        return self._mobius_idx(i, j)

    def _mobius_idx(self, i: int, j: int) -> int:
        if i == j:
            return 1
        if j not in self._strict_up[i]:
            return 0
        key = (i, j)
        if key not in self._mobius_cache:
            below = [k for k in self._strict_up[i] if j in self._strict_up[k]]
            total = 1  # μ(x, x)
            for k in below:
                total += self._mobius_idx(i, k)
            self._mobius_cache[key] = -total
        return self._mobius_cache[key]

    def mobius_via_chains(self, x, y) -> int:
        """Signed chain count Σ_k (-1)^k #{x = x0 < ... < xk = y}.

        Independent of :meth:`mobius`: counts chains of each length by
        stepping through the strict order relation of the interval.
        """
        i, j = self._index[x], self._index[y]
        if i == j:
            return 1
        if j not in self._strict_up[i]:
            return 0
        inner = [k for k in self._strict_up[i] if j in self._strict_up[k]]
        nodes = [i] + inner + [j]
        pos = {k: t for t, k in enumerate(nodes)}
        succ: list[list[int]] = []
        for k in nodes:
            succ.append([pos[l] for l in self._strict_up[k] if l in pos])
        counts = [0] * len(nodes)
        counts[0] = 1
        total = 0
        sign = -1
        while any(counts):
            nxt = [0] * len(nodes)
            for t, c in enumerate(counts):
                if c:
                    for u in succ[t]:
                        nxt[u] += c
            total += sign * nxt[-1]
            sign = -sign
            counts = nxt
            counts[-1] = 0  # chains must stop at y; do not extend past it
        return total

    # -- chains and EL-labellings -----------------------------------------------

    def maximal_chains(self, x, y) -> Iterable[tuple]:
        """All maximal chains of the interval [x, y], as element tuples."""
        i, j = self._index[x], self._index[y]
        if i == j:
            yield (x,)
            return
        if j not in self._strict_up[i]:
            return
        allowed = set(k for k in self._strict_up[i] if j in self._strict_up[k])
        allowed.add(j)

        def walk(k: int, prefix: list[int]):
            if k == j:
                yield tuple(self.elements[t] for t in prefix)
                return
            for u in self._up_adj[k]:
                if u in allowed:
                    prefix.append(u)
                    yield from walk(u, prefix)
                    prefix.pop()

        yield from walk(i, [i])

    def is_el_labelling(
        self,
        labels: Mapping[tuple, Hashable],
        key: Callable | None = None,
    ) -> tuple[bool, tuple | None]:
        """Check the EL property of an edge labelling.

        ``labels`` maps each cover (x, y) to a label; ``key`` turns labels
        into comparable sort keys (defaults to identity).  Returns
        ``(ok, witness)`` where a witness is the first interval violating
        either uniqueness of the increasing maximal chain or its
        lexicographic minimality.
        """
        if key is None:
            key = lambda label: label
        missing = self.covers - set(labels)
        if missing:
            raise PosetError(f"labelling misses covers: {sorted(missing, key=_element_key)[:3]}")
        for x, y in self.comparable_pairs():
            if not self._el_interval_ok(x, y, labels, key):
                return False, (x, y)
        return True, None

    def _el_interval_ok(self, x, y, labels, key) -> bool:
        i, j = self._index[x], self._index[y]
        allowed = set(k for k in self._strict_up[i] if j in self._strict_up[k])
        allowed.add(i)
        allowed.add(j)

        def edge_key(a: int, b: int):
            return key(labels[(self.elements[a], self.elements[b])])

        inc_cache: dict[tuple, int] = {}

        def count_inc(k: int, last) -> int:
            if k == j:
                return 1
            state = (k, last)
            if state not in inc_cache:
                total = 0
                for u in self._up_adj[k]:
                    if u in allowed:
                        lab = edge_key(k, u)
                        if last is None or lab > last:
                            total += count_inc(u, lab)
                inc_cache[state] = total
            return inc_cache[state]

        if count_inc(i, None) != 1:
            return False

        # reconstruct the unique increasing chain's label word
        word = []
        k, last = i, None
        while k != j:
            for u in self._up_adj[k]:
                if u in allowed:
                    lab = edge_key(k, u)
                    if (last is None or lab > last) and count_inc(u, lab) > 0:
                        word.append(lab)
                        k, last = u, lab
                        break
            else:  # pragma: no cover - unreachable when count == 1
                return False

        lex_cache: dict[int, tuple] = {}

        def lexmin(k: int) -> tuple:
            if k == j:
                return ()
            if k not in lex_cache:
                lex_cache[k] = min(
                    (edge_key(k, u),) + lexmin(u)
                    for u in self._up_adj[k]
                    if u in allowed
                )
            return lex_cache[k]

        return tuple(word) == lexmin(i)

    # -- linear extensions ---------------------------------------------------------

    def count_linear_extensions(self) -> int:
        """Number of linear extensions, by down-set recursion."""
        n = len(self.elements)
        full = frozenset(range(n))
        cache: dict[frozenset, int] = {frozenset(): 1}

        def count(remaining: frozenset) -> int:
            if remaining not in cache:
                total = 0
                for k in remaining:
                    if all(d not in remaining for d in self._down_adj[k]):
                        total += count(remaining - {k})
                cache[remaining] = total
            return cache[remaining]

        return count(full)

    # -- export ----------------------------------------------------------------------

    def to_dot(
        self,
        labels: Mapping[tuple, Hashable] | None = None,
        highlight: Iterable | None = None,
        node_label: Callable | None = None,
        name: str = "poset",
    ) -> str:
        """Graphviz DOT text, edges oriented small -> large, stable ordering."""
        node_label = node_label or str
        marked = set(highlight or ())
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for x in self.elements:
            attrs = [f'label="{node_label(x)}"']
            if x in marked:
                attrs.append('style=filled, fillcolor="orange"')
            lines.append(f'  "{x}" [{", ".join(attrs)}];')
        for x, y in sorted(self.covers, key=lambda e: (str(e[0]), str(e[1]))):
            attr = ""
            if labels is not None and (x, y) in labels:
                attr = f' [label="{labels[(x, y)]}"]'
            lines.append(f'  "{x}" -> "{y}"{attr};')
        lines.append("}")
        return "\n".join(lines)


def transitive_reduce(pairs: Iterable[tuple], elements: Iterable = ()) -> FinitePoset:
    """Build a :class:`FinitePoset` from an arbitrary acyclic relation.

    Raises :class:`CycleError` naming a cycle when the input is not acyclic.
    """
    pairs = set((x, y) for x, y in pairs if x != y)
    elems = set(elements)
    for x, y in pairs:
        elems.add(x)
        elems.add(y)
    order = sorted(elems, key=_element_key)
    index = {x: i for i, x in enumerate(order)}
    n = len(order)
    adj: list[set[int]] = [set() for _ in range(n)]
    for x, y in pairs:
        adj[index[x]].add(index[y])

    # detect cycles, computing reachability along the way
    reach: list[frozenset[int] | None] = [None] * n
    state = [0] * n  # 0 unvisited, 1 on stack, 2 done

    def visit(v: int, stack: list[int]):
        state[v] = 1
        stack.append(v)
        acc: set[int] = set()
        for w in adj[v]:
            if state[w] == 1:
                cycle = stack[stack.index(w):]
                raise CycleError([order[k] for k in cycle])
            if state[w] == 0:
                visit(w, stack)
            acc.add(w)
            acc |= reach[w]  # type: ignore[operator]
        reach[v] = frozenset(acc)
        state[v] = 2
        stack.pop()

    for v in range(n):
        if state[v] == 0:
            visit(v, [])

    covers = []
    for v in range(n):
        for w in reach[v]:  # type: ignore[union-attr]
            implied = any(w in reach[u] for u in reach[v] if u != w)  # type: ignore[operator]
            if not implied:
                covers.append((order[v], order[w]))
    return FinitePoset(order, covers)
