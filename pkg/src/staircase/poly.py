"""Exact sparse polynomials in two alphabets, key polynomials and atoms.

Coefficients are Python integers; exponent vectors are dense tuples over the
variables x_1..x_nx followed by y_1..y_ny.  An optional total-degree cap is
carried by the polynomial and preserved by arithmetic (products drop
over-degree terms eagerly).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from . import bruhat


class AlphabetError(ValueError):
    pass


def _min_cap(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class MultiPoly:
    """Sparse exact-integer polynomial in x_1..x_nx, y_1..y_ny."""

    __slots__ = ("nx", "ny", "terms", "max_degree")

    def __init__(self, nx: int, ny: int, terms=None, max_degree: int | None = None):
        self.nx = nx
        self.ny = ny
        self.max_degree = max_degree
        clean: dict[tuple[int, ...], int] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != nx + ny:
                raise AlphabetError(f"exponent vector {exps} has wrong length")
            if coeff == 0:
                continue
            if max_degree is not None and sum(exps) > max_degree:
                continue
            clean[tuple(exps)] = coeff
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, nx: int, ny: int, max_degree: int | None = None) -> "MultiPoly":
        return cls(nx, ny, {}, max_degree)

    @classmethod
    def one(cls, nx: int, ny: int, max_degree: int | None = None) -> "MultiPoly":
        return cls(nx, ny, {(0,) * (nx + ny): 1}, max_degree)

    @classmethod
    def x_monomial(cls, exps, nx: int | None = None) -> "MultiPoly":
        exps = tuple(exps)
        nx = len(exps) if nx is None else nx
        return cls(nx, 0, {exps + (0,) * (nx - len(exps)): 1})

    @classmethod
    def y_monomial(cls, exps, ny: int | None = None) -> "MultiPoly":
        exps = tuple(exps)
        ny = len(exps) if ny is None else ny
        return cls(0, ny, {exps + (0,) * (ny - len(exps)): 1})

    # -- ring structure ---------------------------------------------------------

    def _require_same_alphabet(self, other: "MultiPoly"):
        if (self.nx, self.ny) != (other.nx, other.ny):
            raise AlphabetError(
                f"alphabet mismatch: ({self.nx},{self.ny}) vs ({other.nx},{other.ny})"
            )

    def promote(self, nx: int, ny: int) -> "MultiPoly":
        """Embed into a larger alphabet (pad x- and y-exponents with zeros)."""
        if nx < self.nx or ny < self.ny:
            raise AlphabetError("cannot shrink an alphabet")
        if (nx, ny) == (self.nx, self.ny):
            return self
        pad_x = nx - self.nx
        terms = {
            e[: self.nx] + (0,) * pad_x + e[self.nx:] + (0,) * (ny - self.ny): c
            for e, c in self.terms.items()
        }
        return MultiPoly(nx, ny, terms, self.max_degree)

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly(self.nx, self.ny, {(0,) * (self.nx + self.ny): other})
        self._require_same_alphabet(other)
        cap = _min_cap(self.max_degree, other.max_degree)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.nx, self.ny, terms, cap)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(
            self.nx, self.ny, {e: -c for e, c in self.terms.items()}, self.max_degree
        )

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultiPoly) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MultiPoly.zero(self.nx, self.ny, self.max_degree)
            return MultiPoly(
                self.nx,
                self.ny,
                {e: c * other for e, c in self.terms.items()},
                self.max_degree,
            )
        nx, ny = max(self.nx, other.nx), max(self.ny, other.ny)
        a, b = self.promote(nx, ny), other.promote(nx, ny)
        cap = _min_cap(self.max_degree, other.max_degree)
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in a.terms.items():
            d1 = sum(e1)
            for e2, c2 in b.terms.items():
                if cap is not None and d1 + sum(e2) > cap:
                    continue
                e = tuple(u + v for u, v in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(nx, ny, terms, cap)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == ({} if other == 0 else {(0,) * (self.nx + self.ny): other})
        return (
            isinstance(other, MultiPoly)
            and (self.nx, self.ny) == (other.nx, other.ny)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nx, self.ny, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries -------------------------------------------------------------------

    def coefficient(self, x_exps=(), y_exps=()) -> int:
        e = tuple(x_exps) + (0,) * (self.nx - len(tuple(x_exps)))
        e += tuple(y_exps) + (0,) * (self.ny - len(tuple(y_exps)))
        return self.terms.get(e, 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def truncate(self, max_degree: int) -> "MultiPoly":
        return MultiPoly(self.nx, self.ny, self.terms, max_degree)

    def uncapped(self) -> "MultiPoly":
        return MultiPoly(self.nx, self.ny, self.terms, None)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def swap_x(self, i: int) -> "MultiPoly":
        """Exchange the variables x_i and x_{i+1} (1-based)."""
        if not 1 <= i < self.nx:
            raise AlphabetError(f"cannot swap x_{i}, x_{i + 1} with nx = {self.nx}")
        terms = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i - 1], f[i] = f[i], f[i - 1]
            terms[tuple(f)] = c
        return MultiPoly(self.nx, self.ny, terms, self.max_degree)

    def first_difference(self, other: "MultiPoly"):
        """(monomial string, self coeff, other coeff) or None when equal."""
        nx, ny = max(self.nx, other.nx), max(self.ny, other.ny)
        a, b = self.promote(nx, ny), other.promote(nx, ny)
        for e in sorted(set(a.terms) | set(b.terms)):
            ca, cb = a.terms.get(e, 0), b.terms.get(e, 0)
            if ca != cb:
                return _monomial_str(e, nx, ny), ca, cb
        return None

    def __repr__(self):
        return f"MultiPoly(nx={self.nx}, ny={self.ny}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = _monomial_str(e, self.nx, self.ny)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _monomial_str(e: tuple[int, ...], nx: int, ny: int) -> str:
    factors = []
    for idx, exp in enumerate(e):
        if exp == 0:
            continue
        name = f"x{idx + 1}" if idx < nx else f"y{idx - nx + 1}"
        factors.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(factors) if factors else "1"


# -- Demazure operators -------------------------------------------------------------


def demazure_pi(i: int, f: MultiPoly) -> MultiPoly:
    """The isobaric divided difference (x_i f - x_{i+1} s_i f) / (x_i - x_{i+1}).

    Evaluated termwise through the exact closed form on monomials, so the
    division never leaves the polynomial ring.
    """
    if not 1 <= i < f.nx:
        raise AlphabetError(f"pi_{i} needs at least {i + 1} x-variables, have {f.nx}")
    terms: dict[tuple[int, ...], int] = {}

    def bump(e, c):
        if c:
            terms[e] = terms.get(e, 0) + c
            if terms[e] == 0:
                del terms[e]

    a, b = i - 1, i
    for e, c in f.terms.items():
        p, q = e[a], e[b]
        base = list(e)
        if p >= q:
            for k in range(q, p + 1):
                base[a], base[b] = k, p + q - k
                bump(tuple(base), c)
        else:
            for k in range(p + 1, q):
                base[a], base[b] = k, p + q - k
                bump(tuple(base), -c)
    return MultiPoly(f.nx, f.ny, terms, f.max_degree)


def demazure_pibar(i: int, f: MultiPoly) -> MultiPoly:
    """The complementary operator pi_i - id."""
    return demazure_pi(i, f) - f


@lru_cache(maxsize=None)
def _key_atom_cached(nu: tuple[int, ...], n: int, atomic: bool) -> MultiPoly:
    for i in range(n - 1):
        if nu[i] < nu[i + 1]:
            swapped = list(nu)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            inner = _key_atom_cached(tuple(swapped), n, atomic)
            op = demazure_pibar if atomic else demazure_pi
            return op(i + 1, inner)
    return MultiPoly.x_monomial(nu, n)


def key_polynomial(nu, n: int | None = None) -> MultiPoly:
    """Key polynomial in x_1..x_n: x^nu for dominant nu, pi-recursion otherwise."""
    nu = bruhat.check_composition(nu)
    n = len(nu) if n is None else n
    if len(nu) > n:
        raise ValueError(f"composition {nu} longer than variable count {n}")
    return _key_atom_cached(nu + (0,) * (n - len(nu)), n, False)


def atom(nu, n: int | None = None) -> MultiPoly:
    """Demazure atom in x_1..x_n, via the pibar-recursion."""
    nu = bruhat.check_composition(nu)
    n = len(nu) if n is None else n
    if len(nu) > n:
        raise ValueError(f"composition {nu} longer than variable count {n}")
    return _key_atom_cached(nu + (0,) * (n - len(nu)), n, True)


def _to_opposite(f: MultiPoly, m: int) -> MultiPoly:
    """Reverse the x-variable order and move the result to the y-alphabet."""
    terms = {(e[::-1]): c for e, c in f.terms.items()}
    return MultiPoly(0, m, terms, f.max_degree)


def opposite_key(nu, m: int | None = None) -> MultiPoly:
    """Opposite key polynomial in y_1..y_m: reverse the weight, then the variables."""
    nu = bruhat.check_composition(nu)
    m = len(nu) if m is None else m
    padded = nu + (0,) * (m - len(nu))
    return _to_opposite(key_polynomial(padded[::-1], m), m)


def opposite_atom(nu, m: int | None = None) -> MultiPoly:
    """Opposite Demazure atom in y_1..y_m."""
    nu = bruhat.check_composition(nu)
    m = len(nu) if m is None else m
    padded = nu + (0,) * (m - len(nu))
    return _to_opposite(atom(padded[::-1], m), m)


def schur_polynomial(lam, n: int) -> MultiPoly:
    """Schur polynomial as the key polynomial of the antidominant weight."""
    padded = bruhat.pad_partition(lam, n)
    return key_polynomial(padded[::-1], n)


def cauchy_product_lhs(s, degree: int) -> MultiPoly:
    """Product of geometric series 1/(1 - x_i y_j) over the cells of a shape,
    truncated so that terms keep x-degree (equivalently y-degree) <= degree."""
    if degree < 0:
        raise ValueError("truncation degree must be nonnegative")
    nx, ny = s.n, s.m
    # every factor is bihomogeneous, so capping total degree at 2*degree
    # keeps exactly the terms with x-degree <= degree
    result = MultiPoly.one(nx, ny, 2 * degree)
    for i, j in s.cells():
        terms = {}
        for k in range(degree + 1):
            e = [0] * (nx + ny)
            e[i - 1] = k
            e[nx + j - 1] = k
            terms[tuple(e)] = 1
        factor = MultiPoly(nx, ny, terms, 2 * degree)
        result = result * factor
    return result
