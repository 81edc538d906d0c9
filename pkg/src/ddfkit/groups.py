"""Finite groups with exact element arithmetic.

Three concrete representations: direct products of cyclic rings, a twisted
(non-commutative) product on triples over Z_m, and explicit Cayley tables.
Elements are tuples of non-negative integer coordinates; the canonical
order used everywhere in the library is lexicographic on those tuples,
with the identity (all zeros) first.

All differences in this library are right differences: diff(a, b) = a + (-b).
"""

from __future__ import annotations

import os
from itertools import product
from math import prod

from .errors import InvalidElement, NotNormal, TooLarge

Element = tuple[int, ...]

DEFAULT_MAX_ORDER = 10**6


def enumeration_bound() -> int:
    """Largest group order full enumeration will attempt.

    Overridable through the DDF_MAX_ORDER environment variable.
    """
    raw = os.environ.get("DDF_MAX_ORDER")
    return int(raw) if raw else DEFAULT_MAX_ORDER


class Group:
    """Shared interface for the concrete group representations."""

    order: int

    def add(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def neg(self, a: Element) -> Element:
        raise NotImplementedError

    @property
    def zero(self) -> Element:
        raise NotImplementedError

    def check(self, a: Element) -> Element:
        """Validate arity and coordinate ranges; returns the element."""
        raise NotImplementedError

    def _build_elements(self) -> list[Element]:
        raise NotImplementedError

    def is_abelian(self) -> bool:
        raise NotImplementedError

    def sub(self, a: Element, b: Element) -> Element:
        """Right difference a + (-b), the library-wide convention."""
        return self.add(a, self.neg(b))

    def elements(self) -> list[Element]:
        """All elements in canonical order, identity first."""
        cached = getattr(self, "_elements", None)
        if cached is None:
            if self.order > enumeration_bound():
                raise TooLarge(
                    f"order {self.order} exceeds enumeration bound {enumeration_bound()}"
                )
            cached = self._build_elements()
            self._elements = cached
        return cached

    def nonzero(self) -> list[Element]:
        return self.elements()[1:]

    def scalar(self, t: int, a: Element) -> Element:
        """t-fold sum a + a + ... + a (t >= 0)."""
        if t < 0:
            raise ValueError("scalar multiple must be non-negative")
        acc = self.zero
        base = self.check(a)
        while t:
            if t & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            t >>= 1
        return acc

    def element_order(self, a: Element) -> int:
        """Least t >= 1 with t-fold sum of a equal to the identity."""
        a = self.check(a)
        cur = a
        t = 1
        zero = self.zero
        while cur != zero:
            cur = self.add(cur, a)
            t += 1
            if t > self.order:
                raise RuntimeError("element order exceeded group order")
        return t


class AbelianProduct(Group):
    """Direct product Z_{m_1} x ... x Z_{m_n} with componentwise addition.

    An empty modulus list gives the trivial group (order 1, elements are
    the empty tuple).  Each modulus must be at least 2.
    """

    def __init__(self, moduli) -> None:
        moduli = tuple(int(m) for m in moduli)
        if any(m < 2 for m in moduli):
            raise ValueError("every modulus must be >= 2")
        self.moduli = moduli
        self.order = prod(moduli)

    def __repr__(self) -> str:
        return f"AbelianProduct({list(self.moduli)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianProduct) and self.moduli == other.moduli

    def __hash__(self) -> int:
        return hash(("abelian", self.moduli))

    @property
    def zero(self) -> Element:
        return (0,) * len(self.moduli)

    def check(self, a: Element) -> Element:
        if len(a) != len(self.moduli):
            raise InvalidElement(f"expected {len(self.moduli)} coordinates, got {len(a)}")
        for x, m in zip(a, self.moduli):
            if not 0 <= x < m:
                raise InvalidElement(f"coordinate {x} out of range for modulus {m}")
        return tuple(a)

    def add(self, a: Element, b: Element) -> Element:
        self.check(a)
        self.check(b)
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Element) -> Element:
        self.check(a)
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def is_abelian(self) -> bool:
        return True

    def _build_elements(self) -> list[Element]:
        return list(product(*(range(m) for m in self.moduli)))

    def index_of(self, a: Element) -> int:
        self.check(a)
        idx = 0
        for x, m in zip(a, self.moduli):
            idx = idx * m + x
        return idx

    def element_at(self, idx: int) -> Element:
        coords = []
        for m in reversed(self.moduli):
            coords.append(idx % m)
            idx //= m
        return tuple(reversed(coords))


class HeisenbergGroup(Group):
    """Triples over Z_m under (x1,y1,z1) + (x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2).

    Non-commutative for every m >= 2: (0,1,0) + (1,0,0) = (1,1,0) but
    (1,0,0) + (0,1,0) = (1,1,1).  The inverse is -(x,y,z) = (-x,-y,-z+xy),
    read off symbolically from the operation.
    """

    def __init__(self, m: int) -> None:
        m = int(m)
        if m < 2:
            raise ValueError("modulus must be >= 2")
        self.m = m
        self.order = m**3

    def __repr__(self) -> str:
        return f"HeisenbergGroup({self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, HeisenbergGroup) and self.m == other.m

    def __hash__(self) -> int:
        return hash(("heisenberg", self.m))

    @property
    def zero(self) -> Element:
        return (0, 0, 0)

    def check(self, a: Element) -> Element:
        if len(a) != 3:
            raise InvalidElement(f"expected 3 coordinates, got {len(a)}")
        m = self.m
        for x in a:
            if not 0 <= x < m:
                raise InvalidElement(f"coordinate {x} out of range for modulus {m}")
        return tuple(a)

    def add(self, a: Element, b: Element) -> Element:
        self.check(a)
        self.check(b)
        m = self.m
        return ((a[0] + b[0]) % m, (a[1] + b[1]) % m, (a[2] + b[2] + a[0] * b[1]) % m)

    def neg(self, a: Element) -> Element:
        self.check(a)
        m = self.m
        return ((-a[0]) % m, (-a[1]) % m, (a[0] * a[1] - a[2]) % m)

    def is_abelian(self) -> bool:
        return False

    def _build_elements(self) -> list[Element]:
        r = range(self.m)
        return list(product(r, r, r))

    def index_of(self, a: Element) -> int:
        self.check(a)
        m = self.m
        return (a[0] * m + a[1]) * m + a[2]

    def element_at(self, idx: int) -> Element:
        m = self.m
        z = idx % m
        idx //= m
        return (idx // m, idx % m, z)


_ASSOC_FULL_PURE = 64
_ASSOC_FULL_NUMPY = 1024
_ASSOC_SAMPLES = 200_000


class CayleyGroup(Group):
    """Group given by an explicit operation table over indices 0..n-1.

    Index 0 must be the identity.  Elements are 1-tuples (i,).  Validation
    checks the identity row/column and the Latin-square property exactly;
    associativity is checked in full up to order 1024 (vectorised beyond
    order 64) and by deterministic sampling above that.
    """

    def __init__(self, table, trusted: bool = False) -> None:
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0:
            raise ValueError("table must be non-empty")
        if any(len(row) != n for row in table):
            raise ValueError("table must be square")
        self.table = table
        self.order = n
        self._inv = self._build_inverses()
        if not trusted:
            self._validate()

    def _build_inverses(self) -> tuple[int, ...]:
        n = self.order
        inv = [-1] * n
        for i, row in enumerate(self.table):
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise ValueError(f"table entry {v} out of range")
                if v == 0 and inv[i] < 0:
                    inv[i] = j
        if any(v < 0 for v in inv):
            raise ValueError("some element has no inverse")
        return tuple(inv)

    def _validate(self) -> None:
        n = self.order
        table = self.table
        idx = list(range(n))
        if list(table[0]) != idx or [row[0] for row in table] != idx:
            raise ValueError("index 0 is not a two-sided identity")
        full = set(idx)
        for row in table:
            if set(row) != full:
                raise ValueError("a row is not a permutation")
        for j in range(n):
            if {row[j] for row in table} != full:
                raise ValueError("a column is not a permutation")
        if n <= _ASSOC_FULL_PURE:
            for a in range(n):
                for b in range(n):
                    ab = table[a][b]
                    row_b = table[b]
                    for c in range(n):
                        if table[ab][c] != table[a][row_b[c]]:
                            raise ValueError("operation is not associative")
        elif n <= _ASSOC_FULL_NUMPY:
            import numpy as np

            t = np.array(table, dtype=np.int64)
            for a in range(n):
                if not np.array_equal(t[t[a]], t[a][t]):
                    raise ValueError("operation is not associative")
        else:
            # Too big for a full scan; deterministic spot check.
            import random

            rng = random.Random(0xDDF)
            for _ in range(_ASSOC_SAMPLES):
                a = rng.randrange(n)
                b = rng.randrange(n)
                c = rng.randrange(n)
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise ValueError("operation is not associative")

    def __repr__(self) -> str:
        return f"CayleyGroup(order={self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CayleyGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash(("cayley", self.order, self.table[min(1, self.order - 1)]))

    @property
    def zero(self) -> Element:
        return (0,)

    def check(self, a: Element) -> Element:
        if len(a) != 1 or not 0 <= a[0] < self.order:
            raise InvalidElement(f"bad table index element {a!r}")
        return tuple(a)

    def add(self, a: Element, b: Element) -> Element:
        self.check(a)
        self.check(b)
        return (self.table[a[0]][b[0]],)

    def neg(self, a: Element) -> Element:
        self.check(a)
        return (self._inv[a[0]],)

    def is_abelian(self) -> bool:
        cached = getattr(self, "_abelian", None)
        if cached is None:
            t = self.table
            n = self.order
            cached = all(t[i][j] == t[j][i] for i in range(n) for j in range(i))
            self._abelian = cached
        return cached

    def _build_elements(self) -> list[Element]:
        return [(i,) for i in range(self.order)]

    def index_of(self, a: Element) -> int:
        self.check(a)
        return a[0]

    def element_at(self, idx: int) -> Element:
        return (idx,)


class Subgroup:
    """A subgroup given by its sorted element tuple inside a parent group.

    Closure under the operation and negation, and membership of the
    identity, are verified at construction.
    """

    def __init__(self, parent: Group, elements) -> None:
        elems = sorted(parent.check(e) for e in elements)
        if len(set(elems)) != len(elems):
            raise ValueError("duplicate elements in subgroup")
        eset = set(elems)
        if parent.zero not in eset:
            raise ValueError("subgroup must contain the identity")
        for a in elems:
            if parent.neg(a) not in eset:
                raise ValueError("subgroup not closed under negation")
            for b in elems:
                if parent.add(a, b) not in eset:
                    raise ValueError("subgroup not closed under the operation")
        self.parent = parent
        self.elements = tuple(elems)
        self.as_set = frozenset(elems)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, e: Element) -> bool:
        return e in self.as_set

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.parent, self.elements))


def is_normal_subgroup(G: Group, N: Subgroup) -> bool:
    """Exhaustive conjugation test: g + n - g stays in N for all g, n."""
    if N.parent != G:
        raise ValueError("subgroup belongs to a different group")
    if G.is_abelian():
        return True
    members = N.as_set
    for g in G.elements():
        ng = G.neg(g)
        for n in N.elements:
            if G.add(G.add(g, n), ng) not in members:
                return False
    return True


def require_normal(G: Group, N: Subgroup, universe=None) -> None:
    """Raise NotNormal unless N is stable under conjugation by `universe`.

    `universe` defaults to the whole group; passing a subset restricts the
    conjugating elements (used for nested chain levels).
    """
    if G.is_abelian():
        return
    members = N.as_set
    gens = universe if universe is not None else G.elements()
    for g in gens:
        ng = G.neg(g)
        for n in N.elements:
            if G.add(G.add(g, n), ng) not in members:
                raise NotNormal(f"conjugate of {n} by {g} leaves the subgroup")


def group_to_json(G: Group) -> dict:
    if isinstance(G, AbelianProduct):
        return {"kind": "abelian", "moduli": list(G.moduli)}
    if isinstance(G, HeisenbergGroup):
        return {"kind": "heisenberg", "m": G.m}
    if isinstance(G, CayleyGroup):
        return {"kind": "cayley", "order": G.order, "table": [list(r) for r in G.table]}
    raise TypeError(f"unknown group type {type(G)!r}")


def group_from_json(data: dict) -> Group:
    kind = data.get("kind")
    if kind == "abelian":
        return AbelianProduct(data["moduli"])
    if kind == "heisenberg":
        return HeisenbergGroup(data["m"])
    if kind == "cayley":
        table = data["table"]
        if len(table) != data.get("order", len(table)):
            raise ValueError("declared order does not match table size")
        return CayleyGroup(table)
    raise ValueError(f"unknown group kind {kind!r}")


def element_to_json(e: Element) -> list[int]:
    return list(e)


def element_from_json(data) -> Element:
    return tuple(int(x) for x in data)
