"""Finite subgroups of PGL(5) given by generator matrices.

Elements are scaled so that the first nonzero entry (row-major) is 1; after
that, projective equality is plain entry-wise equality and matrices can be
hashed.  ``close`` enumerates the group breadth-first and records the right
action of each generator, from which the full multiplication table follows
by index lookups only.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .cyclo import ONE, ZERO, CycNumber, canonical_conductor
from .errors import ConductorError, GroupCapExceeded
from .linalg import Matrix, det, identity, matmul, scale

DEFAULT_MAX_ORDER = 20_000


@dataclass(frozen=True, eq=False)
class ProjElement:
    """A matrix in projective normal form.

    ``key`` holds the exact coefficients of every entry at ``conductor`` and is
    only comparable between elements keyed at the same conductor (as inside a
    GroupTable).  ``==`` compares values and works across conductors.
    """

    matrix: Matrix
    key: tuple = field(repr=False)
    conductor: int = 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjElement):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.key == other.key
        return all(x == y for r1, r2 in zip(self.matrix, other.matrix) for x, y in zip(r1, r2))

    def __hash__(self) -> int:
        return hash(tuple(hash(x) for row in self.matrix for x in row))

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.matrix) + "]"


def _matrix_conductor(a: Matrix) -> int:
    return math.lcm(1, *(x.conductor for row in a for x in row))


def _matrix_key(a: Matrix, n: int) -> tuple:
    return tuple(x.coeffs_at(n) for row in a for x in row)


def _scaled_to_leading_one(a: Matrix, n: Optional[int] = None) -> ProjElement:
    lead = next(x for row in a for x in row if x)
    if lead != ONE:
        a = scale(lead.inverse(), a)
    n = _matrix_conductor(a) if n is None else n
    return ProjElement(a, _matrix_key(a, n), n)


def normalize(a: Sequence[Sequence[CycNumber]]) -> ProjElement:
    """Projective normal form: the scalar multiple whose first nonzero entry is 1."""
    a = tuple(tuple(row) for row in a)
    if not det(a):
        raise ValueError("singular matrix has no projective class")
    return _scaled_to_leading_one(a)


def projective_product(g: ProjElement, h: ProjElement, n: Optional[int] = None) -> ProjElement:
    if n is None:
        n = math.lcm(g.conductor, h.conductor)
    return _scaled_to_leading_one(matmul(g.matrix, h.matrix), n)


def element_order(g: ProjElement, cap: int = DEFAULT_MAX_ORDER) -> int:
    """Least n >= 1 with g^n = 1 in PGL(5)."""
    one = _scaled_to_leading_one(identity(len(g.matrix)), g.conductor)
    x, n = g, 1
    while x.key != one.key:
        x = projective_product(x, g, g.conductor)
        n += 1
        if n > cap:
            raise GroupCapExceeded(f"element has projective order > {cap} (possibly infinite)")
    return n


def perm_matrix(cycles: str, n: int = 5) -> Matrix:
    """Permutation matrix for cycle notation; row i carries its 1 in column sigma(i).

    ``"(123)"`` gives rows e2, e3, e1, e4, e5 and ``"(12)(34)"`` swaps both pairs.
    """
    sigma = list(range(n))
    text = cycles.strip()
    if text and not re.fullmatch(r"(\([\d\s,]*\))+", text):
        raise ValueError(f"malformed cycle notation {cycles!r}")
    for body in re.findall(r"\(([^)]*)\)", text):
        pts = [int(t) - 1 for t in re.findall(r"\d", body)]
        if any(p < 0 or p >= n for p in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle ({body}) for degree {n}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            sigma[a] = b
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"cycles {cycles!r} overlap")
    # product of disjoint cycles only; overlapping cycles are rejected above
    return tuple(tuple(ONE if j == sigma[i] else ZERO for j in range(n)) for i in range(n))


@dataclass
class GroupTable:
    elements: list  # ProjElement, identity first
    mult: list  # mult[i][j] = index of elements[i] * elements[j]
    inv: list
    classes: list  # tuples of indices, ordered by representative
    centralizers: dict  # class representative -> sorted indices
    conductor: int
    generators: list = field(default_factory=list)  # indices of the generators
    _index: dict = field(default_factory=dict, repr=False)
    _class_of: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def representatives(self) -> list[int]:
        return [c[0] for c in self.classes]

    def index_of(self, a: Sequence[Sequence[CycNumber]]) -> int:
        """Index of the projective class of a matrix; KeyError if it is not in the group."""
        m = tuple(tuple(row) for row in a)
        try:
            key = _scaled_to_leading_one(m, self.conductor).key
        except ConductorError:
            raise KeyError("matrix entries lie outside the group's field") from None
        return self._index[key]

    def class_of(self, i: int) -> int:
        """Position of the conjugacy class containing element i."""
        return self._class_of[i]

    def conj(self, g: int, x: int) -> int:
        return self.mult[self.mult[g][x]][self.inv[g]]

    def centralizer(self, i: int) -> list[int]:
        rep = self.classes[self._class_of[i]][0]
        if rep == i:
            return self.centralizers[rep]
        return [g for g in range(self.order) if self.mult[g][i] == self.mult[i][g]]

    def element_order(self, i: int) -> int:
        x, n = i, 1
        while x != 0:
            x = self.mult[x][i]
            n += 1
        return n

    def power(self, i: int, k: int) -> int:
        x = 0
        for _ in range(k % self.element_order(i)):
            x = self.mult[x][i]
        return x

    def subgroup(self, gens: Iterable[int]) -> frozenset:
        gens = list(dict.fromkeys(gens))
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.mult[x][s]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)


def close(generators: Sequence, cap: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Enumerate the finite group generated by projective matrices."""
    gens = [g.matrix if isinstance(g, ProjElement) else tuple(tuple(r) for r in g) for g in generators]
    n = canonical_conductor(math.lcm(1, *(_matrix_conductor(g) for g in gens)))
    # leading-entry scaling only introduces roots of unity in mu_lcm(2,n), so every
    # element has its entries in Q(zeta_n) and can be keyed exactly at n
    gens = [_scaled_to_leading_one(g, n) for g in gens]
    for g in gens:
        element_order(g, cap)  # rejects generators of infinite projective order early

    one = _scaled_to_leading_one(identity(), n)
    elements = [one]
    index = {one.key: 0}
    parent = [None]  # (parent index, generator position) that first produced each element
    right: list[list[int]] = [[] for _ in gens]
    i = 0
    while i < len(elements):
        x = elements[i]
        for s_pos, s in enumerate(gens):
            y = projective_product(x, s, n)
            j = index.get(y.key)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise GroupCapExceeded(f"group order exceeds cap {cap}")
                index[y.key] = j
                elements.append(y)
                parent.append((i, s_pos))
            right[s_pos].append(j)
        i += 1

    order = len(elements)
    mult = [[0] * order for _ in range(order)]
    for a in range(order):
        row = mult[a]
        row[0] = a
        for j in range(1, order):
            p, s_pos = parent[j]
            row[j] = right[s_pos][row[p]]
    inv = [row.index(0) for row in mult]

    class_of: dict = {}
    classes = []
    for x in range(order):
        if x in class_of:
            continue
        members = sorted({mult[mult[g][x]][inv[g]] for g in range(order)})
        for m in members:
            class_of[m] = len(classes)
        classes.append(tuple(members))
    centralizers = {c[0]: [g for g in range(order) if mult[g][c[0]] == mult[c[0]][g]] for c in classes}

    gen_idx = [index[g.key] for g in gens]
    return GroupTable(elements, mult, inv, classes, centralizers, n, gen_idx, index, class_of)


def commutation_scalar(g: ProjElement, h: ProjElement, ag: Optional[Matrix] = None, ah: Optional[Matrix] = None) -> CycNumber:
    """The scalar c with H Ag H^-1 = c Ag, for linear liftings Ag of g and H of h.

    H maps the lambda-eigenspace of Ag onto its (lambda/c)-eigenspace, so h
    preserves every eigenspace of Ag exactly when c = 1.
    """
    a = g.matrix if ag is None else ag
    hm = h.matrix if ah is None else ah
    ha = matmul(hm, a)
    ah_ = matmul(a, hm)
    i, j = next((i, j) for i, row in enumerate(ah_) for j, x in enumerate(row) if x)
    c = ha[i][j] / ah_[i][j]
    for r1, r2 in zip(ha, ah_):
        for x, y in zip(r1, r2):
            if x != c * y:
                raise ValueError("elements do not commute projectively")
    return c


def normal_closure(subset: Iterable[int], table: GroupTable) -> frozenset:
    """Smallest normal subgroup containing the given element indices."""
    conjugates = {table.conj(g, s) for s in subset for g in range(table.order)}
    return table.subgroup(sorted(conjugates))


@dataclass(frozen=True)
class QuotientInfo:
    order: int
    is_trivial: bool
    is_cyclic: bool
    abelian_invariants: tuple  # elementary divisors of the abelianization

    def describe(self) -> str:
        if self.is_trivial:
            return "trivial"
        if self.is_cyclic:
            return f"C{self.order}"
        inv = "x".join(f"C{d}" for d in self.abelian_invariants) or "perfect"
        return f"order {self.order}, abelianization {inv}"


def _is_normal(h: frozenset, table: GroupTable) -> bool:
    return all(table.conj(g, x) in h for x in h for g in range(table.order))


def _order_mod(x: int, k: frozenset, table: GroupTable) -> int:
    y, n = x, 1
    while y not in k:
        y = table.mult[y][x]
        n += 1
    return n


def _elementary_divisors(orders: list[int], size: int) -> tuple:
    """Invariants of a finite abelian group from the multiset of its element orders."""
    out = []
    for p, e in sorted(_prime_powers(size).items()):
        counts = [1]
        k = 1
        while True:
            c = sum(1 for o in orders if (p**k) % o == 0)
            counts.append(c)
            if c == p**e:
                break
            k += 1
        logs = [round(math.log(c, p)) for c in counts]
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))] + [0]
        for j in range(len(at_least) - 1):
            out.extend([p ** (j + 1)] * (at_least[j] - at_least[j + 1]))
    return tuple(sorted(out))


def _prime_powers(n: int) -> dict:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def quotient_diagnostics(h: Iterable[int], table: GroupTable) -> QuotientInfo:
    """Order, cyclicity and abelian invariants of G/H for a normal subgroup H."""
    h = frozenset(h)
    if 0 not in h or not _is_normal(h, table):
        raise ValueError("subgroup is not normal")
    q = table.order // len(h)
    reps, seen = [], set()
    for g in range(table.order):
        if g not in seen:
            reps.append(g)
            seen.update(table.mult[g][x] for x in h)
    cyclic = any(_order_mod(r, h, table) == q for r in reps)

    commutators = {
        table.mult[table.mult[a][b]][table.mult[table.inv[a]][table.inv[b]]]
        for a in range(table.order)
        for b in range(table.order)
    }
    k = table.subgroup(sorted(commutators | h))
    ab_reps, seen = [], set()
    for g in range(table.order):
        if g not in seen:
            ab_reps.append(g)
            seen.update(table.mult[g][x] for x in k)
    orders = [_order_mod(r, k, table) for r in ab_reps]
    return QuotientInfo(q, q == 1, cyclic, _elementary_divisors(orders, len(ab_reps)))
