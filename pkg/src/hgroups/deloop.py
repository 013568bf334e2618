"""Homomorphisms read as pointed maps of classifying groupoids.

Two homomorphisms ``BG -> BH`` are freely homotopic exactly when they are
conjugate by an element of H. Between abelian groups the homomorphisms form
an abelian group. Being doubly deloopable forces commutativity at the set
level; :func:`eckmann_hilton` checks the interchange argument on finite
carriers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import CarrierMismatch, NotAbelian, SignatureMismatch, UnitMismatch
from .group import (
    FiniteGroup,
    Homomorphism,
    all_generator_assignments,
    extend_generator_images,
    quotient_group,
)
from .perm import Permutation


def hom_set(G, H):
    """All homomorphisms ``G -> H``, ordered lexicographically by generator images."""
    gens, assignments = all_generator_assignments(G, H)
    if not gens:
        return [Homomorphism(G, H, (0,) * G.order, check=False)]
    out = []
    for images in assignments:
        table = extend_generator_images(G, gens, H, images)
        if table is not None:
            out.append(Homomorphism(G, H, table, check=False))
    return out


def are_freely_homotopic(h, k):
    """A conjugator ``c`` in the target with ``k(g) = c h(g) c^-1`` for all g, or ``None``."""
    if h.source != k.source or h.target != k.target:
        raise SignatureMismatch("homomorphisms have different source or target")
    H = h.target
    gens = h.source.generating_set()
    for c in range(H.order):
        if all(k.images[s] == H.conj(c, h.images[s]) for s in gens):
            return H.elements[c]
    return None


@dataclass
class HomClass:
    representative: Homomorphism
    members: list = field(default_factory=list)

    def __len__(self):
        return len(self.members)


def hom_conjugacy_classes(G, H):
    """``hom_set(G, H)`` partitioned into free-homotopy classes, in order of first member."""
    homs = hom_set(G, H)
    pos = {h.images: i for i, h in enumerate(homs)}
    gens = G.generating_set()
    assigned = [None] * len(homs)
    classes = []
    for i, h in enumerate(homs):
        if assigned[i] is not None:
            continue
        members = set()
        for c in range(H.order):
            key = tuple(H.conj(c, t) for t in h.images)
            members.add(pos[key])
        ordered = sorted(members)
        for j in ordered:
            assigned[j] = len(classes)
        classes.append(HomClass(h, [homs[j] for j in ordered]))
    return classes


def hom_group_with_homs(A, B):
    """``(Hom(A, B), homs)``; the element ``p`` is ``homs[p(0)]``."""
    if not A.is_abelian() or not B.is_abelian():
        raise NotAbelian("hom_group needs abelian source and target")
    homs = hom_set(A, B)
    pos = {h.images: i for i, h in enumerate(homs)}

    def pointwise(i, j):
        return pos[tuple(B.mul(x, y) for x, y in zip(homs[i].images, homs[j].images))]

    n = len(homs)
    perms = [Permutation([pointwise(i, j) for j in range(n)]) for i in range(n)]
    grp = FiniteGroup(n, [p for p in perms if not p.is_identity()], name=f"Hom({A.name},{B.name})")
    return grp, homs


def hom_group(A, B):
    return hom_group_with_homs(A, B)[0]


def abelianization(G):
    """``G / [G, G]`` with its projection."""
    Q, proj = quotient_group(G, G.commutator_subgroup())
    Q.name = f"{G.name}_ab" if G.name else None
    return Q, proj


# -- Eckmann–Hilton ------------------------------------------------------------


class UnitalBinaryOp:
    """A binary operation on ``{0..n-1}`` with a two-sided unit."""

    def __init__(self, table, unit):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.unit = unit
        n = len(self.table)
        if any(len(row) != n for row in self.table):
            raise CarrierMismatch("operation table must be square")
        if not 0 <= unit < n:
            raise UnitMismatch("unit outside the carrier")
        if any(not 0 <= v < n for row in self.table for v in row):
            raise CarrierMismatch("operation takes values outside the carrier")
        for x in range(n):
            if self.table[unit][x] != x or self.table[x][unit] != x:
                raise UnitMismatch(f"{unit} is not a two-sided unit")

    @property
    def size(self):
        return len(self.table)

    def __call__(self, a, b):
        return self.table[a][b]

    def is_commutative(self):
        n = self.size
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def is_associative(self):
        t, n = self.table, self.size
        return all(
            t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n)
        )

    def __eq__(self, other):
        return isinstance(other, UnitalBinaryOp) and self.table == other.table and self.unit == other.unit

    def __hash__(self):
        return hash((self.table, self.unit))


def group_operation(G):
    """The multiplication of G as a unital operation on element indices."""
    return UnitalBinaryOp(G.table, 0)


@dataclass
class EckmannHiltonVerdict:
    status: str
    violation: tuple | None = None
    ops_equal: bool | None = None
    commutative: bool | None = None
    associative: bool | None = None

    @property
    def confirmed(self):
        return self.status == "CONFIRMED"


def interchange_violation(op1, op2):
    """First ``(a, b, c, d)`` in lexicographic order breaking the interchange law, or ``None``.

    The law is ``(a *1 b) *2 (c *1 d) == (a *2 c) *1 (b *2 d)``.
    """
    t1, t2, n = op1.table, op2.table, op1.size
    for a in range(n):
        for b in range(n):
            ab = t1[a][b]
            for c in range(n):
                ac = t2[a][c]
                for d in range(n):
                    if t2[ab][t1[c][d]] != t1[ac][t2[b][d]]:
                        return (a, b, c, d)
    return None


def eckmann_hilton(op1, op2):
    """Decide whether two unital operations satisfy interchange.

    ``CONFIRMED`` means they do, and then they coincide and are commutative
    and associative (each fact recomputed, not assumed). ``REFUTED`` carries
    the first violating quadruple. ``COUNTEREXAMPLE`` would mean interchange
    holds but a conclusion fails; it signals a bug.
    """
    if op1.size != op2.size:
        raise CarrierMismatch("operations live on carriers of different sizes")
    if op1.unit != op2.unit:
        raise UnitMismatch("operations have different units")
    bad = interchange_violation(op1, op2)
    if bad is not None:
        return EckmannHiltonVerdict("REFUTED", violation=bad)
    equal = op1.table == op2.table
    comm = op1.is_commutative() and op2.is_commutative()
    assoc = op1.is_associative() and op2.is_associative()
    status = "CONFIRMED" if equal and comm and assoc else "COUNTEREXAMPLE"
    return EckmannHiltonVerdict(status, None, equal, comm, assoc)


def unital_operations(n, unit):
    """Every unital operation on ``{0..n-1}`` with the given unit."""
    free = [(a, b) for a in range(n) for b in range(n) if a != unit and b != unit]
    base = [[a if b == unit else b if a == unit else 0 for b in range(n)] for a in range(n)]
    for values in product(range(n), repeat=len(free)):
        table = [row[:] for row in base]
        for (a, b), v in zip(free, values):
            table[a][b] = v
        yield UnitalBinaryOp(table, unit)


@dataclass
class SearchReport:
    size: int
    units: int
    operations_per_unit: int
    pairs: int
    interchange_pairs: int
    counterexamples: int


def eckmann_hilton_search(max_size=3):
    """Exhaustive check over all pairs of unital operations sharing a unit."""
    reports = []
    for n in range(1, max_size + 1):
        pairs = inter = bad = 0
        per_unit = 0
        for unit in range(n):
            ops = list(unital_operations(n, unit))
            per_unit = len(ops)
            for op1 in ops:
                for op2 in ops:
                    pairs += 1
                    v = eckmann_hilton(op1, op2)
                    if v.status != "REFUTED":
                        inter += 1
                        if v.status != "CONFIRMED":
                            bad += 1
        reports.append(SearchReport(n, n, per_unit, pairs, inter, bad))
    return reports


def eckmann_hilton_sample(size=4, samples=1_000_000, seed=0, batch=50_000):
    """Random pairs of unital operations sharing unit 0 on ``size`` points.

    Vectorised interchange test. Returns ``(sampled, interchange_pairs,
    counterexamples)``; every interchange pair is re-checked exactly.
    """
    rng = np.random.default_rng(seed)
    n = size
    idx = np.arange(n)
    quads = np.array(list(product(range(n), repeat=4)))
    a, b, c, d = quads.T
    inter = bad = 0
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        t = rng.integers(0, n, size=(2, m, n, n))
        t[:, :, 0, :] = idx
        t[:, :, :, 0] = idx
        t1, t2 = t[0], t[1]
        rows = np.arange(m)[:, None]
        ab = t1[rows, a, b]
        cd = t1[rows, c, d]
        ac = t2[rows, a, c]
        bd = t2[rows, b, d]
        ok = (t2[rows, ab, cd] == t1[rows, ac, bd]).all(axis=1)
        for k in np.nonzero(ok)[0]:
            inter += 1
            v = eckmann_hilton(UnitalBinaryOp(t1[k], 0), UnitalBinaryOp(t2[k], 0))
            if v.status != "CONFIRMED":
                bad += 1
        done += m
    return samples, inter, bad
