"""Group cohomology in the normalized bar-resolution model, and central extensions.

Coefficients are written additively: an abelian group A is used through its
element indices, with ``+`` the group product and 0 the identity. A
k-cochain is a flat table of A indices over k-tuples of element indices of
G, in lexicographic (rank) order. Degrees 0..3 are supported; enumeration is
exhaustive and refuses instances whose normalized cochain space exceeds
``COCHAIN_BUDGET``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    BudgetExceeded,
    DegreeUnsupported,
    InvalidAction,
    NotAbelian,
    NotACocycle,
    NotCentral,
    NotExact,
)
from .group import FiniteGroup, Homomorphism, Subgroup
from .perm import Permutation

COCHAIN_BUDGET = 2 ** 24
MAX_DEGREE = 3


class GModule:
    """An abelian group A with a left action of G by automorphisms (trivial by default)."""

    def __init__(self, group, coefficients, action=None, *, check=True):
        self.group = group
        self.coefficients = coefficients
        if action is None:
            ident = tuple(range(coefficients.order))
            action = [ident] * group.order
        self.action = tuple(tuple(t) for t in action)
        if check:
            self.validate()

    def validate(self):
        G, A = self.group, self.coefficients
        if not A.is_abelian():
            raise NotAbelian("coefficient group must be abelian")
        if len(self.action) != G.order or self.action[0] != tuple(range(A.order)):
            raise InvalidAction("identity of G must act trivially")
        for t in self.action:
            if len(set(t)) != A.order or any(
                t[A.mul(a, b)] != A.mul(t[a], t[b]) for a in A.generating_set() for b in range(A.order)
            ):
                raise InvalidAction("G must act by automorphisms")
        for s in G.generating_set():
            for g in range(G.order):
                if self.action[G.mul(s, g)] != tuple(self.action[s][x] for x in self.action[g]):
                    raise InvalidAction("action is not multiplicative")
        return True

    @property
    def is_trivial(self):
        return all(t == self.action[0] for t in self.action)

    def __eq__(self, other):
        return (
            isinstance(other, GModule)
            and self.group == other.group
            and self.coefficients == other.coefficients
            and self.action == other.action
        )

    def __hash__(self):
        return hash((self.group, self.coefficients))


class Cochain:
    """A k-cochain ``G^k -> A`` as a flat value table indexed by tuple rank."""

    def __init__(self, module, degree, values):
        if not 0 <= degree <= MAX_DEGREE + 1:
            raise DegreeUnsupported(f"degree {degree} outside 0..{MAX_DEGREE + 1}")
        self.module = module
        self.degree = degree
        self.values = tuple(values)
        if len(self.values) != module.group.order ** degree:
            raise ValueError("cochain table has the wrong length")

    @classmethod
    def zero(cls, module, degree):
        return cls(module, degree, (0,) * module.group.order ** degree)

    @classmethod
    def from_function(cls, module, degree, fn):
        """``fn(*element_indices) -> A index``."""
        return cls(module, degree, [fn(*t) for t in product(range(module.group.order), repeat=degree)])

    def __call__(self, *args):
        m = self.module.group.order
        r = 0
        for a in args:
            r = r * m + a
        return self.values[r]

    def is_normalized(self):
        m = self.module.group.order
        return all(v == 0 for t, v in zip(product(range(m), repeat=self.degree), self.values) if 0 in t)

    def __add__(self, other):
        A = self.module.coefficients
        return Cochain(self.module, self.degree, [A.mul(a, b) for a, b in zip(self.values, other.values)])

    def __neg__(self):
        A = self.module.coefficients
        return Cochain(self.module, self.degree, [A.inv(a) for a in self.values])

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not any(self.values)

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.degree == other.degree and self.values == other.values

    def __hash__(self):
        return hash((self.degree, self.values))

    def __repr__(self):
        return f"Cochain(degree={self.degree}, values={list(self.values)})"


def _terms(G, k, tup):
    """The k+1 coboundary terms at ``tup`` as ``(sign, acts, face_rank)``.

    ``(dc)(g1..g_{k+1}) = g1.c(g2..) + sum_i (-1)^i c(.., g_i g_{i+1}, ..) + (-1)^{k+1} c(g1..g_k)``.
    """
    m = G.order

    def rank(t):
        r = 0
        for a in t:
            r = r * m + a
        return r

    out = [(1, tup[0], rank(tup[1:]), tup[1:])]
    for i in range(1, k + 1):
        face = tup[: i - 1] + (G.mul(tup[i - 1], tup[i]),) + tup[i + 1:]
        out.append((-1 if i % 2 else 1, None, rank(face), face))
    out.append((-1 if (k + 1) % 2 else 1, None, rank(tup[:k]), tup[:k]))
    return out


def coboundary(c):
    """The bar differential of a k-cochain, for ``0 <= k <= 3``."""
    k = c.degree
    if not 0 <= k <= MAX_DEGREE:
        raise DegreeUnsupported(f"coboundary supports degrees 0..{MAX_DEGREE}, got {k}")
    M = c.module
    G, A = M.group, M.coefficients
    vals = c.values
    out = []
    for tup in product(range(G.order), repeat=k + 1):
        total = 0
        for sign, g, r, _ in _terms(G, k, tup):
            v = vals[r]
            if g is not None:
                v = M.action[g][v]
            if sign < 0:
                v = A.inv(v)
            total = A.mul(total, v)
        out.append(total)
    return Cochain(M, k + 1, out)


def is_cocycle(c):
    return coboundary(c).is_zero()


def _free_tuples(G, k):
    return [t for t in product(range(G.order), repeat=k) if 0 not in t]


def _rank(G, t):
    r = 0
    for a in t:
        r = r * G.order + a
    return r


def _check_budget(M, k):
    G, A = M.group, M.coefficients
    nominal = A.order ** ((G.order - 1) ** k)
    if nominal > COCHAIN_BUDGET:
        raise BudgetExceeded(
            f"|A|^((|G|-1)^k) = {A.order}^{(G.order - 1) ** k} exceeds the budget 2^24",
            budget=COCHAIN_BUDGET,
        )


def normalized_cocycles(M, k):
    """Every normalized k-cocycle, by exhaustive backtracking in rank order.

    Unknowns are the values on tuples without an identity entry; a cocycle
    equation is tested as soon as its last unknown is assigned.
    """
    if not 0 <= k <= MAX_DEGREE:
        raise DegreeUnsupported(f"cohomology supports degrees 0..{MAX_DEGREE}, got {k}")
    _check_budget(M, k)
    G, A = M.group, M.coefficients
    free = _free_tuples(G, k)
    pos = {_rank(G, t): i for i, t in enumerate(free)}
    attached = [[] for _ in free]
    for tup in product(range(G.order), repeat=k + 1):
        terms = []
        for sign, g, r, _ in _terms(G, k, tup):
            if r in pos:
                terms.append((sign, g, pos[r]))
        if terms:
            attached[max(t[2] for t in terms)].append(terms)
    values = [0] * len(free)
    inv = A.inverses
    act = M.action
    size = G.order ** k
    ranks = [_rank(G, t) for t in free]

    def holds(eq):
        total = 0
        for sign, g, p in eq:
            v = values[p]
            if g is not None:
                v = act[g][v]
            if sign < 0:
                v = inv[v]
            total = A.mul(total, v)
        return total == 0

    found = []

    def rec(p):
        if p == len(free):
            table = [0] * size
            for r, v in zip(ranks, values):
                table[r] = v
            found.append(Cochain(M, k, table))
            return
        for a in range(A.order):
            values[p] = a
            if all(holds(eq) for eq in attached[p]):
                rec(p + 1)
        values[p] = 0

    rec(0)
    return found


def normalized_coboundaries(M, k):
    """The subgroup ``B^k`` generated by coboundaries of normalized delta cochains."""
    G, A = M.group, M.coefficients
    zero = Cochain.zero(M, k)
    if k == 0:
        return {zero}
    gens = []
    for t in _free_tuples(G, k - 1):
        r = _rank(G, t)
        for a in A.generating_set():
            vals = [0] * G.order ** (k - 1)
            vals[r] = a
            gens.append(coboundary(Cochain(M, k - 1, vals)))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x + g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@dataclass
class CohomologyGroup:
    """``H^k(G, A) = Z^k / B^k`` with one least representative per class.

    ``group`` acts regularly on the class indices; class 0 is the zero class.
    """

    module: GModule
    degree: int
    group: FiniteGroup
    representatives: list
    cocycle_count: int
    coboundary_count: int
    _class_of: dict

    @property
    def order(self):
        return len(self.representatives)

    def class_index(self, c):
        try:
            return self._class_of[c.values]
        except KeyError:
            raise NotACocycle("cochain is not a normalized cocycle") from None

    def element_of(self, c):
        """The group element (a permutation of class indices) for a cocycle."""
        i = self.class_index(c)
        return Permutation(
            [self._class_of[(self.representatives[i] + r).values] for r in self.representatives]
        )


def cohomology_group(M, k):
    Z = sorted(normalized_cocycles(M, k), key=lambda c: c.values)
    B = normalized_coboundaries(M, k)
    class_of = {}
    reps = []
    for z in Z:
        if z.values in class_of:
            continue
        for b in B:
            class_of[(z + b).values] = len(reps)
        reps.append(z)
    n = len(reps)
    perms = [Permutation([class_of[(r + s).values] for s in reps]) for r in reps]
    H = FiniteGroup(n, [p for p in perms if not p.is_identity()], name=f"H{k}")
    return CohomologyGroup(M, k, H, reps, len(Z), len(B), class_of)


def are_cohomologous(c1, c2):
    """A normalized (k-1)-cochain b with ``c1 - c2 = d b``, or ``None``."""
    if c1.module != c2.module or c1.degree != c2.degree:
        raise DegreeUnsupported("cochains must share module and degree")
    k = c1.degree
    if k < 1:
        raise DegreeUnsupported("are_cohomologous needs degree >= 1")
    M = c1.module
    _check_budget(M, k - 1)
    G, A = M.group, M.coefficients
    diff = c1 - c2
    free = _free_tuples(G, k - 1)
    ranks = [_rank(G, t) for t in free]
    size = G.order ** (k - 1)
    for values in product(range(A.order), repeat=len(free)):
        table = [0] * size
        for r, v in zip(ranks, values):
            table[r] = v
        b = Cochain(M, k - 1, table)
        if coboundary(b) == diff:
            return b
    return None


# -- central extensions --------------------------------------------------------------


@dataclass
class CentralExtension:
    """``A -> E -> G``; ``pairs[e] = (a, g)`` and ``element[(a, g)] = e`` (indices)."""

    group: FiniteGroup
    inclusion: Homomorphism
    projection: Homomorphism
    pairs: tuple
    element: dict
    cocycle: Cochain


def twisted_product(G, A, c):
    """The product ``(a, g)(a', g') = (a + a' + c(g, g'), g g')`` on index pairs."""

    def mul(p, q):
        (a, g), (a2, g2) = p, q
        return A.mul(A.mul(a, a2), c(g, g2)), G.mul(g, g2)

    return mul


def twisted_product_is_associative(G, A, c):
    mul = twisted_product(G, A, c)
    elems = [(a, g) for a in range(A.order) for g in range(G.order)]
    return all(mul(mul(x, y), z) == mul(x, mul(y, z)) for x in elems for y in elems for z in elems)


def central_extension(G, A, c):
    """The extension of G by A twisted by a normalized 2-cocycle (trivial action)."""
    M = c.module
    if M.group != G or M.coefficients != A or c.degree != 2:
        raise NotACocycle("cocycle does not match (G, A) in degree 2")
    if not M.is_trivial:
        raise NotACocycle("central extensions need the trivial action")
    if not c.is_normalized():
        raise NotACocycle("cocycle must be normalized")
    if not twisted_product_is_associative(G, A, c):
        raise NotACocycle("twisted product is not associative")
    mul = twisted_product(G, A, c)
    elems = [(a, g) for a in range(A.order) for g in range(G.order)]
    pos = {p: i for i, p in enumerate(elems)}

    def left(p):
        return Permutation([pos[mul(p, q)] for q in elems])

    gens = [left((a, 0)) for a in A.generating_set()] + [left((0, g)) for g in G.generating_set()]
    E = FiniteGroup(len(elems), gens, name="E")
    element = {p: E.index(left(p)) for p in elems}
    pairs = [None] * E.order
    for p, e in element.items():
        pairs[e] = p
    inc = Homomorphism(A, E, tuple(element[(a, 0)] for a in range(A.order)), check=False)
    proj = Homomorphism(E, G, tuple(p[1] for p in pairs), check=False)
    return CentralExtension(E, inc, proj, tuple(pairs), element, c)


def extension_class(E, A, q):
    """The 2-cocycle of a central extension for the least-preimage section of q.

    ``A`` is the central subgroup, given as a :class:`Subgroup` of E or as an
    injective homomorphism into E (its source then supplies the coefficients).
    Returns a cocycle over the trivial module ``(q.target, A)``.
    """
    if isinstance(A, Subgroup):
        coeff = A.as_group()
        inc = A.inclusion()
    else:
        inc = A
        coeff = A.source
        if not inc.is_injective():
            raise NotExact("inclusion is not injective")
    if inc.target != E or q.source != E:
        raise NotExact("maps do not meet at E")
    image = set(inc.images)
    for a in image:
        if any(E.mul(a, x) != E.mul(x, a) for x in E.generating_set()):
            raise NotCentral("A is not central in E")
    if not q.is_surjective():
        raise NotExact("projection is not surjective")
    if set(q.kernel().indices) != image:
        raise NotExact("kernel of the projection is not A")
    G = q.target
    section = [None] * G.order
    for e in range(E.order):
        g = q.images[e]
        if section[g] is None:
            section[g] = e
    back = {t: a for a, t in enumerate(inc.images)}
    M = GModule(G, coeff)

    def value(g, h):
        x = E.mul(E.mul(section[g], section[h]), E.inv(section[G.mul(g, h)]))
        return back[x]

    return Cochain.from_function(M, 2, value)
