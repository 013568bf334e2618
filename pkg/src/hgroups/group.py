"""Finite permutation groups, subgroups and homomorphisms.

A :class:`FiniteGroup` enumerates all of its elements on construction and
stores them in lexicographic order of their image sequences, so element
indices are canonical: index 0 is always the identity. Most algorithms work
on indices; the :class:`Permutation` values are the public face.

At truncation level one, a group is its own classifying groupoid ``BG`` (one
object, one arrow per element), and a homomorphism ``H -> G`` is the same
thing as a pointed map ``BH -> BG``.
"""

from __future__ import annotations

import os
from collections import Counter, deque
from itertools import product

import numpy as np

from .errors import (
    NonBijectiveGenerator,
    NotAHomomorphism,
    NotASubgroup,
    NotNormal,
    OrderLimitExceeded,
    ParseError,
)
from .perm import Permutation

DEFAULT_ORDER_CAP = 10080
TABLE_LIMIT = 1500
DEFAULT_ISO_BUDGET = 500_000

_order_cap_override = None


def get_order_cap():
    """Element cap for group construction; ``HGROUPS_ORDER_CAP`` overrides the default."""
    if _order_cap_override is not None:
        return _order_cap_override
    env = os.environ.get("HGROUPS_ORDER_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"HGROUPS_ORDER_CAP must be an integer, got {env!r}") from None
    return DEFAULT_ORDER_CAP


def check_order_bound(factors, what):
    """Raise OrderLimitExceeded if the product of ``factors`` exceeds the cap.

    Stops multiplying as soon as the cap is passed, so factorials of huge n
    are refused cheaply.
    """
    cap = get_order_cap()
    total = 1
    for f in factors:
        total *= f
        if total > cap:
            raise OrderLimitExceeded(f"{what} has more than {cap} elements", cap=cap)


def set_order_cap(cap):
    """Set (or with ``None`` reset) the process-wide element cap."""
    global _order_cap_override
    _order_cap_override = cap


class FiniteGroup:
    """A group of permutations of ``{0..degree-1}`` with all elements enumerated."""

    def __init__(self, degree, generators=(), name=None, *, order_cap=None):
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise NonBijectiveGenerator(
                    f"generator {g} has degree {g.degree}, expected {degree}",
                    generator=list(g.images),
                )
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        cap = order_cap if order_cap is not None else get_order_cap()

        ident = Permutation.identity(degree)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = s * x
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > cap:
                            raise OrderLimitExceeded(
                                f"group closure exceeds the element cap {cap}", cap=cap
                            )
            frontier = nxt
        self.elements = tuple(sorted(seen))
        self._index = {p: i for i, p in enumerate(self.elements)}
        self._table = None
        self._inverses = None
        self._orders = None
        self._gen_set = None
        self._cayley = {}

    # -- basic access -----------------------------------------------------

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p):
        return p in self._index

    @property
    def identity(self):
        return self.elements[0]

    def index(self, p):
        try:
            return self._index[p]
        except KeyError:
            raise NotASubgroup(f"{p} is not an element of {self}") from None

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.degree == other.degree
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __repr__(self):
        tag = self.name or "FiniteGroup"
        return f"<{tag} order={self.order} degree={self.degree}>"

    # -- arithmetic on indices ---------------------------------------------

    @property
    def table(self):
        """Cayley table as a list of rows; ``table[i][j]`` is the index of ``e_i * e_j``."""
        if self._table is None:
            self._table = self._build_table()
        return self._table

    def _build_table(self):
        m, d = self.order, self.degree
        if d == 0 or m == 1:
            return [[0] * m for _ in range(m)]
        E = np.array([p.images for p in self.elements], dtype=np.int64)
        rows = []
        if d <= 15:
            weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
            codes = E @ weights
            for i in range(m):
                rows.append(np.searchsorted(codes, E[i][E] @ weights).tolist())
        else:
            lookup = {p.images: i for i, p in enumerate(self.elements)}
            for i in range(m):
                rows.append([lookup[tuple(r)] for r in E[i][E].tolist()])
        return rows

    def mul(self, i, j):
        if self._table is not None or self.order <= TABLE_LIMIT:
            return self.table[i][j]
        return self._index[self.elements[i] * self.elements[j]]

    def inv(self, i):
        return self.inverses[i]

    @property
    def inverses(self):
        if self._inverses is None:
            self._inverses = [self._index[~p] for p in self.elements]
        return self._inverses

    def conj(self, g, x):
        """Index of ``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, i):
        return self.element_orders[i]

    @property
    def element_orders(self):
        if self._orders is None:
            self._orders = [p.order() for p in self.elements]
        return self._orders

    def order_histogram(self):
        return tuple(sorted(Counter(self.element_orders).items()))

    def is_abelian(self):
        # commuting generators is equivalent to full commutativity
        gens = self.generating_set()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def multiply(self, p, q):
        return p * q

    # -- generation ---------------------------------------------------------

    def closure(self, indices):
        """Index set of the subgroup generated by ``indices``."""
        gens = sorted(set(indices) - {0})
        members = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.mul(s, x)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def generating_set(self):
        """A canonical small generating set, as a tuple of element indices.

        Greedy: scan elements by decreasing order (ties by index) and keep each
        one not already in the span. Depends only on the element set.
        """
        if self._gen_set is None:
            orders = self.element_orders
            span = frozenset([0])
            chosen = []
            for i in sorted(range(1, self.order), key=lambda i: (-orders[i], i)):
                if len(span) == self.order:
                    break
                if i not in span:
                    chosen.append(i)
                    span = self.closure(chosen)
            self._gen_set = tuple(chosen)
        return self._gen_set

    def cayley_edges(self, gens):
        """Spanning-tree edges and all edges of the Cayley graph for ``gens``.

        Returns ``(tree, edges)``: ``tree`` lists ``(y, k, x)`` with
        ``e_y = gens[k] * e_x`` in BFS order from the identity; ``edges`` lists
        every ``(y, k, x)`` triple.
        """
        key = tuple(gens)
        if key not in self._cayley:
            tree = []
            reached = {0}
            queue = deque([0])
            edges = []
            while queue:
                x = queue.popleft()
                for k, s in enumerate(key):
                    y = self.mul(s, x)
                    edges.append((y, k, x))
                    if y not in reached:
                        reached.add(y)
                        tree.append((y, k, x))
                        queue.append(y)
            if len(reached) != self.order:
                raise NotASubgroup("elements do not generate the group")
            self._cayley[key] = (tree, edges)
        return self._cayley[key]

    def subgroup(self, members):
        return Subgroup(self, members)

    def generated_subgroup(self, perms):
        return Subgroup.from_indices(self, self.closure(self.index(p) for p in perms), check=False)

    def whole(self):
        return Subgroup.from_indices(self, range(self.order), check=False)

    def trivial_subgroup(self):
        return Subgroup.from_indices(self, [0], check=False)

    def commutator_subgroup(self):
        comms = set()
        for a in range(self.order):
            ia = self.inv(a)
            for b in range(self.order):
                comms.add(self.mul(self.mul(a, b), self.mul(ia, self.inv(b))))
        return Subgroup.from_indices(self, self.closure(comms), check=False)

    def centralizer(self, i):
        return Subgroup.from_indices(
            self, [g for g in range(self.order) if self.mul(g, i) == self.mul(i, g)], check=False
        )


def extend_generator_images(source, gens, target, images):
    """Extend ``gens[k] -> images[k]`` (all indices) to a full image table.

    Returns the tuple of target indices, or ``None`` if some relation is
    violated. Checks ``f(s x) == f(s) f(x)`` for every generator ``s`` and
    element ``x``, which is equivalent to the homomorphism law.
    """
    tree, edges = source.cayley_edges(gens)
    f = [None] * source.order
    f[0] = 0
    tmul = target.mul
    for y, k, x in tree:
        f[y] = tmul(images[k], f[x])
    for y, k, x in edges:
        if f[y] != tmul(images[k], f[x]):
            return None
    return tuple(f)


class Subgroup:
    """A subgroup of a :class:`FiniteGroup`, stored as a set of element indices."""

    def __init__(self, parent, members, *, check=True):
        idx = frozenset(parent.index(p) for p in members)
        self._init(parent, idx, check)

    @classmethod
    def from_indices(cls, parent, indices, *, check=True):
        self = object.__new__(cls)
        self._init(parent, frozenset(indices), check)
        return self

    def _init(self, parent, indices, check):
        self.parent = parent
        self.indices = indices
        self._group = None
        if check:
            if 0 not in indices:
                raise NotASubgroup("subset does not contain the identity")
            for a in indices:
                if parent.inv(a) not in indices:
                    raise NotASubgroup("subset not closed under inverses")
                for b in indices:
                    if parent.mul(a, b) not in indices:
                        raise NotASubgroup("subset not closed under products")

    @property
    def members(self):
        return frozenset(self.parent.elements[i] for i in self.indices)

    @property
    def order(self):
        return len(self.indices)

    def __len__(self):
        return len(self.indices)

    def __contains__(self, p):
        return p in self.parent._index and self.parent._index[p] in self.indices

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and self.indices == other.indices

    def __hash__(self):
        return hash(self.indices)

    def __le__(self, other):
        return self.indices <= other.indices

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    @property
    def key(self):
        """Sorted index tuple; the canonical ordering key for subgroups."""
        return tuple(sorted(self.indices))

    def index_in_parent(self):
        return self.parent.order // self.order

    def conjugate(self, g):
        G = self.parent
        return Subgroup.from_indices(G, (G.conj(g, x) for x in self.indices), check=False)

    def is_normal(self):
        G = self.parent
        gens = G.generating_set()
        return all(G.conj(g, x) in self.indices for g in gens for x in self.indices)

    def normalizer(self):
        G = self.parent
        return Subgroup.from_indices(
            G,
            [g for g in range(G.order) if all(G.conj(g, x) in self.indices for x in self.indices)],
            check=False,
        )

    def left_cosets(self):
        """Left cosets ``gH`` as sorted index tuples, ordered by least element."""
        G = self.parent
        seen = set()
        cosets = []
        for g in range(G.order):
            if g in seen:
                continue
            coset = tuple(sorted(G.mul(g, h) for h in self.indices))
            seen.update(coset)
            cosets.append(coset)
        return cosets

    def as_group(self, name=None):
        """The subgroup as a permutation group in its own right (same degree)."""
        if self._group is None or name is not None:
            G = self.parent
            sub = sorted(self.indices)
            span = frozenset([0])
            chosen = []
            for i in sorted(sub, key=lambda i: (-G.element_orders[i], i)):
                if len(span) == len(sub):
                    break
                if i not in span:
                    chosen.append(i)
                    span = G.closure(chosen)
            grp = FiniteGroup(G.degree, [G.elements[i] for i in chosen], name=name)
            if name is not None:
                return grp
            self._group = grp
        return self._group

    def inclusion(self):
        H = self.as_group()
        G = self.parent
        return Homomorphism(H, G, tuple(G.index(p) for p in H.elements), check=False)


class Homomorphism:
    """A structure-preserving map, stored as a full table of target indices."""

    def __init__(self, source, target, images, *, check=True):
        if isinstance(images, dict):
            images = tuple(target.index(images[p]) for p in source.elements)
        self.source = source
        self.target = target
        self.images = tuple(images)
        if check:
            if len(self.images) != source.order:
                raise NotAHomomorphism("image table has the wrong length")
            if self.images[0] != 0:
                raise NotAHomomorphism("identity is not sent to the identity")
            gens = source.generating_set()
            if gens:
                got = extend_generator_images(source, gens, target, [self.images[s] for s in gens])
                if got != self.images:
                    raise NotAHomomorphism("map does not respect multiplication")

    def __call__(self, p):
        return self.target.elements[self.images[self.source.index(p)]]

    def apply(self, i):
        return self.images[i]

    def __eq__(self, other):
        return (
            isinstance(other, Homomorphism)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"<Homomorphism {self.source!r} -> {self.target!r}>"

    def kernel(self):
        return Subgroup.from_indices(
            self.source, [i for i, t in enumerate(self.images) if t == 0], check=False
        )

    def image(self):
        return Subgroup.from_indices(self.target, set(self.images), check=False)

    def is_injective(self):
        return len(set(self.images)) == self.source.order

    def is_surjective(self):
        return len(set(self.images)) == self.target.order

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()

    def compose(self, first):
        """``self ∘ first``."""
        if first.target != self.source:
            raise NotAHomomorphism("cannot compose: codomain/domain mismatch")
        return Homomorphism(
            first.source, self.target, tuple(self.images[i] for i in first.images), check=False
        )

    def inverse(self):
        if not self.is_isomorphism():
            raise NotAHomomorphism("only isomorphisms are invertible")
        inv = [0] * self.target.order
        for i, t in enumerate(self.images):
            inv[t] = i
        return Homomorphism(self.target, self.source, tuple(inv), check=False)


def identity_hom(G):
    return Homomorphism(G, G, tuple(range(G.order)), check=False)


def trivial_hom(G, H):
    return Homomorphism(G, H, (0,) * G.order, check=False)


# -- constructors ------------------------------------------------------------


def group_from_generators(degree, gens, name=None):
    return FiniteGroup(degree, gens, name=name)


def symmetric_group(n):
    if n < 1:
        raise ValueError("symmetric_group needs n >= 1")
    check_order_bound(range(2, n + 1), f"S{n}")
    gens = []
    if n >= 2:
        gens = [Permutation.from_cycles(n, [(0, 1)]), Permutation.from_cycles(n, [tuple(range(n))])]
    return FiniteGroup(n, gens, name=f"S{n}")


def cyclic_group(n):
    if n < 1:
        raise ValueError("cyclic_group needs n >= 1")
    check_order_bound([n], f"C{n}")
    gens = [Permutation.from_cycles(n, [tuple(range(n))])] if n >= 2 else []
    return FiniteGroup(n, gens, name=f"C{n}")


def klein_four_group():
    return FiniteGroup(
        4,
        [Permutation.from_cycles(4, [(0, 1), (2, 3)]), Permutation.from_cycles(4, [(0, 2), (1, 3)])],
        name="V4",
    )


def dihedral_group(n):
    """Symmetries of the regular n-gon, order ``2n``."""
    if n < 1:
        raise ValueError("dihedral_group needs n >= 1")
    check_order_bound([2, n], f"D{n}")
    if n == 1:
        return FiniteGroup(2, [Permutation([1, 0])], name="D1")
    if n == 2:
        g = klein_four_group()
        g.name = "D2"
        return g
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(-i) % n for i in range(n)])
    return FiniteGroup(n, [rot, ref], name=f"D{n}")


_QUAT = ["1", "i", "j", "k"]


def _quat_mul(a, b):
    # elements encoded as (sign, unit) with sign in {0, 1}, unit in 1,i,j,k
    (sa, ua), (sb, ub) = a, b
    table = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }
    s, u = table[(ua, ub)]
    return ((sa + sb + s) % 2, u)


def quaternion_group():
    """Q8 via its left-regular action on {±1, ±i, ±j, ±k}."""
    elems = [(s, u) for s in (0, 1) for u in range(4)]
    pos = {e: i for i, e in enumerate(elems)}

    def left(x):
        return Permutation([pos[_quat_mul(x, y)] for y in elems])

    return FiniteGroup(8, [left((0, 1)), left((0, 2))], name="Q8")


# -- operations --------------------------------------------------------------


def hom(source, target, generator_images):
    """The unique homomorphism sending ``source.generators[k]`` to ``generator_images[k]``.

    ``generator_images`` may also be a dict keyed by source generators.
    """
    if isinstance(generator_images, dict):
        generator_images = [generator_images[g] for g in source.generators]
    generator_images = list(generator_images)
    if len(generator_images) != len(source.generators):
        raise NotAHomomorphism(
            f"expected {len(source.generators)} generator images, got {len(generator_images)}"
        )
    gens = [source.index(g) for g in source.generators]
    try:
        imgs = [target.index(p) for p in generator_images]
    except NotASubgroup as exc:
        raise NotAHomomorphism(str(exc)) from None
    table = extend_generator_images(source, gens, target, imgs)
    if table is None:
        raise NotAHomomorphism("generator assignment violates a relation of the source")
    return Homomorphism(source, target, table, check=False)


def kernel_image(h):
    return h.kernel(), h.image()


def quotient_group(G, N):
    """``G / N`` acting on the left cosets of N; returns ``(Q, projection)``."""
    if N.parent != G:
        raise NotASubgroup("N is not a subgroup of G")
    if not N.is_normal():
        raise NotNormal("subgroup is not normal", order=N.order)
    cosets = N.left_cosets()
    where = {}
    for c, coset in enumerate(cosets):
        for x in coset:
            where[x] = c
    reps = [coset[0] for coset in cosets]

    def image_of(g):
        return Permutation([where[G.mul(g, r)] for r in reps])

    k = len(cosets)
    Q = FiniteGroup(k, [image_of(G.index(g)) for g in G.generators] if k > 1 else [])
    proj = Homomorphism(G, Q, tuple(Q.index(image_of(g)) for g in range(G.order)), check=False)
    return Q, proj


def is_abelian(G):
    return G.is_abelian()


def _invariants(G):
    return (G.order, G.is_abelian(), G.order_histogram())


def conjugacy_class_reps(G):
    """Least index of each conjugacy class, ascending."""
    seen = set()
    reps = []
    for x in range(G.order):
        if x in seen:
            continue
        reps.append(x)
        seen.update(G.conj(g, x) for g in range(G.order))
    return reps


def are_isomorphic(G, H, *, budget=DEFAULT_ISO_BUDGET):
    """An isomorphism ``G -> H`` if one exists, else ``None``.

    Prunes by order, abelianness and element-order histogram, then
    backtracks over images of a small generating set of G. The first image
    is restricted to conjugacy-class representatives of H (composing with an
    inner automorphism of H keeps a witness a witness), and every pair of
    generator images must reproduce the order of the corresponding product.
    """
    if _invariants(G) != _invariants(H):
        return None
    if G.order == 1:
        return Homomorphism(G, H, (0,), check=False)
    gens = list(G.generating_set())
    gorders = G.element_orders
    horders = H.element_orders
    reps = set(conjugacy_class_reps(H))
    cands = []
    for k, s in enumerate(gens):
        pool = [t for t in range(H.order) if horders[t] == gorders[s]]
        if k == 0:
            pool = [t for t in pool if t in reps]
        cands.append(pool)
    pair_orders = {
        (a, b): gorders[G.mul(gens[a], gens[b])] for a in range(len(gens)) for b in range(a)
    }
    attempts = 0
    chosen = []

    def search(k):
        nonlocal attempts
        if k == len(gens):
            attempts += 1
            if attempts > budget:
                raise OrderLimitExceeded("isomorphism search budget exhausted", budget=budget)
            table = extend_generator_images(G, gens, H, chosen)
            if table is not None and len(set(table)) == H.order:
                return Homomorphism(G, H, table, check=False)
            return None
        for t in cands[k]:
            if any(horders[H.mul(t, chosen[b])] != pair_orders[(k, b)] for b in range(k)):
                continue
            chosen.append(t)
            found = search(k + 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    return search(0)


def all_generator_assignments(G, H):
    """Iterate candidate image tuples for ``G.generating_set()`` in lexicographic order.

    Only order-compatible candidates are produced: the image of each generator
    (and of each pairwise product) has order dividing the source order.
    """
    gens = list(G.generating_set())
    gorders = G.element_orders
    horders = H.element_orders
    cands = [[t for t in range(H.order) if gorders[s] % horders[t] == 0] for s in gens]
    pair_orders = {
        (a, b): gorders[G.mul(gens[a], gens[b])] for a in range(len(gens)) for b in range(a)
    }
    chosen = []

    def rec(k):
        if k == len(gens):
            yield tuple(chosen)
            return
        for t in cands[k]:
            if any(pair_orders[(k, b)] % horders[H.mul(t, chosen[b])] for b in range(k)):
                continue
            chosen.append(t)
            yield from rec(k + 1)
            chosen.pop()

    return gens, rec(0)


def element_tuples(G, k):
    """All k-tuples of element indices in lexicographic (rank) order."""
    return product(range(G.order), repeat=k)
