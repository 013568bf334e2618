"""Semidirect, direct and wreath products; sign, cyclic-ordering and partition actions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, permutations, repeat

from .actions import GSet, action_homomorphism
from .deloop import hom_set
from .errors import InvalidAction, OrderLimitExceeded
from .group import FiniteGroup, Homomorphism, Subgroup, check_order_bound, get_order_cap, symmetric_group
from .perm import Permutation


class GroupActionOnGroup:
    """An action of H on N by automorphisms.

    ``tables[h][n]`` is the index of ``phi(h)(n)`` in N.
    """

    def __init__(self, actor, target, tables, *, check=True):
        self.actor = actor
        self.target = target
        self.tables = tuple(tuple(t) for t in tables)
        if check:
            self.validate()

    def validate(self):
        H, N = self.actor, self.target
        if len(self.tables) != H.order:
            raise InvalidAction("need one automorphism per element of H")
        if self.tables[0] != tuple(range(N.order)):
            raise InvalidAction("identity of H must act as the identity")
        for t in self.tables:
            if len(set(t)) != N.order:
                raise InvalidAction("phi(h) is not a bijection")
            for a in N.generating_set():
                for b in range(N.order):
                    if t[N.mul(a, b)] != N.mul(t[a], t[b]):
                        raise InvalidAction("phi(h) is not a homomorphism")
        for s in H.generating_set():
            ts = self.tables[s]
            for h in range(H.order):
                if self.tables[H.mul(s, h)] != tuple(ts[x] for x in self.tables[h]):
                    raise InvalidAction("phi is not a homomorphism H -> Aut(N)")
        return True

    def automorphism(self, h):
        """``phi(h)`` as a :class:`Homomorphism`, for an element of H."""
        return Homomorphism(self.target, self.target, self.tables[self.actor.index(h)], check=False)

    @classmethod
    def from_function(cls, actor, target, fn, **kw):
        """``fn(h_index, n_index) -> n_index``."""
        return cls(actor, target, [[fn(h, n) for n in range(target.order)] for h in range(actor.order)], **kw)

    @classmethod
    def trivial(cls, actor, target):
        return cls(actor, target, [tuple(range(target.order))] * actor.order, check=False)

    @classmethod
    def by_conjugation(cls, section, normal):
        """H acting on a group N by conjugation through ``section : H -> G``.

        N's elements must be elements of ``section.target`` normalised by the image.
        """
        G = section.target
        return cls.from_function(
            section.source,
            normal,
            lambda h, n: normal.index(G.elements[G.conj(section.images[h], G.index(normal.elements[n]))]),
        )


@dataclass
class SemidirectProduct:
    """``H ⋉ N`` with its structure maps.

    ``pairs[e]`` is ``(h, n)`` (indices) for the element index ``e`` of
    ``group``; ``element[(h, n)]`` is the inverse table.
    """

    group: FiniteGroup
    action: GroupActionOnGroup
    pairs: tuple
    element: dict
    inject_actor: Homomorphism
    inject_normal: Homomorphism
    projection: Homomorphism

    def multiply_pairs(self, p, q):
        """The product rule ``(h, n)(h', n') = (h h', n phi(h)(n'))`` on index pairs."""
        H, N = self.action.actor, self.action.target
        (h, n), (h2, n2) = p, q
        return H.mul(h, h2), N.mul(n, self.action.tables[h][n2])


def _pair_permutation(data, h, n):
    # faithful action on H ⊔ N: y -> h y on H, x -> n phi(h)(x) on N
    H, N = data.actor, data.target
    off = H.order
    images = [H.mul(h, y) for y in range(H.order)]
    t = data.tables[h]
    images += [off + N.mul(n, t[x]) for x in range(N.order)]
    return Permutation(images)


def semidirect_product(data, name=None):
    """``H ⋉_phi N`` realised faithfully on ``|H| + |N|`` points.

    ``(h, n)`` acts on the H-block by left multiplication and on the N-block
    by ``x -> n phi(h)(x)``; this is a faithful representation of the pair
    product ``(h h', n phi(h)(n'))``.
    """
    H, N = data.actor, data.target
    cap = get_order_cap()
    if H.order * N.order > cap:
        raise OrderLimitExceeded(f"|H|*|N| = {H.order * N.order} exceeds the element cap {cap}", cap=cap)
    gens = [_pair_permutation(data, H.index(s), 0) for s in H.generators]
    gens += [_pair_permutation(data, 0, N.index(t)) for t in N.generators]
    E = FiniteGroup(H.order + N.order, [g for g in gens if not g.is_identity()], name=name)
    if E.order != H.order * N.order:
        raise InvalidAction("semidirect product has the wrong order")
    element = {}
    pairs = [None] * E.order
    for h in range(H.order):
        for n in range(N.order):
            e = E.index(_pair_permutation(data, h, n))
            element[(h, n)] = e
            pairs[e] = (h, n)
    inj_h = Homomorphism(H, E, tuple(element[(h, 0)] for h in range(H.order)), check=False)
    inj_n = Homomorphism(N, E, tuple(element[(0, n)] for n in range(N.order)), check=False)
    proj = Homomorphism(E, H, tuple(p[0] for p in pairs), check=False)
    return SemidirectProduct(E, data, tuple(pairs), element, inj_h, inj_n, proj)


def direct_product(G, H, name=None):
    """``G × H`` on ``G.degree + H.degree`` points, acting blockwise."""
    dg = G.degree
    gens = [Permutation(list(g.images) + [dg + i for i in range(H.degree)]) for g in G.generators]
    gens += [Permutation(list(range(dg)) + [dg + x for x in h.images]) for h in H.generators]
    if G.degree + H.degree == 0:
        return FiniteGroup(0, [], name=name)
    return FiniteGroup(dg + H.degree, gens, name=name)


def block_components(G, p, blocks):
    """Split a blockwise permutation into its block restrictions (degree d each)."""
    d = G.degree
    return tuple(G.index(Permutation([x - k * d for x in p.images[k * d:(k + 1) * d]])) for k in range(blocks))


def pack_components(G, comps):
    d = G.degree
    images = []
    for k, c in enumerate(comps):
        images += [k * d + x for x in G.elements[c].images]
    return Permutation(images)


def direct_power(N, n, name=None):
    """``N^n`` as blockwise permutations on ``n * N.degree`` points."""
    if n < 1:
        raise ValueError("direct_power needs n >= 1")
    # n itself is bounded too, since every factor adds N.degree points
    check_order_bound([n] if N.order == 1 else repeat(N.order, n), "N^n")
    result = N
    for _ in range(n - 1):
        result = direct_product(result, N)
    result.name = name
    return result


def factor_permutation_action(H, N, n, power=None):
    """H (a permutation group of degree n) permuting the factors of ``N^n``.

    ``h`` sends ``(x_0, ..., x_{n-1})`` to ``(x_{h^-1(0)}, ..., x_{h^-1(n-1)})``.
    """
    if H.degree != n:
        raise InvalidAction(f"actor must permute {n} factors, has degree {H.degree}")
    P = power if power is not None else direct_power(N, n)
    comps = [block_components(N, p, n) for p in P.elements]
    tables = []
    for h in H.elements:
        hinv = ~h
        tables.append(
            [P.index(pack_components(N, [c[hinv(i)] for i in range(n)])) for c in comps]
        )
    return GroupActionOnGroup(H, P, tables, check=False)


def wreath_product(N, n, name=None):
    """``N ≀ Sym_n = Sym_n ⋉ N^n`` with Sym_n permuting the factors."""
    if n < 1:
        raise ValueError("wreath_product needs n >= 1")
    check_order_bound(chain(range(2, n + 1), repeat(N.order, n)), "the wreath product")
    data = factor_permutation_action(symmetric_group(n), N, n)
    return semidirect_product(data, name=name)


def inversion_action(H, N):
    """C2-style action: the non-identity elements of H act by inversion on abelian N.

    Requires H of order 2 (any other order would not give an action in general).
    """
    if H.order != 2:
        raise InvalidAction("inversion action needs an actor of order 2")
    return GroupActionOnGroup(H, N, [tuple(range(N.order)), tuple(N.inverses)])


def klein_point_action(H, V):
    """H of degree 3 permuting the three involutions of a Klein four group V."""
    if H.degree != 3 or V.order != 4 or not all(o <= 2 for o in V.element_orders):
        raise InvalidAction("needs H of degree 3 and a Klein four group")
    inv = [1, 2, 3]
    return GroupActionOnGroup(
        H, V, [[0] + [inv[h.images[i - 1]] for i in inv] for h in H.elements]
    )


# -- sign, cyclic orderings, partitions ----------------------------------------------


def _even_permutations(n):
    """The subgroup generated by products of two transpositions."""
    transpositions = [Permutation.from_cycles(n, [(i, j)]) for i in range(n) for j in range(i + 1, n)]
    products = {s * t for s in transpositions for t in transpositions}
    return FiniteGroup(n, sorted(p for p in products if not p.is_identity()))


def sign_orderings(n):
    """The orderings of n points modulo even permutations.

    Returns ``(classes, where)``: ``classes`` lists each sign ordering as the
    sorted tuple of orderings it contains; ``where[ordering]`` is its class.
    """
    even = _even_permutations(n)
    where = {}
    classes = []
    for o in sorted(Permutation(p) for p in permutations(range(n))):
        if o in where:
            continue
        cls = tuple(sorted(o * e for e in even.elements))
        for x in cls:
            where[x] = len(classes)
        classes.append(cls)
    return classes, where


def sign_action(n, group=None):
    """Sym n acting on its two sign orderings by relabelling."""
    if n < 2:
        raise ValueError("sign needs n >= 2")
    S = group if group is not None else symmetric_group(n)
    classes, where = sign_orderings(n)
    return GSet.from_function(
        S, list(range(len(classes))), lambda g, c: where[S.elements[g] * classes[c][0]], check=False,
        name="sign-orderings",
    )


def sign_hom(n, group=None):
    """The sign map ``Sym n -> Sym 2`` read off the action on sign orderings."""
    return action_homomorphism(sign_action(n, group), target=symmetric_group(2))


def alternating_group(n, group=None):
    """The kernel of the sign map, as a subgroup of Sym n."""
    return sign_hom(n, group).kernel()


def _canonical_rotation(seq):
    k = seq.index(0)
    return tuple(seq[k:]) + tuple(seq[:k])


def cyclic_orderings_action(n, group=None):
    """Sym n relabelling the ``(n-1)!`` cyclic orderings of n points.

    A cyclic ordering is stored as its rotation starting at point 0.
    """
    if n < 2:
        raise ValueError("cyclic orderings need n >= 2")
    S = group if group is not None else symmetric_group(n)
    carrier = [(0,) + rest for rest in permutations(range(1, n))]
    where = {c: i for i, c in enumerate(carrier)}
    return GSet.from_function(
        S,
        carrier,
        lambda g, c: where[_canonical_rotation([S.elements[g].images[x] for x in carrier[c]])],
        check=False,
        name="cyclic-orderings",
    )


PARTITIONS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def _canonical_partition(blocks):
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def partition_action(group=None):
    """Sym 4 acting on the three 2-by-2 partitions of 4 points, and the induced map to Sym 3."""
    S = group if group is not None else symmetric_group(4)
    where = {p: i for i, p in enumerate(PARTITIONS)}
    X = GSet.from_function(
        S,
        PARTITIONS,
        lambda g, c: where[
            _canonical_partition([[S.elements[g].images[x] for x in b] for b in PARTITIONS[c]])
        ],
        check=False,
        name="partitions",
    )
    return X, action_homomorphism(X, target=symmetric_group(3))


def find_section(p):
    """A homomorphism ``s`` with ``p ∘ s = id``, searched in canonical order, or ``None``."""
    target = p.target
    for s in hom_set(target, p.source):
        if all(p.images[s.images[g]] == g for g in range(target.order)):
            return s
    return None


def partition_reconstruction(alternating=False):
    """Rebuild Sym 4 (or Alt 4) as ``ker(p) ⋊ Sym 3`` (or ``⋊ Alt 3``) for the partition map p.

    Sym 3 acts on the kernel by conjugation through a section of p; for Alt 3
    the section is restricted to the alternating subgroup.
    """
    S4 = symmetric_group(4)
    _, p = partition_action(S4)
    K = p.kernel().as_group(name="V4")
    s = find_section(p)
    if alternating:
        A3 = alternating_group(3, p.target)
        inc = A3.inclusion()
        s = s.compose(inc)
    return semidirect_product(GroupActionOnGroup.by_conjugation(s, K))
