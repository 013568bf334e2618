"""Covering spaces of BG as G-sets, and the Galois correspondence.

A connected cover is a transitive G-set; cover maps are equivariant maps and
isomorphisms are equivariant bijections. Pointed isomorphisms also preserve
the basepoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import GSet, coset_action, right_action
from .errors import NotConnected, NotPointed, NotASubgroup, OrderLimitExceeded
from .group import FiniteGroup, Subgroup
from .perm import Permutation

SUBGROUP_ENUMERATION_CAP = 48


@dataclass
class Cover:
    group: FiniteGroup
    total: GSet
    basepoint: int | None = None

    def __post_init__(self):
        if self.total.group != self.group:
            raise NotASubgroup("cover's G-set is over a different group")
        if self.basepoint is not None and not 0 <= self.basepoint < len(self.total.carrier):
            raise NotPointed("basepoint outside the carrier")

    def __len__(self):
        return len(self.total.carrier)

    def is_connected(self):
        return self.total.is_transitive()


def _as_gset(X):
    return X.total if isinstance(X, Cover) else X


def universal_cover(G):
    """The right action of G on itself, pointed at the identity."""
    return Cover(G, right_action(G), 0)


def _transversal(X, root):
    """For each point ``x`` of root's orbit, an element index ``g`` with ``g . root = x``."""
    G = X.group
    reach = {root: 0}
    frontier = [root]
    gens = G.generating_set()
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = X.table[s][x]
                if y not in reach:
                    reach[y] = G.mul(s, reach[x])
                    nxt.append(y)
        frontier = nxt
    return reach


def equivariant_maps(X, Y, *, bijective=False, basepoints=None):
    """Iterate all equivariant maps ``X -> Y`` as carrier index tuples.

    An equivariant map is fixed by where it sends one point of each orbit;
    a point ``r`` may go to ``y`` iff ``Stab(r) <= Stab(y)``. With
    ``basepoints=(x0, y0)`` only maps sending x0 to y0 are produced.
    """
    X, Y = _as_gset(X), _as_gset(Y)
    if bijective and len(X.carrier) != len(Y.carrier):
        return
    orbits = X.orbit_indices()
    roots = [orb[0] for orb in orbits]
    if basepoints is not None:
        x0 = basepoints[0]
        k = next(i for i, orb in enumerate(orbits) if x0 in orb)
        roots[k] = x0
    trans = [_transversal(X, r) for r in roots]
    stabs = [[g for g, row in enumerate(X.table) if row[r] == r] for r in roots]
    n = len(X.carrier)
    mapping = [None] * n
    used = set()

    def rec(k):
        if k == len(roots):
            yield tuple(mapping)
            return
        targets = range(len(Y.carrier))
        if basepoints is not None and roots[k] == basepoints[0]:
            targets = [basepoints[1]]
        for y in targets:
            if any(Y.table[g][y] != y for g in stabs[k]):
                continue
            placed = []
            ok = True
            for x, g in trans[k].items():
                fy = Y.table[g][y]
                if bijective and fy in used:
                    ok = False
                    break
                mapping[x] = fy
                placed.append(x)
                if bijective:
                    used.add(fy)
            if ok:
                yield from rec(k + 1)
            for x in placed:
                if bijective:
                    used.discard(mapping[x])
                mapping[x] = None

    yield from rec(0)


def deck_transformations(X):
    """The group of equivariant self-bijections of a cover, acting on its carrier."""
    X = _as_gset(X)
    maps = [Permutation(m) for m in equivariant_maps(X, X, bijective=True)]
    return FiniteGroup(len(X.carrier), [m for m in maps if not m.is_identity()])


def are_isomorphic_covers(X, Y, pointed=False):
    """An equivariant bijection ``X -> Y`` (basepoint-preserving if ``pointed``), or ``None``."""
    bp = None
    if pointed:
        if not isinstance(X, Cover) or not isinstance(Y, Cover) or X.basepoint is None or Y.basepoint is None:
            raise NotPointed("pointed comparison needs pointed covers")
        bp = (X.basepoint, Y.basepoint)
    return next(iter(equivariant_maps(X, Y, bijective=True, basepoints=bp)), None)


def all_subgroups(G, cap=None):
    """Every subgroup, ordered by ``(order, key)``.

    Joins cyclic subgroups breadth-first until nothing new appears; every
    subgroup is a join of cyclic ones.
    """
    cap = SUBGROUP_ENUMERATION_CAP if cap is None else cap
    if G.order > cap:
        raise OrderLimitExceeded(f"subgroup enumeration is capped at order {cap}", cap=cap)
    cyclic = {}
    for g in range(G.order):
        c = G.closure([g])
        cyclic.setdefault(c, g)
    gens_of = {c: (g,) if g else () for c, g in cyclic.items()}
    frontier = list(gens_of)
    while frontier:
        nxt = []
        for K in frontier:
            for C, g in cyclic.items():
                if C <= K:
                    continue
                J = G.closure(gens_of[K] + (g,))
                if J not in gens_of:
                    gens_of[J] = gens_of[K] + (g,)
                    nxt.append(J)
        frontier = nxt
    subs = [Subgroup.from_indices(G, s, check=False) for s in gens_of]
    return sorted(subs, key=lambda H: (H.order, H.key))


@dataclass
class SubgroupClass:
    representative: Subgroup
    members: list = field(default_factory=list)


def subgroup_classes(G, cap=None):
    """Conjugacy classes of subgroups; the representative is the least member set."""
    subs = all_subgroups(G, cap)
    seen = set()
    classes = []
    for H in subs:
        if H.indices in seen:
            continue
        conj = {H.conjugate(g).indices for g in range(G.order)}
        seen |= conj
        members = sorted((Subgroup.from_indices(G, c, check=False) for c in conj), key=lambda K: K.key)
        classes.append(SubgroupClass(members[0], members))
    return sorted(classes, key=lambda c: (c.representative.order, c.representative.key))


def subgroup_conjugacy_classes(G, cap=None):
    return [c.representative for c in subgroup_classes(G, cap)]


def cover_of_subgroup(G, H):
    """``G/H`` pointed at the coset ``H`` (always carrier index 0)."""
    if H.parent != G:
        raise NotASubgroup("H is not a subgroup of G")
    return Cover(G, coset_action(G, H), 0)


def subgroup_of_cover(X):
    """Stabilizer of the basepoint of a pointed connected cover."""
    if X.basepoint is None:
        raise NotPointed("cover has no basepoint")
    if not X.is_connected():
        raise NotConnected("cover is not connected")
    return X.total.stabilizer_of_index(X.basepoint)


def is_galois(G, X):
    """True iff the deck group acts transitively on a connected cover."""
    X = X if isinstance(X, Cover) else Cover(G, X)
    if not X.is_connected():
        raise NotConnected("cover is not connected")
    D = deck_transformations(X)
    return D.order == len(X) and len(X) > 0


def _subconjugate(G, H, K):
    return any(H.conjugate(g).indices <= K.indices for g in range(G.order))


@dataclass
class GaloisRow:
    subgroup_order: int
    index: int
    class_size: int
    normal: bool
    galois: bool
    deck_order: int
    normalizer_quotient_order: int


@dataclass
class GaloisReport:
    group_order: int
    rows: list
    bijection: bool
    round_trip: bool
    contravariant: bool
    normal_iff_galois: bool
    deck_is_normalizer_quotient: bool

    @property
    def verified(self):
        return (
            self.bijection
            and self.round_trip
            and self.contravariant
            and self.normal_iff_galois
            and self.deck_is_normalizer_quotient
        )


def galois_correspondence_report(G, cap=None):
    """Pair each subgroup conjugacy class with its connected cover and check the correspondence."""
    classes = subgroup_classes(G, cap)
    reps = [c.representative for c in classes]
    covers = [cover_of_subgroup(G, H) for H in reps]
    rows = []
    round_trip = True
    for c, H, X in zip(classes, reps, covers):
        if subgroup_of_cover(X) != H:
            round_trip = False
        if are_isomorphic_covers(cover_of_subgroup(G, subgroup_of_cover(X)), X, pointed=True) is None:
            round_trip = False
        deck = deck_transformations(X)
        rows.append(
            GaloisRow(
                subgroup_order=H.order,
                index=H.index_in_parent(),
                class_size=len(c.members),
                normal=H.is_normal(),
                galois=is_galois(G, X),
                deck_order=deck.order,
                normalizer_quotient_order=H.normalizer().order // H.order,
            )
        )
    bijection = True
    contravariant = True
    for i, X in enumerate(covers):
        for j, Y in enumerate(covers):
            iso = i != j and len(X) == len(Y) and are_isomorphic_covers(X, Y) is not None
            if iso:
                bijection = False
            has_map = next(iter(equivariant_maps(X, Y)), None) is not None
            if has_map != _subconjugate(G, reps[i], reps[j]):
                contravariant = False
    # each conjugate of a class member gives an isomorphic cover
    for c, X in zip(classes, covers):
        for K in c.members:
            if are_isomorphic_covers(cover_of_subgroup(G, K), X) is None:
                bijection = False
    return GaloisReport(
        group_order=G.order,
        rows=rows,
        bijection=bijection,
        round_trip=round_trip,
        contravariant=contravariant,
        normal_iff_galois=all(r.normal == r.galois for r in rows),
        deck_is_normalizer_quotient=all(r.deck_order == r.normalizer_quotient_order for r in rows),
    )
