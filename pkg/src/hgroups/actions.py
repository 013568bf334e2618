"""G-sets, read as set-valued families over BG.

All actions are left actions, ``act(g h, x) == act(g, act(h, x))``. A right
action is stored as the left action ``g . x := x g^-1``. For set-valued
actions the homotopy fixed points are the literal fixed points, and the
homotopy quotient is the action groupoid.
"""

from __future__ import annotations

from .errors import GroupMismatch, InvalidAction, NotEquivariant, PointNotFound
from .group import FiniteGroup, Homomorphism, Subgroup
from .groupoid import (
    FiniteGroupoid,
    GroupoidMap,
    are_equivalent,
    homotopy_pullback,
)
from .perm import Permutation


class GSet:
    """A finite set with a left action of a :class:`FiniteGroup`.

    ``table[g][x]`` is the carrier index of ``g . x`` for element index ``g``.
    """

    def __init__(self, group, carrier, table, *, check=True, name=None):
        self.group = group
        self.carrier = tuple(carrier)
        self.table = tuple(tuple(row) for row in table)
        self.name = name
        self._where = {c: i for i, c in enumerate(self.carrier)}
        if check:
            self.validate()

    @classmethod
    def from_function(cls, group, carrier, act, **kw):
        """Build from ``act(g_index, x_index) -> x_index``."""
        n = len(carrier)
        return cls(group, carrier, [[act(g, x) for x in range(n)] for g in range(group.order)], **kw)

    @classmethod
    def from_generator_images(cls, group, carrier, perms, **kw):
        """Build from one carrier permutation per ``group.generators``."""
        n = len(carrier)
        gens = [group.index(g) for g in group.generators]
        if len(perms) != len(gens):
            raise InvalidAction("need one permutation per generator")
        perms = [p if isinstance(p, Permutation) else Permutation(p) for p in perms]
        if any(p.degree != n for p in perms):
            raise InvalidAction("permutation degree differs from carrier size")
        table = [None] * group.order
        table[0] = tuple(range(n))
        tree, edges = group.cayley_edges(gens) if gens else ([], [])
        for y, k, x in tree:
            table[y] = tuple(perms[k].images[i] for i in table[x])
        for y, k, x in edges:
            if table[y] != tuple(perms[k].images[i] for i in table[x]):
                raise InvalidAction("generator permutations violate a group relation")
        return cls(group, carrier, table, **kw)

    def validate(self):
        G, n = self.group, len(self.carrier)
        if len(self.table) != G.order or any(sorted(row) != list(range(n)) for row in self.table):
            raise InvalidAction("every group element must act by a bijection of the carrier")
        if self.table[0] != tuple(range(n)):
            raise InvalidAction("identity does not act trivially")
        # checking act(s g) = act(s) act(g) on generators s covers all pairs
        for s in G.generating_set():
            ts = self.table[s]
            for g in range(G.order):
                if self.table[G.mul(s, g)] != tuple(ts[i] for i in self.table[g]):
                    raise InvalidAction("action is not compatible with the product")
        return True

    def __len__(self):
        return len(self.carrier)

    def __repr__(self):
        return f"<GSet {self.name or ''} |X|={len(self.carrier)} over {self.group!r}>"

    def point_index(self, x):
        try:
            return self._where[x]
        except KeyError:
            raise PointNotFound(f"{x!r} is not in the carrier") from None

    def act(self, g, x):
        """``g . x`` for a group element and a carrier label."""
        return self.carrier[self.table[self.group.index(g)][self.point_index(x)]]

    def generator_permutations(self):
        return [Permutation(self.table[self.group.index(g)]) for g in self.group.generators]

    def orbit_indices(self):
        n = len(self.carrier)
        seen = [False] * n
        out = []
        for x in range(n):
            if seen[x]:
                continue
            orb = sorted({row[x] for row in self.table})
            for y in orb:
                seen[y] = True
            out.append(orb)
        return out

    def orbits(self):
        return [[self.carrier[i] for i in orb] for orb in self.orbit_indices()]

    def is_transitive(self):
        return len(self.orbit_indices()) <= 1

    def stabilizer_of_index(self, x):
        return Subgroup.from_indices(
            self.group, [g for g, row in enumerate(self.table) if row[x] == x], check=False
        )

    def stabilizer(self, x):
        return self.stabilizer_of_index(self.point_index(x))

    def fixed_point_indices(self):
        return [x for x in range(len(self.carrier)) if all(row[x] == x for row in self.table)]

    def fixed_points(self):
        return [self.carrier[i] for i in self.fixed_point_indices()]


class GSetMap:
    """An equivariant map between G-sets over the same group."""

    def __init__(self, source, target, mapping, *, check=True):
        if source.group != target.group:
            raise GroupMismatch("G-set map needs both ends over the same group")
        self.source = source
        self.target = target
        if isinstance(mapping, dict):
            mapping = [target.point_index(mapping[x]) for x in source.carrier]
        self.mapping = tuple(mapping)
        if check:
            for row_s, row_t in zip(source.table, target.table):
                for x in range(len(source.carrier)):
                    if self.mapping[row_s[x]] != row_t[self.mapping[x]]:
                        raise NotEquivariant("map is not equivariant")

    def __call__(self, x):
        return self.target.carrier[self.mapping[self.source.point_index(x)]]


def identity_gset_map(X):
    return GSetMap(X, X, range(len(X.carrier)), check=False)


# -- canonical actions ---------------------------------------------------------


def trivial_action(G, carrier=("*",)):
    n = len(carrier)
    return GSet(G, carrier, [tuple(range(n))] * G.order, check=False, name="trivial")


def natural_action(G):
    """G acting on its points ``0..degree-1``."""
    return GSet(G, range(G.degree), [p.images for p in G.elements], check=False, name="natural")


def right_action(G):
    """Right translation ``x -> x g^-1`` on the elements of G."""
    inv = G.inverses
    return GSet.from_function(
        G, G.elements, lambda g, x: G.mul(x, inv[g]), check=False, name="right"
    )


def left_regular_action(G):
    return GSet.from_function(G, G.elements, lambda g, x: G.mul(g, x), check=False, name="left")


def adjoint_action(G):
    """Conjugation ``x -> g x g^-1`` on the elements of G."""
    return GSet.from_function(G, G.elements, lambda g, x: G.conj(g, x), check=False, name="adjoint")


def coset_action(G, H):
    """Left multiplication on the left cosets ``gH``; carrier labels are coset index tuples."""
    cosets = H.left_cosets()
    where = {}
    for c, coset in enumerate(cosets):
        for x in coset:
            where[x] = c
    reps = [c[0] for c in cosets]
    return GSet.from_function(
        G, cosets, lambda g, c: where[G.mul(g, reps[c])], check=False, name="cosets"
    )


def restrict_action(f, X):
    """View a G-set as an H-set along ``f : H -> G``."""
    if X.group != f.target:
        raise GroupMismatch("G-set is not over the homomorphism's target")
    return GSet(f.source, X.carrier, [X.table[t] for t in f.images], check=False)


def action_homomorphism(X, target=None):
    """The permutation representation ``G -> Sym(carrier)``.

    The target defaults to the image group, generated by the generator
    permutations; any group containing all of them may be passed instead.
    """
    n = len(X.carrier)
    if target is None:
        target = FiniteGroup(n, [p for p in X.generator_permutations() if not p.is_identity()])
    return Homomorphism(X.group, target, tuple(target.index(Permutation(row)) for row in X.table))


# -- quotients and fixed points -------------------------------------------------


def fixed_points(X):
    return X.fixed_points()


def orbits(X):
    return X.orbits()


def stabilizer(X, x):
    return X.stabilizer(x)


def action_groupoid(X):
    """The homotopy quotient ``X // G``: an arrow ``x -> g.x`` labelled by each g."""
    G = X.group
    arrows = [(x, X.table[g][x], g) for x in range(len(X.carrier)) for g in range(G.order)]
    return FiniteGroupoid(X.carrier, arrows, lambda b, a: G.mul(b, a), name="action")


def free_loop_groupoid(G):
    """``G^ad // G``, the free loop groupoid of BG."""
    return action_groupoid(adjoint_action(G))


def conjugacy_classes(G):
    return adjoint_action(G).orbits()


def conjugacy_class_indices(G):
    return adjoint_action(G).orbit_indices()


def center(G):
    return Subgroup(G, adjoint_action(G).fixed_points(), check=False)


def centralizer(G, x):
    return G.centralizer(G.index(x))


def coset_groupoid(f):
    """``G // H`` for the f-induced right action ``g -> g f(h)^-1`` of H on G."""
    H, G = f.source, f.target
    X = GSet.from_function(
        H, G.elements, lambda h, g: G.mul(g, G.inv(f.images[h])), check=False, name="induced-right"
    )
    return action_groupoid(X)


def _induced_map(f, X_H, X_G):
    """Functor ``X|_H // H -> X // G`` induced by ``f``."""
    anew = [X_G.arrow(X_H.src(a), f.images[X_H.label(a)]) for a in range(len(X_H.arrows))]
    return GroupoidMap(X_H, X_G, range(len(X_H.objects)), anew, check=False)


def _pushed_map(alpha, XG, YG):
    """Functor ``X // G -> Y // G`` induced by an equivariant map."""
    m = alpha.mapping
    anew = [YG.arrow(m[XG.src(a)], XG.label(a)) for a in range(len(XG.arrows))]
    return GroupoidMap(XG, YG, m, anew, check=False)


def action_pullback_corner(f, alpha):
    """Homotopy pullback of ``Y|_H // H -> Y // G <- X // G``."""
    X, Y = alpha.source, alpha.target
    if X.group != f.target:
        raise GroupMismatch("equivariant map is not over the homomorphism's target")
    XG, YG = action_groupoid(X), action_groupoid(Y)
    YH = action_groupoid(restrict_action(f, Y))
    return homotopy_pullback(_pushed_map(alpha, XG, YG), _induced_map(f, YH, YG))


def verify_action_pullback(f, alpha):
    """True iff ``X|_H // H`` is equivalent to the corner of the action square."""
    XH = action_groupoid(restrict_action(f, alpha.source))
    return are_equivalent(XH, action_pullback_corner(f, alpha)) is not None
