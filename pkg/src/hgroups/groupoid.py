"""Finite groupoids: homotopy quotients, fibers and pullbacks at truncation one.

A :class:`FiniteGroupoid` keeps an explicit table of labelled arrows. The
composition of two arrows is determined by their labels through a
``compose(second, first)`` callable, and the arrow with the resulting label
out of the first arrow's source is looked up. All groupoids built in this
package satisfy that "labels determine composition" contract; ``validate``
checks it together with the category and inverse laws.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import InvalidGroupoid, ObjectNotFound
from .group import FiniteGroup, Homomorphism, are_isomorphic
from .perm import Permutation


class FiniteGroupoid:
    def __init__(self, objects, arrows, compose, *, check=False, name=None):
        self.objects = tuple(objects)
        self.arrows = tuple((int(s), int(t), lab) for s, t, lab in arrows)
        self._compose = compose
        self.name = name
        self._obj_index = {o: i for i, o in enumerate(self.objects)}
        if len(self._obj_index) != len(self.objects):
            raise InvalidGroupoid("object labels must be distinct")
        self._lookup = {}
        self._out = [[] for _ in self.objects]
        for a, (s, t, lab) in enumerate(self.arrows):
            if (s, lab) in self._lookup:
                raise InvalidGroupoid(f"duplicate arrow label {lab!r} out of object {s}")
            self._lookup[(s, lab)] = a
            self._out[s].append(a)
        self._identities = {}
        self._inverses = {}
        self._components = None
        if check:
            self.validate()

    def __repr__(self):
        tag = self.name or "FiniteGroupoid"
        return f"<{tag} objects={len(self.objects)} arrows={len(self.arrows)}>"

    # -- structure -----------------------------------------------------------

    def object_index(self, label):
        try:
            return self._obj_index[label]
        except KeyError:
            raise ObjectNotFound(f"no object {label!r}") from None

    def src(self, a):
        return self.arrows[a][0]

    def dst(self, a):
        return self.arrows[a][1]

    def label(self, a):
        return self.arrows[a][2]

    def out_arrows(self, x):
        return self._out[x]

    def hom(self, x, y):
        return [a for a in self._out[x] if self.arrows[a][1] == y]

    def loops(self, x):
        return self.hom(x, x)

    def arrow(self, x, label):
        """Index of the arrow with ``label`` out of object index ``x``."""
        return self._lookup[(x, label)]

    def compose(self, b, a):
        """Index of ``b ∘ a`` (first ``a``, then ``b``)."""
        sa, ta, la = self.arrows[a]
        sb, _, lb = self.arrows[b]
        if ta != sb:
            raise InvalidGroupoid(f"arrows {a} and {b} are not composable")
        try:
            return self._lookup[(sa, self._compose(lb, la))]
        except KeyError:
            raise InvalidGroupoid("composite label has no arrow") from None

    def compose_labels(self, second, first):
        return self._compose(second, first)

    def identity(self, x):
        if x not in self._identities:
            for e in self.loops(x):
                if self.compose(e, e) == e:
                    self._identities[x] = e
                    break
            else:
                raise InvalidGroupoid(f"object {x} has no identity arrow")
        return self._identities[x]

    def inverse(self, a):
        if a not in self._inverses:
            s, t, _ = self.arrows[a]
            e = self.identity(s)
            for b in self.hom(t, s):
                if self.compose(b, a) == e:
                    self._inverses[a] = b
                    break
            else:
                raise InvalidGroupoid(f"arrow {a} has no inverse")
        return self._inverses[a]

    def validate(self):
        """Check unit, associativity and inverse laws over all composable data."""
        n = len(self.objects)
        for a, (s, t, _) in enumerate(self.arrows):
            if not (0 <= s < n and 0 <= t < n):
                raise InvalidGroupoid(f"arrow {a} has an endpoint outside the object set")
        for a, (s, t, _) in enumerate(self.arrows):
            for b in self._out[t]:
                c = self.compose(b, a)
                if self.arrows[c][0] != s or self.arrows[c][1] != self.arrows[b][1]:
                    raise InvalidGroupoid("composite has the wrong endpoints")
        for x in range(n):
            e = self.identity(x)
            for a in self._out[x]:
                if self.compose(a, e) != a:
                    raise InvalidGroupoid("right unit law fails")
        for a, (s, t, _) in enumerate(self.arrows):
            if self.compose(self.identity(t), a) != a:
                raise InvalidGroupoid("left unit law fails")
            b = self.inverse(a)
            if self.compose(a, b) != self.identity(t):
                raise InvalidGroupoid("inverse is not two-sided")
        for a, (_, t, _) in enumerate(self.arrows):
            for b in self._out[t]:
                ba = self.compose(b, a)
                for c in self._out[self.arrows[b][1]]:
                    if self.compose(c, ba) != self.compose(self.compose(c, b), a):
                        raise InvalidGroupoid("associativity fails")
        return True

    # -- invariants -------------------------------------------------------------

    def connected_components(self):
        """Blocks of object indices, each sorted, ordered by least member."""
        if self._components is None:
            parent = list(range(len(self.objects)))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for s, t, _ in self.arrows:
                rs, rt = find(s), find(t)
                if rs != rt:
                    parent[max(rs, rt)] = min(rs, rt)
            blocks = {}
            for x in range(len(self.objects)):
                blocks.setdefault(find(x), []).append(x)
            self._components = sorted(blocks.values(), key=lambda b: b[0])
        return self._components

    def is_connected(self):
        return len(self.connected_components()) == 1

    def automorphism_group(self, x):
        """Loops at object ``x`` re-encoded through their left-regular action."""
        if not 0 <= x < len(self.objects):
            raise ObjectNotFound(f"no object with index {x}")
        return self.automorphism_group_with_loops(x)[0]

    def automorphism_group_with_loops(self, x):
        """``(group, loops)``; loop ``a`` acts on positions by ``b -> a ∘ b``.

        A group element ``p`` is the loop ``loops[p(k)]``, ``k`` being the
        position of the identity loop.
        """
        loops = self.loops(x)
        pos = {a: i for i, a in enumerate(loops)}
        perms = [Permutation([pos[self.compose(a, b)] for b in loops]) for a in loops]
        gens = [p for p in perms if not p.is_identity()]
        return FiniteGroup(len(loops), gens), loops


def automorphism_group(X, obj):
    """Automorphism group at an object given by label."""
    return X.automorphism_group(X.object_index(obj))


def connected_components(X):
    return X.connected_components()


class GroupoidMap:
    """A functor between finite groupoids, given by object and arrow tables."""

    def __init__(self, source, target, object_map, arrow_map, *, check=True):
        self.source = source
        self.target = target
        self.object_map = tuple(object_map)
        self.arrow_map = tuple(arrow_map)
        if check:
            self.validate()

    def validate(self):
        S, T = self.source, self.target
        if len(self.object_map) != len(S.objects) or len(self.arrow_map) != len(S.arrows):
            raise InvalidGroupoid("map tables have the wrong size")
        for a, (s, t, _) in enumerate(S.arrows):
            fa = self.arrow_map[a]
            if T.src(fa) != self.object_map[s] or T.dst(fa) != self.object_map[t]:
                raise InvalidGroupoid("arrow map does not respect endpoints")
        for x in range(len(S.objects)):
            if self.arrow_map[S.identity(x)] != T.identity(self.object_map[x]):
                raise InvalidGroupoid("identity not preserved")
        for a, (_, t, _) in enumerate(S.arrows):
            for b in S.out_arrows(t):
                if self.arrow_map[S.compose(b, a)] != T.compose(self.arrow_map[b], self.arrow_map[a]):
                    raise InvalidGroupoid("composition not preserved")
        return True


# -- standard groupoids ----------------------------------------------------------


def classifying_groupoid(G):
    """``BG``: one object, arrows labelled by element indices, composition = product."""
    return FiniteGroupoid(
        ["*"], [(0, 0, g) for g in range(G.order)], lambda b, a: G.mul(b, a), name=f"B{G.name or 'G'}"
    )


def discrete_groupoid(objects):
    objects = list(objects)
    return FiniteGroupoid(objects, [(i, i, "id") for i in range(len(objects))], lambda b, a: "id")


def point_groupoid():
    return discrete_groupoid(["*"])


def classifying_map(f, source=None, target=None):
    """``Bf : BH -> BG`` for a homomorphism ``f : H -> G``."""
    BH = source if source is not None else classifying_groupoid(f.source)
    BG = target if target is not None else classifying_groupoid(f.target)
    return GroupoidMap(BH, BG, [0], [f.images[h] for h in range(f.source.order)], check=False)


def point_inclusion(X, x=0):
    """The map from the one-point groupoid picking out object index ``x``."""
    return GroupoidMap(point_groupoid(), X, [x], [X.identity(x)], check=False)


def homotopy_fiber(f):
    """Fiber of ``Bf`` for ``f : H -> G``.

    Objects are the elements of G (by index); ``h`` labels an arrow
    ``g -> g f(h)``. Composition multiplies labels in H.
    """
    H, G = f.source, f.target
    arrows = [(g, G.mul(g, f.images[h]), h) for g in range(G.order) for h in range(H.order)]
    return FiniteGroupoid(range(G.order), arrows, lambda b, a: H.mul(a, b), name="hofiber")


def homotopy_pullback(f, g):
    """Corner of the homotopy pullback of ``f : X -> Z`` and ``g : Y -> Z``.

    Objects are triples ``(x, y, phi)`` with ``phi : f x -> g y`` in Z; an
    arrow is a pair ``(a, b)`` of arrows in X and Y with
    ``phi' ∘ f(a) == g(b) ∘ phi``.
    """
    X, Y, Z = f.source, g.source, f.target
    if g.target is not Z and g.target.objects != Z.objects:
        raise InvalidGroupoid("maps do not share a target")
    objs = []
    where = {}
    for x in range(len(X.objects)):
        fx = f.object_map[x]
        for y in range(len(Y.objects)):
            for phi in Z.hom(fx, g.object_map[y]):
                where[(x, y, phi)] = len(objs)
                objs.append((x, y, phi))
    arrows = []
    for i, (x, y, phi) in enumerate(objs):
        for a in X.out_arrows(x):
            fa_inv = Z.inverse(f.arrow_map[a])
            for b in Y.out_arrows(y):
                phi2 = Z.compose(g.arrow_map[b], Z.compose(phi, fa_inv))
                j = where[(X.dst(a), Y.dst(b), phi2)]
                arrows.append((i, j, (X.label(a), Y.label(b))))
    labels = [(X.objects[x], Y.objects[y], Z.label(phi)) for x, y, phi in objs]
    comp = lambda second, first: (
        X.compose_labels(second[0], first[0]),
        Y.compose_labels(second[1], first[1]),
    )
    return FiniteGroupoid(labels, arrows, comp, name="hopullback")


@dataclass
class Equivalence:
    """Witness of an equivalence: matched components and isomorphisms of their vertex groups."""

    component_pairs: list = field(default_factory=list)
    isomorphisms: list = field(default_factory=list)

    def __bool__(self):
        return True


def _component_data(X):
    comps = X.connected_components()
    groups = [X.automorphism_group(block[0]) for block in comps]
    return comps, groups


def are_equivalent(X, Y):
    """An :class:`Equivalence` if X and Y are equivalent groupoids, else ``None``.

    Finite groupoids are equivalent iff their components can be matched with
    isomorphic automorphism groups; isomorphism classes are cliques, so a
    greedy match is complete.
    """
    cx, gx = _component_data(X)
    cy, gy = _component_data(Y)
    if len(cx) != len(cy):
        return None
    used = [False] * len(cy)
    pairs = []
    isos = []
    for i, G in enumerate(gx):
        for j, H in enumerate(gy):
            if used[j]:
                continue
            iso = are_isomorphic(G, H)
            if iso is not None:
                used[j] = True
                pairs.append((i, j))
                isos.append(iso)
                break
        else:
            return None
    return Equivalence(pairs, isos)


def summarize(X):
    """Component sizes and vertex-group orders in component order."""
    comps, groups = _component_data(X)
    return [{"size": len(b), "automorphism_order": G.order} for b, G in zip(comps, groups)]


def _jsonable(label):
    if isinstance(label, tuple):
        return [_jsonable(x) for x in label]
    if isinstance(label, (int, str)):
        return label
    return str(label)


def composition_digest(X):
    """SHA-256 over the full composition table in arrow-index order."""
    h = hashlib.sha256()
    for a, (_, t, _) in enumerate(X.arrows):
        for b in X.out_arrows(t):
            h.update(f"{b},{a}>{X.compose(b, a)};".encode())
    return h.hexdigest()


def groupoid_document(X):
    """Deterministic JSON-ready description of a groupoid."""
    return {
        "objects": [_jsonable(o) for o in X.objects],
        "arrows": [[s, t, _jsonable(lab)] for s, t, lab in X.arrows],
        "components": summarize(X),
        "composition_sha256": composition_digest(X),
    }
