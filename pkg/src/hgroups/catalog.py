"""Named small groups used by the CLI and the test-suite."""

from __future__ import annotations

import re
from functools import lru_cache

from .constructions import (
    GroupActionOnGroup,
    alternating_group,
    direct_power,
    direct_product,
    semidirect_product,
)
from .group import (
    check_order_bound,
    get_order_cap,
    FiniteGroup,
    cyclic_group,
    dihedral_group,
    klein_four_group,
    quaternion_group,
    symmetric_group,
)
from .perm import Permutation


def hyperoctahedral_group(n):
    """Signed permutations of n coordinates, acting on the 2n points ``±e_i``.

    Point ``2i`` is ``+e_i`` and ``2i+1`` is ``-e_i``. For n = 3 this is the
    full symmetry group of the cube.
    """
    gens = []
    for i in range(n - 1):
        images = list(range(2 * n))
        images[2 * i], images[2 * i + 2] = 2 * i + 2, 2 * i
        images[2 * i + 1], images[2 * i + 3] = 2 * i + 3, 2 * i + 1
        gens.append(Permutation(images))
    flip = list(range(2 * n))
    flip[0], flip[1] = 1, 0
    gens.append(Permutation(flip))
    return FiniteGroup(2 * n, gens, name=f"B{n}" if n != 3 else "Oh")


def dicyclic3():
    """``C3 ⋊ C4`` with the generator of C4 inverting C3 (order 12)."""
    C4, C3 = cyclic_group(4), cyclic_group(3)
    data = GroupActionOnGroup.from_function(
        C4, C3, lambda h, n: n if C4.element_orders[h] in (1, 2) else C3.inv(n)
    )
    G = semidirect_product(data).group
    G.name = "Dic3"
    return G


def _named(name, G):
    G.name = name
    return G


_BUILDERS = {
    "C1": lambda: cyclic_group(1),
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "V4": klein_four_group,
    "C5": lambda: cyclic_group(5),
    "C6": lambda: cyclic_group(6),
    "S3": lambda: symmetric_group(3),
    "C7": lambda: cyclic_group(7),
    "C8": lambda: cyclic_group(8),
    "C2xC4": lambda: _named("C2xC4", direct_product(cyclic_group(2), cyclic_group(4))),
    "C2^3": lambda: _named("C2^3", direct_power(cyclic_group(2), 3)),
    "D4": lambda: dihedral_group(4),
    "Q8": quaternion_group,
    "C9": lambda: cyclic_group(9),
    "C3xC3": lambda: _named("C3xC3", direct_product(cyclic_group(3), cyclic_group(3))),
    "D5": lambda: dihedral_group(5),
    "C10": lambda: cyclic_group(10),
    "C12": lambda: cyclic_group(12),
    "C2xC6": lambda: _named("C2xC6", direct_product(cyclic_group(2), cyclic_group(6))),
    "A4": lambda: alternating_group(4).as_group(name="A4"),
    "D6": lambda: dihedral_group(6),
    "Dic3": dicyclic3,
    "S4": lambda: symmetric_group(4),
    "C2xA4": lambda: _named("C2xA4", direct_product(cyclic_group(2), alternating_group(4).as_group())),
    "D12": lambda: dihedral_group(12),
    "C3xS3": lambda: _named("C3xS3", direct_product(cyclic_group(3), symmetric_group(3))),
}


def catalog_group(name):
    """The catalog group called ``name``; parametrised families ``Sn An Cn Dn`` are built on demand."""
    return _catalog_group(name, get_order_cap())


@lru_cache(maxsize=None)
def _catalog_group(name, cap):
    if name in _BUILDERS:
        G = _BUILDERS[name]()
        G.name = name
        return G
    m = re.fullmatch(r"([SACD])(\d+)", name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise ValueError(f"bad catalog name {name!r}")
        if kind == "S":
            return symmetric_group(n)
        if kind == "C":
            return cyclic_group(n)
        if kind == "D":
            return dihedral_group(n)
        if n < 2:
            return _named(name, cyclic_group(1))
        check_order_bound(range(3, n + 1), name)
        return alternating_group(n).as_group(name=name)
    if name == "Oh":
        return hyperoctahedral_group(3)
    raise KeyError(name)


def catalog(max_order=None):
    """Catalog groups in a fixed order, optionally only those of order <= ``max_order``."""
    out = {}
    for name in _BUILDERS:
        G = catalog_group(name)
        if max_order is None or G.order <= max_order:
            out[name] = G
    return out
