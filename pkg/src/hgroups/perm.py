"""Permutations of {0, ..., degree-1}.

Composition is right-to-left: ``(p * q)(x) == p(q(x))``.
"""

from __future__ import annotations

import re
from functools import total_ordering
from math import gcd

from .errors import NonBijectiveGenerator, ParseError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@total_ordering
class Permutation:
    """An immutable bijection given by its image sequence."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise NonBijectiveGenerator(
                f"{list(images)} is not a bijection on {{0..{len(images) - 1}}}",
                images=list(images),
            )
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree, cycles):
        """Build from an iterable of cycles, e.g. ``[(0, 1, 2), (3, 4)]``."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            cycle = [int(c) for c in cycle]
            for c in cycle:
                if not 0 <= c < degree or c in seen:
                    raise NonBijectiveGenerator(
                        f"cycle {tuple(cycle)} invalid for degree {degree}",
                        cycle=cycle,
                    )
                seen.add(c)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, text, degree):
        """Parse cycle notation ``(0 1 2)(3 4)`` or an image list ``[1,0,2]``.

        ``()`` denotes the identity.
        """
        text = text.strip()
        if text.startswith("["):
            if not text.endswith("]"):
                raise ParseError(f"unterminated image list: {text!r}")
            body = text[1:-1].strip()
            try:
                images = [int(t) for t in re.split(r"[,\s]+", body)] if body else []
            except ValueError:
                raise ParseError(f"bad image list: {text!r}") from None
            if len(images) != degree:
                raise ParseError(f"image list {text!r} has length {len(images)}, expected {degree}")
            return cls(images)
        if not text.startswith("(") or _CYCLE_RE.sub("", text).strip():
            raise ParseError(f"bad permutation syntax: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            tokens = [t for t in re.split(r"[,\s]+", body.strip()) if t]
            try:
                cycles.append([int(t) for t in tokens])
            except ValueError:
                raise ParseError(f"bad cycle {body!r}") from None
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        a = self.images
        return Permutation._unchecked(tuple(a[x] for x in other.images))

    def __invert__(self):
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._unchecked(tuple(inv))

    inverse = __invert__

    def __pow__(self, n):
        result = Permutation._unchecked(tuple(range(self.degree)))
        base = self if n >= 0 else ~self
        n = abs(n)
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    @classmethod
    def _unchecked(cls, images):
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles, each starting at its least point, ordered by that point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self.images[x]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self):
        n = 1
        for c in self.cycles():
            n = n * len(c) // gcd(n, len(c))
        return n

    def cycle_string(self):
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __str__(self):
        return self.cycle_string()
