"""The circle-operation group attached to a finite ring.

Under x o y = x + y + xy the ring is a monoid with neutral element 0; the
invertible elements of that monoid form a group.  For nilpotent rings the
group is the whole ring, which is asserted rather than assumed.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidStructureError
from .groups import FiniteGroup
from .rings import FiniteRing, nilpotency_class_ring


class AdjointGroup:
    """Circle group of a ring: a FiniteGroup plus the element dictionary.

    `members[i]` is the ring element at group index i; the zero element is
    always group index 0 (the neutral element of the circle operation).
    """

    def __init__(self, ring: FiniteRing):
        self.ring = ring
        circle = np.zeros((ring.order, ring.order), dtype=np.int32)
        for i, x in enumerate(ring.elements()):
            for j, y in enumerate(ring.elements()):
                circle[i, j] = ring.index(ring.circle(x, y))
        zero_idx = ring.index(ring.zero())
        left = set(np.flatnonzero((circle == zero_idx).any(axis=1)))
        right = set(np.flatnonzero((circle == zero_idx).any(axis=0)))
        member_idx = sorted(left & right)
        if zero_idx != member_idx[0]:
            raise InvalidStructureError("zero must be the first group member")
        for i in member_idx:
            if ring.quasi_inverse(ring.element(i)) is None:
                raise InvalidStructureError("one-sided circle inverse detected")
        pos = {ri: gi for gi, ri in enumerate(member_idx)}
        arr = np.array(member_idx)
        sub = circle[np.ix_(arr, arr)]
        try:
            table = np.array([[pos[int(v)] for v in row] for row in sub])
        except KeyError as exc:
            raise InvalidStructureError("circle product left the invertible set") from exc
        self.members = [ring.element(i) for i in member_idx]
        self.index_of = {m: gi for gi, m in enumerate(self.members)}
        self.group = FiniteGroup(table, identity=0, name=f"adj({ring.name})")
        if nilpotency_class_ring(ring) is not None and len(self.members) != ring.order:
            raise InvalidStructureError("nilpotent ring must be entirely quasi-invertible")

    @property
    def order(self) -> int:
        return len(self.members)

    def element_set(self) -> tuple:
        return tuple(sorted(self.members))


def adjoint_group(ring: FiniteRing) -> AdjointGroup:
    return AdjointGroup(ring)


def additive_group_of(ring: FiniteRing) -> FiniteGroup:
    """The underlying abelian group of the ring, in ring element order."""
    n = ring.order
    table = np.zeros((n, n), dtype=np.int32)
    for i, x in enumerate(ring.elements()):
        for j, y in enumerate(ring.elements()):
            table[i, j] = ring.index(ring.add(x, y))
    return FiniteGroup(table, identity=ring.index(ring.zero()), name=f"add({ring.name})")


def omega_circle_set(ring: FiniteRing, n: int) -> tuple:
    """Ring elements whose circle order divides p^n, as a sorted tuple.

    Computed directly from iterated circle powers, independently of the
    adjoint group construction, so the two can be cross-checked.
    """
    q = ring.p ** n
    zero = ring.zero()
    out = [x for x in ring.elements() if ring.adjoint_power(x, q) == zero]
    return tuple(sorted(out))
