"""Count-vector sets closed under shedding blocks of q-1 equal exponents,
their decomposition into downward-closed slices, and the order embedding of
clones into them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .engine import Clone
from .errors import MonocloneError
from .fields import FieldParam


@dataclass(frozen=True)
class QMinorSet:
    """Bounded set of count vectors containing the origin and closed under
    subtracting multiples of q-1 coordinatewise."""

    q: int
    bound: int
    points: frozenset[tuple[int, ...]]

    def __post_init__(self):
        d = self.q - 1
        zero = (0,) * d
        if zero not in self.points:
            raise MonocloneError("a q-minor set must contain the origin")
        step = self.q - 1
        for p in self.points:
            if len(p) != d or any(c < 0 or c > self.bound for c in p):
                raise MonocloneError(f"point {p} outside the bound box")
            for axis in range(d):
                if p[axis] >= step:
                    down = p[:axis] + (p[axis] - step,) + p[axis + 1:]
                    if down not in self.points:
                        raise MonocloneError(
                            f"{p} lacks its reduction {down}; not a q-minor set")


def phi_minor(clone: Clone) -> QMinorSet:
    """Exponent-count vectors of all members, plus the origin."""
    d = clone.fp.modulus
    points = {m.counts for m in clone.members} | {(0,) * d}
    return QMinorSet(q=clone.fp.q, bound=clone.cap.per_residue_cap,
                     points=frozenset(points))


def minor_M(b: tuple[int, ...], s: QMinorSet) -> frozenset[tuple[int, ...]]:
    """Preimage slice at offset b: all t with b + (q-1)*t in the set.
    Always downward closed in the product order."""
    step = s.q - 1
    d = s.q - 1
    if len(b) != d or any(not 0 <= c <= s.q - 2 for c in b):
        raise MonocloneError(f"offset {b} outside {{0..q-2}}^(q-1)")
    ranges = [range((s.bound - b[i]) // step + 1) for i in range(d)]
    return frozenset(
        t for t in itertools.product(*ranges)
        if tuple(b[i] + step * t[i] for i in range(d)) in s.points)


def is_downward_closed(points: frozenset[tuple[int, ...]]) -> bool:
    for p in points:
        for axis in range(len(p)):
            if p[axis] > 0:
                down = p[:axis] + (p[axis] - 1,) + p[axis + 1:]
                if down not in points:
                    return False
    return True


def embedding_check(s1: QMinorSet, s2: QMinorSet) -> bool:
    """Containment of q-minor sets, cross-checked against the slicewise
    containment of all offset preimages."""
    if s1.q != s2.q:
        raise MonocloneError("q-minor sets over different q")
    if s1.bound != s2.bound:
        raise MonocloneError("q-minor sets with different bounds")
    direct = s1.points <= s2.points
    d = s1.q - 1
    sliced = all(minor_M(b, s1) <= minor_M(b, s2)
                 for b in itertools.product(range(s1.q - 1), repeat=d))
    if direct != sliced:
        raise MonocloneError("slice decomposition disagrees with containment")
    return direct


def minorset_to_json(s: QMinorSet) -> dict:
    return {
        "q": s.q,
        "bound": s.bound,
        "points": sorted(list(p) for p in s.points),
    }


def poset_width(relation: list[list[bool]]) -> int:
    """Size of a maximum antichain of a finite poset given as a strict
    order matrix, via the chain-cover dual (bipartite matching)."""
    n = len(relation)
    match_right: list[int | None] = [None] * n

    def augment(u: int, seen: list[bool]) -> bool:
        for v in range(n):
            if relation[u][v] and not seen[v]:
                seen[v] = True
                if match_right[v] is None or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    matching = 0
    for u in range(n):
        if augment(u, [False] * n):
            matching += 1
    return n - matching
