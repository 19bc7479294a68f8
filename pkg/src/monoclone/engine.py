"""Bounded-universe fixpoint closure of monomial generator sets.

A clone is represented by the set of its canonical monomials whose
per-residue counts stay below a cap.  Closure runs the two elementary
operations (one-slot substitution on fresh variables and identification of
two variables) together with three sound saturation rewrites that keep the
capped universe faithful:

* count reduction: a block of q-1 equal exponents can be folded into any
  other variable, so a count may drop by q-1 whenever the rest is nonempty;
* tail saturation: a monomial of width >= 2 with at least one exponent q-1
  fixes its whole family of exponent-(q-1) tail lengths;
* full-clone shortcut: once x1*x2 is derived the clone is the largest one
  and the capped universe fills completely.

Whether a capped answer is trustworthy is reported, never assumed: closures
are re-run at enlarged caps and the ``stable`` flag records agreement on
the smaller universe.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import CapError, MonocloneError
from .fields import FieldParam
from .monomials import Monomial, from_counts, projection, reduce_exponent

BOX_CELL_LIMIT = 1 << 21
FFT_PAD_LIMIT = 1 << 24
DILATE_LOOP_LIMIT = 192
SPARSE_MEMBER_BUDGET = 200_000
PAIR_SEARCH_LIMIT = 48


@dataclass(frozen=True)
class CapPolicy:
    """Finite-universe policy: per-residue count bound plus the number of
    enlarged re-runs used to probe stability."""

    per_residue_cap: int
    stabilization_rounds: int = 2

    def __post_init__(self):
        if self.per_residue_cap < 2:
            raise MonocloneError("per_residue_cap must be at least 2")
        if self.stabilization_rounds < 1:
            raise MonocloneError("stabilization_rounds must be positive")


def default_cap(fp: FieldParam, generators: Iterable[Monomial]) -> CapPolicy:
    biggest = max((max(g.counts) for g in generators), default=1)
    return CapPolicy(per_residue_cap=2 * fp.modulus + biggest)


@dataclass(frozen=True)
class Membership:
    """Decision plus how much the cap heuristic is trusted for it."""

    value: bool
    confidence: str  # "exact" | "cap-limited"

    def __bool__(self) -> bool:
        return self.value


@dataclass(frozen=True)
class Clone:
    """Immutable capped closure of a monomial generator set."""

    fp: FieldParam
    generators: tuple[Monomial, ...]
    cap: CapPolicy
    members: frozenset[Monomial]
    stable: bool

    def __contains__(self, m: Monomial) -> bool:
        return m in self.members

    def sorted_members(self) -> list[Monomial]:
        return sorted(self.members)

    def member_vectors(self) -> frozenset[tuple[int, ...]]:
        return frozenset(m.counts for m in self.members)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in sorted(self.generators))
        return f"<Clone q={self.fp.q} <{gens}> size={len(self.members)}>"


# ---------------------------------------------------------------------------
# closure internals


def _nabla_vector(d: int) -> tuple[int, ...]:
    return (2,) + (0,) * (d - 1)


def _shift(S: np.ndarray, offsets) -> np.ndarray:
    """Translate a boolean box set by an integer vector, clipping at the
    box walls."""
    src, dst = [], []
    for n, off in zip(S.shape, offsets):
        if off >= 0:
            src.append(slice(0, n - off))
            dst.append(slice(off, n))
        else:
            src.append(slice(-off, n))
            dst.append(slice(0, n + off))
    out = np.zeros_like(S)
    if all(s.stop is None or s.stop > (s.start or 0) for s in src):
        out[tuple(dst)] = S[tuple(src)]
    return out


def _axis_coord(shape, axis):
    n = shape[axis]
    view = [1] * len(shape)
    view[axis] = n
    return np.arange(n).reshape(view)


def _dilate(base: np.ndarray, incs: np.ndarray) -> np.ndarray:
    """Minkowski sum of a box set with a list of nonnegative increment
    vectors, clipped to the box."""
    if not incs.size:
        return np.zeros_like(base)
    if len(incs) <= DILATE_LOOP_LIMIT:
        out = np.zeros_like(base)
        for inc in incs:
            out |= _shift(base, inc)
        return out
    from scipy import fft as sfft

    hi = incs.max(axis=0)
    pad = [sfft.next_fast_len(n + int(h)) for n, h in zip(base.shape, hi)]
    if np.prod(pad, dtype=np.int64) <= FFT_PAD_LIMIT:
        shape = tuple(int(h) + 1 for h in hi)
        B = np.zeros(shape, dtype=np.float64)
        B[tuple(incs.T)] = 1.0
        fa = sfft.rfftn(base.astype(np.float64), pad)
        fb = sfft.rfftn(B, pad)
        conv = sfft.irfftn(fa * fb, pad)
        return conv[tuple(slice(0, n) for n in base.shape)] > 0.5
    out = np.zeros_like(base)
    for inc in incs:
        out |= _shift(base, inc)
    return out


def _close_box(seeds: frozenset[tuple[int, ...]], fp: FieldParam, cap: int):
    d = fp.modulus
    shape = (cap + 1,) * d
    S = np.zeros(shape, dtype=bool)
    for v in seeds:
        S[v] = True
    S[(1,) + (0,) * (d - 1)] = True  # projection x1
    origin = (0,) * d
    nabla = _nabla_vector(d)
    width = sum(_axis_coord(shape, a) for a in range(d))
    mu = {r: tuple(reduce_exponent(r * s, fp) for s in range(1, d + 1))
          for r in range(1, d + 1)}

    identify_plans = []
    for r1 in range(1, d + 1):
        for r2 in range(r1, d + 1):
            t = reduce_exponent(r1 + r2, fp)
            off = [0] * d
            need = [0] * d
            off[r1 - 1] -= 1
            need[r1 - 1] += 1
            off[r2 - 1] -= 1
            need[r2 - 1] += 1
            off[t - 1] += 1
            masked = [a for a in range(d) if need[a] and off[a] >= 0]
            identify_plans.append((tuple(off), tuple((a, need[a]) for a in masked)))

    def saturate():
        while True:
            before = int(S.sum())
            # identification of two variables
            for off, masks in identify_plans:
                src = S
                for axis, k in masks:
                    src = src & (_axis_coord(shape, axis) >= k)
                S[:] |= _shift(src, off)
            # count reduction by q-1
            for a in range(d):
                off = [0] * d
                off[a] = -fp.modulus
                S[:] |= _shift(S, off)
            # exponent-(q-1) tail saturation
            tail_axis = d - 1
            T = S & (width >= 2)
            base = T[..., 1:].any(axis=-1) if d > 1 else bool(T[1:].any())
            if d > 1:
                S[..., 1:] |= np.asarray(base)[..., None]
                prefix_width = width[..., 0] if d > 1 else None
                S[..., 0] |= np.asarray(base) & (prefix_width >= 1)
            else:
                if base:
                    S[1:] = True
            S[origin] = False
            if int(S.sum()) == before:
                return

    def substitution_round(r: int) -> bool:
        grew = False
        off = [0] * d
        off[r - 1] = -1
        while True:
            member_mat = np.argwhere(S)
            push = np.zeros_like(member_mat)
            for s in range(1, d + 1):
                push[:, mu[r][s - 1] - 1] += member_mat[:, s - 1]
            push = push[np.all(push <= cap, axis=1)]
            if not push.size:
                return grew
            incs = np.unique(push, axis=0)
            base = _shift(S, off)
            dilated = _dilate(base, incs)
            dilated[origin] = False
            if not bool((dilated & ~S).any()):
                return grew
            S[:] |= dilated
            grew = True

    while True:
        saturate()
        if S[nabla]:
            S[:] = True
            S[origin] = False
            break
        grew = False
        for r in range(1, d + 1):
            if substitution_round(r):
                grew = True
        if not grew:
            break
    return frozenset(tuple(int(c) for c in v) for v in np.argwhere(S))


def _close_sparse(seeds: frozenset[tuple[int, ...]], fp: FieldParam, cap: int,
                  budget: int = SPARSE_MEMBER_BUDGET):
    d = fp.modulus
    e1 = (1,) + (0,) * (d - 1)
    nabla = _nabla_vector(d)
    mu = {r: tuple(reduce_exponent(r * s, fp) for s in range(1, d + 1))
          for r in range(1, d + 1)}
    members: set[tuple[int, ...]] = set()
    by_residue: dict[int, list[tuple[int, ...]]] = {r: [] for r in range(1, d + 1)}
    incs: dict[int, set[tuple[int, ...]]] = {r: set() for r in range(1, d + 1)}
    queue: deque[tuple[int, ...]] = deque()

    def add(vec):
        if vec in members or not any(vec):
            return
        if any(c > cap for c in vec):
            return
        if len(members) >= budget:
            raise CapError(
                "sparse closure exceeded its member budget; the clone is too "
                "large to materialize at this q and cap")
        members.add(vec)
        queue.append(vec)
        for r in range(1, d + 1):
            if vec[r - 1]:
                by_residue[r].append(vec)

    for v in seeds:
        if any(c > cap for c in v):
            raise CapError(f"generator {v} exceeds cap {cap}")
        add(v)
    add(e1)

    while queue:
        v = queue.popleft()
        if v == nabla:
            raise CapError(
                "closure reached the largest monomial clone; its capped "
                "member set is too large to materialize at this q")
        # count reduction
        for r in range(1, d + 1):
            if v[r - 1] >= fp.modulus:
                w = list(v)
                w[r - 1] -= fp.modulus
                add(tuple(w))
        # tail saturation
        if v[d - 1] >= 1 and sum(v) >= 2:
            prefix = v[:-1] + (0,)
            lo = 0 if any(prefix) else 1
            for n in range(lo, cap + 1):
                add(prefix[:-1] + (n,))
        # identification
        for r1 in range(1, d + 1):
            if not v[r1 - 1]:
                continue
            for r2 in range(r1, d + 1):
                need2 = 2 if r1 == r2 else 1
                if v[r2 - 1] < need2:
                    continue
                if sum(v) < 2:
                    continue
                t = reduce_exponent(r1 + r2, fp)
                w = list(v)
                w[r1 - 1] -= 1
                w[r2 - 1] -= 1
                w[t - 1] += 1
                add(tuple(w))
        # substitution, v as the outer monomial
        for r in range(1, d + 1):
            if v[r - 1]:
                for inc in list(incs[r]):
                    w = tuple(a - (i == r - 1) + b
                              for i, (a, b) in enumerate(zip(v, inc)))
                    add(w)
        # substitution, v as the inner monomial
        for r in range(1, d + 1):
            pv = [0] * d
            for s in range(1, d + 1):
                pv[mu[r][s - 1] - 1] += v[s - 1]
            pv = tuple(pv)
            if any(c > cap for c in pv) or pv in incs[r]:
                continue
            incs[r].add(pv)
            for u in list(by_residue[r]):
                w = tuple(a - (i == r - 1) + b
                          for i, (a, b) in enumerate(zip(u, pv)))
                add(w)
    return frozenset(members)


_closure_cache: dict[tuple, frozenset] = {}


def _closed_vectors(seeds: frozenset[tuple[int, ...]], fp: FieldParam,
                    cap: int) -> frozenset[tuple[int, ...]]:
    key = (fp.q, cap, seeds)
    hit = _closure_cache.get(key)
    if hit is not None:
        return hit
    if (cap + 1) ** fp.modulus <= BOX_CELL_LIMIT:
        result = _close_box(seeds, fp, cap)
    else:
        result = _close_sparse(seeds, fp, cap)
    _closure_cache[key] = result
    return result


# ---------------------------------------------------------------------------
# public operations


def generate(generators: Iterable[Monomial], fp: FieldParam,
             cap: CapPolicy | None = None) -> Clone:
    """Least capped monomial clone containing the generators."""
    gens = tuple(sorted(set(generators)))
    if not gens:
        raise MonocloneError("generator set must be nonempty")
    if any(len(g.counts) != fp.modulus for g in gens):
        raise MonocloneError("generator does not match q")
    if cap is None:
        cap = default_cap(fp, gens)
    if cap.per_residue_cap < 2 * fp.modulus:
        raise MonocloneError(
            f"per_residue_cap must be at least 2(q-1) = {2 * fp.modulus}")
    base_cap = cap.per_residue_cap
    if any(c > base_cap for g in gens for c in g.counts):
        raise CapError("cap too small to hold a generator")
    seeds = frozenset(g.counts for g in gens)
    base = _closed_vectors(seeds, fp, base_cap)
    stable = True
    previous = base
    for i in range(1, cap.stabilization_rounds + 1):
        # seeding with the previous run's members is sound (they lie in the
        # wider closure anyway) and skips re-deriving them
        wider = _closed_vectors(seeds | previous, fp, base_cap + i * fp.modulus)
        restricted = frozenset(v for v in wider if all(c <= base_cap for c in v))
        if restricted != base:
            stable = False
            break
        previous = wider
    members = frozenset(Monomial(v) for v in base)
    return Clone(fp=fp, generators=gens, cap=cap, members=members, stable=stable)


def member(m: Monomial, clone: Clone) -> Membership:
    """Bounded-universe membership decision."""
    if len(m.counts) != clone.fp.modulus:
        raise MonocloneError("monomial does not match the clone's q")
    if any(c > clone.cap.per_residue_cap for c in m.counts):
        raise CapError(
            f"monomial {m} exceeds the clone's cap "
            f"{clone.cap.per_residue_cap}; regenerate with a larger cap")
    return Membership(m in clone.members,
                      "exact" if clone.stable else "cap-limited")


def _aligned_pair(c1: Clone, c2: Clone) -> tuple[Clone, Clone]:
    if c1.fp.q != c2.fp.q:
        raise MonocloneError("clones live over different fields")
    cap = CapPolicy(
        per_residue_cap=max(c1.cap.per_residue_cap, c2.cap.per_residue_cap),
        stabilization_rounds=max(c1.cap.stabilization_rounds,
                                 c2.cap.stabilization_rounds),
    )
    a = c1 if c1.cap == cap else generate(c1.generators, c1.fp, cap)
    b = c2 if c2.cap == cap else generate(c2.generators, c2.fp, cap)
    return a, b


def subset(c1: Clone, c2: Clone) -> Membership:
    """Member-set inclusion at the aligned cap."""
    a, b = _aligned_pair(c1, c2)
    conf = "exact" if a.stable and b.stable else "cap-limited"
    return Membership(a.members <= b.members, conf)


def equal(c1: Clone, c2: Clone) -> Membership:
    a, b = _aligned_pair(c1, c2)
    conf = "exact" if a.stable and b.stable else "cap-limited"
    return Membership(a.members == b.members, conf)


def join(c1: Clone, c2: Clone) -> Clone:
    """Smallest clone containing both, regenerated at the aligned cap."""
    a, b = _aligned_pair(c1, c2)
    return generate(set(a.generators) | set(b.generators), a.fp, a.cap)


def meet(c1: Clone, c2: Clone) -> Clone:
    """Intersection of member sets at the aligned cap; the intersection of
    clones is again a clone, so no generator description is needed."""
    a, b = _aligned_pair(c1, c2)
    return clone_from_members(a.members & b.members, a.fp, a.cap,
                              stable=a.stable and b.stable)


def minimal_generators(member_vectors: frozenset[tuple[int, ...]],
                       fp: FieldParam, cap: CapPolicy) -> tuple[Monomial, ...]:
    """Greedy minimal generator set for a closed member set: smallest single
    generator, else smallest pair, else a greedy ascending chain.  Smallest
    means (width, exponent sum, count vector)."""
    target = member_vectors
    e1 = projection(fp).counts
    if target == frozenset({e1}):
        return (projection(fp),)
    order = sorted(target, key=lambda v: (sum(v), sum((i + 1) * c for i, c in enumerate(v)), v))
    candidates = [v for v in order if v != e1]
    c = cap.per_residue_cap
    for v in candidates:
        if _closed_vectors(frozenset({v}), fp, c) == target:
            return (Monomial(v),)
    head = candidates[:PAIR_SEARCH_LIMIT]
    for v, w in itertools.combinations(head, 2):
        if _closed_vectors(frozenset({v, w}), fp, c) == target:
            return (Monomial(v), Monomial(w))
    chosen: list[tuple[int, ...]] = []
    current = _closed_vectors(frozenset({e1}), fp, c)
    while current != target:
        nxt = next(v for v in candidates if v not in current)
        chosen.append(nxt)
        current = _closed_vectors(frozenset(chosen), fp, c)
    return tuple(Monomial(v) for v in chosen)


def clone_from_members(members: Iterable[Monomial], fp: FieldParam,
                       cap: CapPolicy, stable: bool) -> Clone:
    member_set = frozenset(members)
    vectors = frozenset(m.counts for m in member_set)
    gens = minimal_generators(vectors, fp, cap)
    return Clone(fp=fp, generators=gens, cap=cap, members=member_set,
                 stable=stable)


def congruence_clone_member(m: Monomial, b: int, fp: FieldParam) -> bool:
    """Membership in the clone of all monomials with exponent sum congruent
    to 1 modulo a divisor b of q-1."""
    if b < 1 or fp.modulus % b != 0:
        raise MonocloneError(f"{b} does not divide q-1 = {fp.modulus}")
    return m.exponent_sum() % b == 1 % b


def kd_clone_member(m: Monomial, D: Iterable[int], fp: FieldParam) -> bool:
    """Membership in the coatom determined by a nonempty set D of indices
    into the ascending prime divisors of q-1: some prime of D divides every
    exponent, or all exponents but at most one are divisible by the product
    of the D primes."""
    D = tuple(sorted(set(D)))
    if not D:
        raise MonocloneError("D must be nonempty")
    if any(i < 1 or i > len(fp.primes) for i in D):
        raise MonocloneError(f"D={D} outside 1..{len(fp.primes)}")
    exps = m.exponents()
    for i in D:
        p = fp.primes[i - 1]
        if all(e % p == 0 for e in exps):
            return True
    T = 1
    for i in D:
        T *= fp.primes[i - 1]
    divisible = sum(1 for e in exps if e % T == 0)
    return divisible >= m.width - 1


# ---------------------------------------------------------------------------
# serialization


def clone_to_json(clone: Clone) -> dict:
    return {
        "q": clone.fp.q,
        "cap": clone.cap.per_residue_cap,
        "stabilization_rounds": clone.cap.stabilization_rounds,
        "stable": clone.stable,
        "generators": [
            {str(r): g.count(r) for r in g.residues()}
            for g in sorted(clone.generators)
        ],
        "members": [
            {str(r): m.count(r) for r in m.residues()}
            for m in clone.sorted_members()
        ],
    }


def clone_from_json(obj: Mapping, fp: FieldParam | None = None) -> Clone:
    if fp is None:
        fp = FieldParam.from_q(int(obj["q"]))
    elif fp.q != int(obj["q"]):
        raise MonocloneError(f"clone JSON is for q={obj['q']}, expected {fp.q}")
    cap = CapPolicy(int(obj["cap"]), int(obj.get("stabilization_rounds", 2)))
    gens = tuple(sorted(
        from_counts({int(r): int(c) for r, c in g.items()}, fp)
        for g in obj["generators"]))
    members = frozenset(
        from_counts({int(r): int(c) for r, c in m.items()}, fp)
        for m in obj["members"])
    return Clone(fp=fp, generators=gens, cap=cap, members=members,
                 stable=bool(obj["stable"]))
