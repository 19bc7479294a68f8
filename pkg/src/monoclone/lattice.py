"""Lattice structure: enumeration for small q, closed-form atoms and
coatoms, the divisor-lattice interval at the top, ascending chains, and the
idempotent interval with its single-generator construction."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import derive
from .engine import (BOX_CELL_LIMIT, CapPolicy, Clone, clone_from_members,
                     default_cap, generate, join, kd_clone_member, meet,
                     member, subset)
from .errors import CapError, MonocloneError
from .fields import FieldParam, divisors, is_prime
from .hasse import HasseDiagram, build_diagram
from .monomials import (Monomial, all_monomials, canonicalize, from_counts,
                        is_idempotent, projection, reduce_exponent)


def delta(fp: FieldParam, cap: CapPolicy | None = None) -> Clone:
    return generate([projection(fp)], fp, cap)


def nabla(fp: FieldParam, cap: CapPolicy | None = None) -> Clone:
    return generate([from_counts({1: 2}, fp)], fp, cap)


def lattice_is_finite(fp: FieldParam) -> bool:
    """The lattice of monomial clones is finite exactly when q-1 is
    square-free."""
    return fp.squarefree


# ---------------------------------------------------------------------------
# enumeration


def _node_set_closure(initial: Iterable[Clone], fp: FieldParam,
                      max_nodes: int) -> list[Clone]:
    """Close a set of clones under pairwise join and meet, deduplicating by
    member set."""
    nodes: dict[frozenset, Clone] = {}
    fresh: list[Clone] = []

    def add(c: Clone):
        if c.members not in nodes:
            if len(nodes) >= max_nodes:
                raise CapError(f"node closure exceeded {max_nodes} nodes")
            nodes[c.members] = c
            fresh.append(c)

    for c in initial:
        add(c)
    processed: list[Clone] = []
    while fresh:
        batch, fresh = fresh, []
        for new in batch:
            for old in processed + [new]:
                if new.members <= old.members or old.members <= new.members:
                    continue  # join and meet are the pair itself
                add(join(new, old))
                add(meet(new, old))
            processed.append(new)
    return [_relabeled(c) for c in nodes.values()]


def _relabeled(c: Clone) -> Clone:
    """Swap in the greedy minimal generator set as the node label."""
    from dataclasses import replace

    from .engine import minimal_generators

    gens = minimal_generators(c.member_vectors(), c.fp, c.cap)
    return replace(c, generators=gens)


def enumerate_lattice(fp: FieldParam, width_bound: int | None = None,
                      cap: CapPolicy | None = None,
                      max_nodes: int = 500) -> HasseDiagram:
    """Clones generated by all monomials up to the width bound, closed under
    join and meet.  Complete exactly when q-1 is square-free and the bound
    suffices; otherwise the diagram is an explicitly partial sub-lattice
    carrying an ascending-chain witness."""
    wb = width_bound if width_bound is not None else fp.q
    seeds = list(all_monomials(fp, wb))
    if cap is None:
        cap = CapPolicy(2 * fp.modulus + max(wb, 2))
    initial = [delta(fp, cap)]
    initial += [generate([m], fp, cap) for m in seeds]
    nodes = _node_set_closure(initial, fp, max_nodes)
    witness: tuple = ()
    if not fp.squarefree:
        k = _least_square_divisor(fp)
        d = fp.modulus // k
        witness = tuple(from_counts({d: k * i + 1}, fp) for i in range(3))
    return build_diagram(nodes, complete=fp.squarefree, chain_witness=witness)


# ---------------------------------------------------------------------------
# atoms and coatoms


def atoms(fp: FieldParam, cap: CapPolicy | None = None) -> tuple[Clone, ...]:
    """The closed-form atoms: the clone of x1*x2^(q-1), plus the unary-power
    clones for s with s^P = 1 mod q-1 for some prime P or s*s = s mod q-1."""
    mod = fp.modulus
    result = [generate([canonicalize([1, mod], fp)], fp, cap)]
    for s in range(2, mod + 1):
        power_cond = any(pow(s, P, mod) == 1 % mod
                         for P in range(2, mod + 1) if is_prime(P))
        idem_cond = (s * s) % mod == s % mod
        if power_cond or idem_cond:
            result.append(generate([from_counts({s: 1}, fp)], fp, cap))
    return tuple(sorted(result, key=lambda c: sorted(c.generators)))


@dataclass(frozen=True)
class CoatomDescriptor:
    """Either the interval coatom for one prime divisor of q-1 (generated
    by the all-ones monomial of width 1+P) or the K_D coatom for a nonempty
    set D of prime indices, with exact predicate membership."""

    kind: str  # "interval" | "kd"
    prime: int | None = None
    D: tuple[int, ...] = ()

    def label(self, fp: FieldParam) -> str:
        if self.kind == "interval":
            return f"x1...x{1 + self.prime} clone"
        primes = [fp.primes[i - 1] for i in self.D]
        return f"K_D for primes {primes}"

    def contains(self, m: Monomial, fp: FieldParam) -> bool:
        if self.kind == "interval":
            return m.exponent_sum() % self.prime == 1 % self.prime
        return kd_clone_member(m, self.D, fp)

    def clone(self, fp: FieldParam, cap: CapPolicy | None = None) -> Clone:
        """Materialize within the capped universe.

        Interval coatoms are generated; K_D coatoms are swept from the exact
        predicate, with the defining generator family as the label."""
        if self.kind == "interval":
            return generate([from_counts({1: 1 + self.prime}, fp)], fp, cap)
        T = math.prod(fp.primes[i - 1] for i in self.D)
        if cap is None:
            cap = CapPolicy(2 * fp.modulus + max(T + 1, 2))
        c = cap.per_residue_cap
        if (c + 1) ** fp.modulus > BOX_CELL_LIMIT:
            raise CapError("K_D member sweep is too large at this q")
        members = [m for m in _universe(fp, c) if self.contains(m, fp)]
        gens: set[Monomial] = {from_counts({t: 1}, fp)
                               for t in range(2, fp.modulus + 1)}
        gens |= {from_counts({reduce_exponent(fp.primes[i - 1], fp): n}, fp)
                 for i in self.D for n in range(2, c + 1)}
        gens.add(from_counts({1: 1, reduce_exponent(T, fp): 1}, fp))
        return Clone(fp=fp, generators=tuple(sorted(gens)), cap=cap,
                     members=frozenset(members), stable=True)


def _universe(fp: FieldParam, cap: int):
    d = fp.modulus
    for vec in itertools.product(range(cap + 1), repeat=d):
        if any(vec):
            yield Monomial(vec)


def coatoms(fp: FieldParam) -> tuple[CoatomDescriptor, ...]:
    """All 2^l - 1 + l coatoms, l the number of prime divisors of q-1."""
    if fp.q <= 2:
        raise MonocloneError("q=2 has no coatoms: the top covers the bottom")
    out = [CoatomDescriptor(kind="interval", prime=P) for P in fp.primes]
    indices = range(1, len(fp.primes) + 1)
    for size in range(1, len(fp.primes) + 1):
        for D in itertools.combinations(indices, size):
            out.append(CoatomDescriptor(kind="kd", D=D))
    return tuple(out)


def coatom_member(m: Monomial, D: Iterable[int], fp: FieldParam) -> bool:
    """Exact membership in the K_D coatom."""
    return kd_clone_member(m, D, fp)


# ---------------------------------------------------------------------------
# the divisor interval at the top


@dataclass(frozen=True)
class DivisorInterval:
    """The interval between the widest idempotent clone and the top, indexed
    by divisors of q-1; inclusion runs against divisibility."""

    fp: FieldParam
    divisors: tuple[int, ...]
    clones: Mapping[int, Clone]
    inclusions: Mapping[tuple[int, int], bool]
    anti_isomorphic: bool
    exact: bool

    def clone_of(self, a: int) -> Clone:
        return self.clones[a]


def divisor_interval(fp: FieldParam, cap: CapPolicy | None = None) -> DivisorInterval:
    if fp.q < 3:
        raise MonocloneError("the divisor interval needs q >= 3")
    divs = tuple(divisors(fp.modulus))
    gens = {a: from_counts({1: a + 1}, fp) for a in divs}
    if cap is None:
        cap = CapPolicy(2 * fp.modulus + fp.q)
    box = (cap.per_residue_cap + 1) ** fp.modulus
    inclusions: dict[tuple[int, int], bool] = {}
    if box <= BOX_CELL_LIMIT:
        clones = {a: generate([gens[a]], fp, cap) for a in divs}
        exact = all(c.stable for c in clones.values())
        for a, b in itertools.product(divs, repeat=2):
            inclusions[(a, b)] = bool(subset(clones[a], clones[b]))
    else:
        # certificate route: C(a) <= C(b) iff the generator of C(a) lies in
        # C(b); witnessed by a replayed pump derivation, refuted by an
        # exponent-sum congruence invariant.
        exact = True
        clones = {}
        for a in divs:
            members = {projection(fp)}
            members |= {from_counts({1: 1 + t * a}, fp)
                        for t in range(1, cap.per_residue_cap // a + 1)
                        if 1 + t * a <= cap.per_residue_cap}
            clones[a] = Clone(fp=fp, generators=(gens[a],), cap=cap,
                              members=frozenset(members), stable=False)
        for a, b in itertools.product(divs, repeat=2):
            if a == b:
                inclusions[(a, b)] = True
                continue
            d = derive.prove_allones_pump(1 + a, [1 + b], fp)
            if d is not None and derive.verify_membership(d, gens[a], [gens[b]], fp):
                inclusions[(a, b)] = True
                continue
            reason = derive.refute_member(gens[a], [gens[b]], fp)
            if reason is None:
                raise MonocloneError(
                    f"could not decide C({a}) vs C({b}) at q={fp.q}")
            inclusions[(a, b)] = False
    anti = all(inclusions[(a, b)] == (a % b == 0)
               for a, b in itertools.product(divs, repeat=2))
    return DivisorInterval(fp=fp, divisors=divs, clones=clones,
                           inclusions=inclusions, anti_isomorphic=anti,
                           exact=exact)


# ---------------------------------------------------------------------------
# ascending chains


def _least_square_divisor(fp: FieldParam) -> int:
    for k in range(2, fp.modulus + 1):
        if fp.modulus % (k * k) == 0:
            return k
    raise MonocloneError(
        f"q-1 = {fp.modulus} is square-free, so every ascending chain of "
        f"monomial clones on F_{fp.q} is finite")


def ascending_chain(fp: FieldParam, n: int, cap: CapPolicy | None = None
                    ) -> tuple[Clone, ...]:
    """The strictly ascending chain of clones of d-th-power blocks, d =
    (q-1)/k for the least k whose square divides q-1.  Strictness of every
    step is verified on the capped member sets."""
    if n < 1:
        raise MonocloneError("chain length must be positive")
    k = _least_square_divisor(fp)
    d = fp.modulus // k
    gens = [from_counts({d: k * i + 1}, fp) for i in range(n)]
    if cap is None:
        cap = CapPolicy(2 * fp.modulus + k * (n - 1) + 1)
    chain = [generate([g], fp, cap) for g in gens]
    for i in range(n - 1):
        if not subset(chain[i], chain[i + 1]):
            raise MonocloneError(f"chain inclusion failed at step {i}")
        if member(gens[i + 1], chain[i]).value:
            raise MonocloneError(f"chain is not strict at step {i}")
    return tuple(chain)


# ---------------------------------------------------------------------------
# the idempotent interval


def idempotent_interval(fp: FieldParam, cap: CapPolicy | None = None,
                        width_bound: int | None = None,
                        max_nodes: int = 500) -> HasseDiagram:
    """The interval from the projection clone to the clone of all idempotent
    monomials, enumerated from idempotent generators and closed under join
    and meet.  Every node other than the bottom must contain x1*x2^(q-1)."""
    wb = width_bound if width_bound is not None else fp.q
    if cap is None:
        cap = CapPolicy(2 * fp.modulus + max(wb, fp.q))
    seeds = [m for m in all_monomials(fp, wb) if is_idempotent(m, fp)]
    initial = [delta(fp, cap), generate([from_counts({1: fp.q}, fp)], fp, cap)]
    initial += [generate([m], fp, cap) for m in seeds]
    nodes = _node_set_closure(initial, fp, max_nodes)
    bottom_members = delta(fp, cap).members
    witness = canonicalize([1, fp.modulus], fp)
    for node in nodes:
        if node.members != bottom_members and witness not in node.members:
            raise MonocloneError(
                f"idempotent clone {node!r} misses x1*x2^{fp.modulus}")
    return build_diagram(nodes, complete=wb >= fp.q)


def single_generator(m1: Monomial, m2: Monomial, fp: FieldParam) -> Monomial:
    """The composition monomial m1(m2, ..., m2) on disjoint variables, which
    generates the same clone as the idempotent pair {m1, m2}."""
    if not (is_idempotent(m1, fp) and is_idempotent(m2, fp)):
        raise MonocloneError("single_generator needs idempotent monomials")
    counts: dict[int, int] = {}
    for a in m1.exponents():
        for b in m2.exponents():
            r = reduce_exponent(a * b, fp)
            counts[r] = counts.get(r, 0) + 1
    return from_counts(counts, fp)


def single_generator_derivations(m1: Monomial, m2: Monomial, fp: FieldParam):
    """Three replayable witnesses that the composition generates exactly the
    clone of the pair: the composition from {m1, m2}, and each of m1, m2
    back from the composition by identifying variable groups."""
    m = single_generator(m1, m2, fp)
    b_fwd = derive.Builder([m1, m2], fp)
    idx = 0
    for a in m1.exponents():
        idx = b_fwd.substitute(idx, a, 1)
    assert b_fwd.items[idx] == m
    forward = b_fwd.freeze()

    sum2 = m2.exponent_sum()
    b1 = derive.Builder([m], fp)
    idx = 0
    for a in m1.exponents():
        group = [reduce_exponent(a * bexp, fp) for bexp in m2.exponents()]
        idx = b1.merge(idx, group)
    assert b1.items[idx] == m1, (b1.items[idx], m1)
    back1 = b1.freeze()

    b2 = derive.Builder([m], fp)
    idx = 0
    for bexp in m2.exponents():
        group = [reduce_exponent(a * bexp, fp) for a in m1.exponents()]
        idx = b2.merge(idx, group)
    assert b2.items[idx] == m2, (b2.items[idx], m2)
    back2 = b2.freeze()
    return forward, back1, back2
