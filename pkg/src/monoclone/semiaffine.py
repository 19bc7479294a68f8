"""Zero-preserving linear-form clones over Z_n and the exponent-to-
coefficient correspondence from monomial clones.

A linear form is stored as the multiset of its nonzero coefficients, as a
count vector over the residues 1..n-1; zero coefficients denote dummy
arguments and are never stored, and the empty multiset is the constant-0
function.  Mapping a monomial to a form sends each exponent residue to its
coefficient class, so the residue q-1 becomes the dropped coefficient 0;
the information lost there is exactly what fibers recover.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .engine import Clone
from .errors import MonocloneError, ParseError
from .fields import FieldParam, prime_factorization
from .monomials import Monomial

DEFAULT_ROUNDS = 2
PAIR_SEARCH_LIMIT = 48


@dataclass(frozen=True, order=True)
class LinearForm:
    """Count vector of nonzero coefficient classes; may be all zero."""

    coeffs: tuple[int, ...]

    @property
    def arity(self) -> int:
        """Number of arguments that actually occur."""
        return sum(self.coeffs)

    @property
    def display_key(self) -> tuple:
        return (self.arity, self.coeffs)

    def coefficient_list(self) -> tuple[int, ...]:
        out: list[int] = []
        for r, c in enumerate(self.coeffs, start=1):
            out.extend([r] * c)
        return tuple(out)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficient_list(), start=1):
            terms.append(f"y{i}" if c == 1 else f"{c}*y{i}")
        return "+".join(terms) if terms else "0"


def identity_form(modulus: int) -> LinearForm:
    if modulus == 1:
        return LinearForm(())
    return LinearForm((1,) + (0,) * (modulus - 2))


def form_from_coefficients(coefficients: Iterable[int], modulus: int) -> LinearForm:
    vec = [0] * max(modulus - 1, 0)
    for a in coefficients:
        r = a % modulus
        if r:
            vec[r - 1] += 1
    return LinearForm(tuple(vec))


def evaluate_form(f: LinearForm, point: Sequence[int], modulus: int) -> int:
    coeffs = f.coefficient_list()
    if len(point) != len(coeffs):
        raise MonocloneError("point length does not match form arity")
    return sum(c * x for c, x in zip(coeffs, point)) % modulus if modulus > 1 else 0


def is_semiaffine_form(f: LinearForm, modulus: int) -> bool:
    """Check f(u+v) + f(0) = f(u) + f(v) over all points."""
    n = f.arity
    if modulus == 1:
        return True
    for u in itertools.product(range(modulus), repeat=n):
        for v in itertools.product(range(modulus), repeat=n):
            w = tuple((a + b) % modulus for a, b in zip(u, v))
            lhs = (evaluate_form(f, w, modulus)
                   + evaluate_form(f, (0,) * n, modulus)) % modulus
            rhs = (evaluate_form(f, u, modulus)
                   + evaluate_form(f, v, modulus)) % modulus
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True)
class LinearClone:
    """Capped closed set of linear forms over Z_n."""

    modulus: int
    generators: tuple[LinearForm, ...]
    cap: int
    members: frozenset[LinearForm]
    stable: bool

    def __contains__(self, f: LinearForm) -> bool:
        return f in self.members

    def sorted_members(self) -> list[LinearForm]:
        return sorted(self.members)


def _close_forms(seeds: frozenset[tuple[int, ...]], modulus: int,
                 cap: int) -> frozenset[tuple[int, ...]]:
    d = max(modulus - 1, 0)
    identity = identity_form(modulus).coeffs
    members: set[tuple[int, ...]] = set()
    incs: dict[int, set[tuple[int, ...]]] = {r: set() for r in range(1, d + 1)}
    by_residue: dict[int, list[tuple[int, ...]]] = {r: [] for r in range(1, d + 1)}
    queue: deque[tuple[int, ...]] = deque()

    def add(vec):
        if vec in members or any(c > cap for c in vec):
            return
        members.add(vec)
        queue.append(vec)
        for r in range(1, d + 1):
            if vec[r - 1]:
                by_residue[r].append(vec)

    for v in seeds:
        add(v)
    add(identity)
    while queue:
        v = queue.popleft()
        # identification of two arguments (coefficients add, zeros vanish)
        for r1 in range(1, d + 1):
            if not v[r1 - 1]:
                continue
            for r2 in range(r1, d + 1):
                if v[r2 - 1] < (2 if r1 == r2 else 1):
                    continue
                t = (r1 + r2) % modulus
                w = list(v)
                w[r1 - 1] -= 1
                w[r2 - 1] -= 1
                if t:
                    w[t - 1] += 1
                add(tuple(w))
        # a full block of n equal coefficients cancels
        for r in range(1, d + 1):
            if v[r - 1] >= modulus:
                w = list(v)
                w[r - 1] -= modulus
                add(tuple(w))
        # substitution into one argument slot
        for r in range(1, d + 1):
            if v[r - 1]:
                for inc in list(incs[r]):
                    add(tuple(a - (i == r - 1) + b
                              for i, (a, b) in enumerate(zip(v, inc))))
        for r in range(1, d + 1):
            pv = [0] * d
            for s in range(1, d + 1):
                t = (r * s) % modulus
                if t:
                    pv[t - 1] += v[s - 1]
            pv = tuple(pv)
            if any(c > cap for c in pv) or pv in incs[r]:
                continue
            incs[r].add(pv)
            for u in list(by_residue[r]):
                add(tuple(a - (i == r - 1) + b
                          for i, (a, b) in enumerate(zip(u, pv))))
    return frozenset(members)


def _close_forms_box(seeds: frozenset[tuple[int, ...]], modulus: int,
                     cap: int) -> frozenset[tuple[int, ...]]:
    import numpy as np

    from .engine import _axis_coord, _dilate, _shift

    d = modulus - 1
    shape = (cap + 1,) * d
    S = np.zeros(shape, dtype=bool)
    for v in seeds:
        S[v] = True
    S[identity_form(modulus).coeffs] = True
    identify_plans = []
    for r1 in range(1, d + 1):
        for r2 in range(r1, d + 1):
            t = (r1 + r2) % modulus
            off = [0] * d
            need = [0] * d
            off[r1 - 1] -= 1
            need[r1 - 1] += 1
            off[r2 - 1] -= 1
            need[r2 - 1] += 1
            if t:
                off[t - 1] += 1
            masked = [a for a in range(d) if need[a] and off[a] >= 0]
            identify_plans.append((tuple(off), tuple((a, need[a]) for a in masked)))
    mu = {r: tuple((r * s) % modulus for s in range(1, d + 1))
          for r in range(1, d + 1)}
    while True:
        while True:
            before = int(S.sum())
            for off, masks in identify_plans:
                src = S
                for axis, k in masks:
                    src = src & (_axis_coord(shape, axis) >= k)
                S[:] |= _shift(src, off)
            for a in range(d):
                off = [0] * d
                off[a] = -modulus
                S[:] |= _shift(S, off)
            if int(S.sum()) == before:
                break
        grew = False
        mat = np.argwhere(S)
        for r in range(1, d + 1):
            push = np.zeros_like(mat)
            for s in range(1, d + 1):
                t = mu[r][s - 1]
                if t:
                    push[:, t - 1] += mat[:, s - 1]
            push = push[np.all(push <= cap, axis=1)]
            if not push.size:
                continue
            incs = np.unique(push, axis=0)
            off = [0] * d
            off[r - 1] = -1
            base = _shift(S, off)
            dilated = _dilate(base, incs)
            if bool((dilated & ~S).any()):
                S |= dilated
                grew = True
        if not grew:
            break
    return frozenset(tuple(int(c) for c in v) for v in np.argwhere(S))


_form_cache: dict[tuple, frozenset] = {}
_FORM_BOX_LIMIT = 1 << 20


def _closed_form_vectors(seeds, modulus, cap):
    key = (modulus, cap, seeds)
    hit = _form_cache.get(key)
    if hit is None:
        if modulus == 1:
            hit = frozenset({()})
        elif (cap + 1) ** (modulus - 1) <= _FORM_BOX_LIMIT:
            hit = _close_forms_box(seeds, modulus, cap)
        else:
            hit = _close_forms(seeds, modulus, cap)
        _form_cache[key] = hit
    return hit


def linear_closure(generators: Iterable[LinearForm], modulus: int,
                   cap: int | None = None,
                   rounds: int = DEFAULT_ROUNDS) -> LinearClone:
    """Least capped linear clone containing the generators and the identity."""
    gens = tuple(sorted(set(generators)))
    if modulus < 1:
        raise MonocloneError("modulus must be positive")
    if cap is None:
        cap = 2 * modulus + max((max(g.coeffs, default=0) for g in gens), default=0)
    seeds = frozenset(g.coeffs for g in gens)
    base = _closed_form_vectors(seeds, modulus, cap)
    stable = True
    for i in range(1, rounds + 1):
        wider = _closed_form_vectors(seeds, modulus, cap + i * modulus)
        if frozenset(v for v in wider if all(c <= cap for c in v)) != base:
            stable = False
            break
    return LinearClone(modulus=modulus, generators=gens, cap=cap,
                       members=frozenset(LinearForm(v) for v in base),
                       stable=stable)


def _aligned_linear(a: LinearClone, b: LinearClone):
    if a.modulus != b.modulus:
        raise MonocloneError("linear clones live over different moduli")
    cap = max(a.cap, b.cap)
    if a.cap != cap:
        a = linear_closure(a.generators, a.modulus, cap)
    if b.cap != cap:
        b = linear_closure(b.generators, b.modulus, cap)
    return a, b


def linear_subset(a: LinearClone, b: LinearClone) -> bool:
    a, b = _aligned_linear(a, b)
    return a.members <= b.members


def linear_equal(a: LinearClone, b: LinearClone) -> bool:
    a, b = _aligned_linear(a, b)
    return a.members == b.members


def linear_join(a: LinearClone, b: LinearClone) -> LinearClone:
    a, b = _aligned_linear(a, b)
    return linear_closure(set(a.generators) | set(b.generators), a.modulus, a.cap)


def linear_meet(a: LinearClone, b: LinearClone) -> LinearClone:
    a, b = _aligned_linear(a, b)
    members = a.members & b.members
    gens = _minimal_form_generators(frozenset(f.coeffs for f in members),
                                    a.modulus, a.cap)
    return LinearClone(modulus=a.modulus, generators=gens, cap=a.cap,
                       members=members, stable=a.stable and b.stable)


def _minimal_form_generators(member_vectors: frozenset[tuple[int, ...]],
                             modulus: int, cap: int) -> tuple[LinearForm, ...]:
    identity = identity_form(modulus).coeffs
    if member_vectors == frozenset({identity}):
        return (identity_form(modulus),)
    order = sorted(member_vectors, key=lambda v: (sum(v), v))
    candidates = [v for v in order if v != identity]
    for v in candidates:
        if _closed_form_vectors(frozenset({v}), modulus, cap) == member_vectors:
            return (LinearForm(v),)
    for v, w in itertools.combinations(candidates[:PAIR_SEARCH_LIMIT], 2):
        if _closed_form_vectors(frozenset({v, w}), modulus, cap) == member_vectors:
            return (LinearForm(v), LinearForm(w))
    chosen: list[tuple[int, ...]] = []
    current = _closed_form_vectors(frozenset(), modulus, cap)
    while current != member_vectors:
        nxt = next(v for v in candidates if v not in current)
        chosen.append(nxt)
        current = _closed_form_vectors(frozenset(chosen), modulus, cap)
    return tuple(LinearForm(v) for v in chosen)


# ---------------------------------------------------------------------------
# the correspondence with monomial clones


def form_of_monomial(m: Monomial, fp: FieldParam) -> LinearForm:
    """Coefficient form of a monomial: exponent residues become coefficient
    classes, and the residue q-1 becomes the dropped coefficient 0."""
    return LinearForm(m.counts[:-1])


def phi_affine(clone: Clone) -> LinearClone:
    """Image of a monomial clone on the linear-form side, closed as a
    linear clone at the same per-count cap."""
    fp = clone.fp
    modulus = fp.modulus
    gens = sorted({form_of_monomial(g, fp) for g in clone.generators})
    image = {form_of_monomial(m, fp).coeffs for m in clone.members}
    cap = clone.cap.per_residue_cap
    closed = _closed_form_vectors(frozenset(image), modulus, cap)
    return LinearClone(modulus=modulus, generators=tuple(gens), cap=cap,
                       members=frozenset(LinearForm(v) for v in closed),
                       stable=clone.stable)


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in prime_factorization(n).values()) if n > 1 else True


def enumerate_semiaffine_lattice(modulus: int, cap: int | None = None,
                                 max_nodes: int = 300):
    """All clones generated by single forms of arity up to modulus+1,
    closed under join and meet."""
    from .hasse import build_diagram

    if modulus < 1:
        raise MonocloneError("modulus must be positive")
    d = max(modulus - 1, 0)
    if cap is None:
        cap = 2 * modulus + modulus + 1
    seeds: list[tuple[int, ...]] = []
    for total in range(0, modulus + 2):
        for vec in itertools.product(range(total + 1), repeat=d):
            if sum(vec) == total:
                seeds.append(vec)
    if d == 0:
        seeds = [()]
    nodes: dict[frozenset, LinearClone] = {}
    fresh: list[LinearClone] = []

    def add(c: LinearClone):
        if c.members not in nodes:
            if len(nodes) >= max_nodes:
                raise MonocloneError("semi-affine node closure exploded")
            nodes[c.members] = c
            fresh.append(c)

    add(linear_closure([identity_form(modulus)], modulus, cap))
    for vec in seeds:
        add(linear_closure([LinearForm(vec)], modulus, cap))
    processed: list[LinearClone] = []
    while fresh:
        batch, fresh = fresh, []
        for new in batch:
            for old in processed + [new]:
                if new.members <= old.members or old.members <= new.members:
                    continue
                add(linear_join(new, old))
                add(linear_meet(new, old))
            processed.append(new)
    relabeled = []
    for c in nodes.values():
        gens = _minimal_form_generators(
            frozenset(f.coeffs for f in c.members), modulus, cap)
        relabeled.append(LinearClone(modulus=modulus, generators=gens,
                                     cap=c.cap, members=c.members,
                                     stable=c.stable))
    return build_diagram(relabeled,
                         complete=_squarefree(modulus) and modulus <= 6)


def fiber(lc: LinearClone, fp: FieldParam, diagram=None) -> tuple[Clone, ...]:
    """All enumerated monomial clones whose coefficient image equals the
    given linear clone.  Checks the two structure statements that apply:
    the fiber over the projection clone is exactly the bottom pair, and a
    fiber whose clones all contain x1*x2^(q-1) is a singleton."""
    from .engine import generate
    from .lattice import enumerate_lattice
    from .monomials import canonicalize, from_counts, projection

    if lc.modulus != fp.modulus:
        raise MonocloneError("linear clone modulus does not match q-1")
    if diagram is None:
        diagram = enumerate_lattice(fp)
    hits = [node for node in diagram.nodes if linear_equal(phi_affine(node), lc)]
    witness = canonicalize([1, fp.modulus], fp)
    projections_only = linear_closure([identity_form(lc.modulus)], lc.modulus)
    if linear_equal(lc, projections_only):
        node_cap = diagram.nodes[0].cap
        expected = {
            frozenset({projection(fp)}),
            generate([witness], fp, node_cap).members,
        }
        if {node.members for node in hits} != expected:
            raise MonocloneError(
                "projection-clone fiber is not the expected bottom pair")
    if hits and all(witness in node.members for node in hits) and len(hits) != 1:
        raise MonocloneError(
            "fiber whose clones all contain x1*x2^(q-1) must be a singleton")
    return tuple(hits)


# ---------------------------------------------------------------------------
# parsing and serialization


def parse_form(text: str, modulus: int) -> LinearForm:
    text = text.strip()
    if text == "0":
        return LinearForm((0,) * max(modulus - 1, 0))
    coeffs: dict[int, int] = {}
    for pos, term in enumerate(text.split("+")):
        term = term.strip()
        if "*" in term:
            c_str, v_str = term.split("*", 1)
        elif term.startswith("y"):
            c_str, v_str = "1", term
        else:
            raise ParseError(f"bad term {term!r}", pos, "c*yk or yk or 0")
        v_str = v_str.strip()
        if not v_str.startswith("y") or not v_str[1:].isdigit():
            raise ParseError(f"bad variable {v_str!r}", pos, "yk")
        try:
            c = int(c_str)
        except ValueError:
            raise ParseError(f"bad coefficient {c_str!r}", pos, "integer")
        k = int(v_str[1:])
        coeffs[k] = coeffs.get(k, 0) + c
    return form_from_coefficients(coeffs.values(), modulus)


def form_to_json(f: LinearForm) -> dict:
    return {str(r): c for r, c in enumerate(f.coeffs, start=1) if c}


def form_from_json(obj: Mapping, modulus: int) -> LinearForm:
    vec = [0] * max(modulus - 1, 0)
    for r, c in obj.items():
        r = int(r)
        if not 1 <= r <= modulus - 1:
            raise MonocloneError(f"coefficient class {r} outside 1..{modulus - 1}")
        vec[r - 1] += int(c)
    return LinearForm(tuple(vec))


def linear_clone_to_json(lc: LinearClone) -> dict:
    return {
        "modulus": lc.modulus,
        "cap": lc.cap,
        "stable": lc.stable,
        "generators": [form_to_json(g) for g in sorted(lc.generators)],
        "members": [form_to_json(f) for f in lc.sorted_members()],
    }
