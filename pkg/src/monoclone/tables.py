"""Brute-force clone closure on function tables.

This is the independent cross-check for the exponent-calculus engine: it
works on raw value tables over the multiplicative model of F_q (the cyclic
group Z_{q-1} extended by an absorbing zero), never on count vectors.
Tables are tuples indexed by points of the domain in lexicographic order;
the absorbing element is encoded as -1 and the group elements as 0..q-2.

Seeding evaluates monomials by repeated addition, deliberately avoiding the
modular multiply used by ``monomials.evaluate`` so the two paths stay
independent.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .errors import MonocloneError
from .fields import FieldParam
from .monomials import Monomial

ABSORB = -1


@lru_cache(maxsize=None)
def domain(q: int) -> tuple[int, ...]:
    return (ABSORB,) + tuple(range(q - 1))


@lru_cache(maxsize=None)
def points(q: int, arity: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(domain(q), repeat=arity))


def point_index(pt: tuple[int, ...], q: int) -> int:
    idx = 0
    for v in pt:
        idx = idx * q + (v + 1)
    return idx


def _model_add(a: int, b: int, modulus: int) -> int:
    if a == ABSORB or b == ABSORB:
        return ABSORB
    return (a + b) % modulus


def monomial_table(exponent_layout: tuple[int, ...], fp: FieldParam) -> tuple[int, ...]:
    """Value table of the monomial whose i-th argument carries the given
    exponent (0 = dummy argument), computed by repeated addition."""
    modulus = fp.modulus
    out = []
    for pt in points(fp.q, len(exponent_layout)):
        acc = 0
        for e, x in zip(exponent_layout, pt):
            for _ in range(e):
                acc = _model_add(acc, x, modulus)
        out.append(acc)
    return tuple(out)


def projection_table(arity: int, j: int, q: int) -> tuple[int, ...]:
    return tuple(pt[j] for pt in points(q, arity))


def compose(f: tuple[int, ...], f_arity: int, gs: list[tuple[int, ...]],
            g_arity: int, q: int) -> tuple[int, ...]:
    """Full simultaneous composition f(g_1, ..., g_n) on tables."""
    out = []
    for idx in range(q**g_arity):
        vals = tuple(g[idx] for g in gs)
        out.append(f[point_index(vals, q)])
    return tuple(out)


def permute_args(f: tuple[int, ...], arity: int, perm: tuple[int, ...], q: int):
    """Table of f(x_{perm[0]}, ..., x_{perm[arity-1]})."""
    return tuple(f[point_index(tuple(pt[p] for p in perm), q)]
                 for pt in points(q, arity))


def cylindrify(f: tuple[int, ...], arity: int, q: int) -> tuple[int, ...]:
    """Add a dummy last argument."""
    return tuple(f[point_index(pt[:-1], q)] for pt in points(q, arity + 1))


def identify_args(f: tuple[int, ...], arity: int, i: int, j: int, q: int):
    """Set argument j equal to argument i; result has arity-1 arguments."""
    out = []
    for pt in points(q, arity - 1):
        full = list(pt[:j]) + [0] + list(pt[j:])
        full[j] = full[i] if i < j else pt[i - 1]
        out.append(f[point_index(tuple(full), q)])
    return tuple(out)


def substitute_slot(f: tuple[int, ...], f_arity: int, slot: int,
                    g: tuple[int, ...], g_arity: int, q: int):
    """One-slot substitution on fresh arguments:
    f(x_1, ..., g(y_1, ..., y_m), ..., x_n)."""
    arity = f_arity - 1 + g_arity
    out = []
    for pt in points(q, arity):
        gval = g[point_index(pt[slot:slot + g_arity], q)]
        fpt = pt[:slot] + (gval,) + pt[slot + g_arity:]
        out.append(f[point_index(fpt, q)])
    return tuple(out)


def table_closure(generators: list[Monomial], fp: FieldParam,
                  max_arity: int = 3, limit: int = 20000) -> frozenset:
    """Close generator tables under argument permutation, cylindrification,
    argument identification, and one-slot substitution, within the arity
    bound.  Returns a set of (arity, table) pairs."""
    q = fp.q
    found: set[tuple[int, tuple[int, ...]]] = set()
    frontier: list[tuple[int, tuple[int, ...]]] = []

    def add(arity, table):
        key = (arity, table)
        if key not in found:
            found.add(key)
            frontier.append(key)

    for arity in range(1, max_arity + 1):
        for j in range(arity):
            add(arity, projection_table(arity, j, q))
    for g in generators:
        w = g.width
        if w > max_arity:
            raise MonocloneError(
                f"generator width {w} exceeds oracle arity bound {max_arity}")
        add(w, monomial_table(g.exponents(), fp))

    while frontier:
        if len(found) > limit:
            raise MonocloneError("table closure exceeded its size limit")
        arity, table = frontier.pop()
        for perm in itertools.permutations(range(arity)):
            add(arity, permute_args(table, arity, perm, q))
        if arity < max_arity:
            add(arity + 1, cylindrify(table, arity, q))
        if arity >= 2:
            for i in range(arity):
                for j in range(arity):
                    if i != j:
                        add(arity - 1, identify_args(table, arity, i, j, q))
        snapshot = list(found)
        for other_arity, other in snapshot:
            if arity - 1 + other_arity <= max_arity:
                for slot in range(arity):
                    add(arity - 1 + other_arity,
                        substitute_slot(table, arity, slot, other, other_arity, q))
            if other_arity - 1 + arity <= max_arity:
                for slot in range(other_arity):
                    add(other_arity - 1 + arity,
                        substitute_slot(other, other_arity, slot, table, arity, q))
    return frozenset(found)


def verify_composition_closure(tables: frozenset, fp: FieldParam,
                               samples: int = 400, seed: int = 0) -> bool:
    """Spot-check that a table set is closed under full simultaneous
    composition, which the generating rules only realize indirectly.

    Exhaustive over unary/binary outer functions, sampled for ternary.
    """
    q = fp.q
    by_arity: dict[int, list[tuple[int, ...]]] = {}
    for arity, table in tables:
        by_arity.setdefault(arity, []).append(table)
    for f_arity in (1, 2):
        for f in by_arity.get(f_arity, []):
            for g_arity, gs in by_arity.items():
                for combo in itertools.product(gs, repeat=f_arity):
                    result = compose(f, f_arity, list(combo), g_arity, q)
                    if (g_arity, result) not in tables:
                        return False
    rng = random.Random(seed)
    ternary = by_arity.get(3, [])
    if ternary:
        for _ in range(samples):
            f = rng.choice(ternary)
            g_arity = rng.choice(sorted(by_arity))
            combo = [rng.choice(by_arity[g_arity]) for _ in range(3)]
            result = compose(f, 3, combo, g_arity, q)
            if (g_arity, result) not in tables:
                return False
    return True
