"""Membership witnesses as replayable derivations.

For small q the closure engine materializes member sets, but several checks
live at q where the capped universe is astronomically large.  Those are
decided by certificates instead:

* positive answers come as a ``Derivation``: a sequence of elementary steps
  (one-slot substitution, variable identification) from the generators.
  Replaying a derivation through the core monomial operations verifies
  every step, so how a derivation was found never matters for soundness;
* negative answers come from invariants that are themselves clones and are
  exercised against the engine at small q: the exponent-sum congruence
  classes and the prime-divisor coatom predicates.

The tactics below construct derivations for the shapes that actually occur
(all-ones pumps, unary collapses, reaching the widest idempotent monomial,
gcd combinations); they search with exact arithmetic and always emit steps
that the replayer re-checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MonocloneError
from .fields import FieldParam, divisors
from .monomials import Monomial, identify, projection, reduce_exponent, substitute

SUBSTITUTE = "substitute"
IDENTIFY = "identify"


@dataclass(frozen=True)
class Derivation:
    """Elementary derivation from a set of axiom monomials.

    Item indices: 0..len(axioms)-1 are the axioms, later indices are step
    results in order.  Steps are ("substitute", outer, residue, inner) and
    ("identify", source, r1, r2).
    """

    axioms: tuple[Monomial, ...]
    steps: tuple[tuple, ...]

    def replay(self, fp: FieldParam) -> list[Monomial]:
        items = list(self.axioms)
        for step in self.steps:
            if step[0] == SUBSTITUTE:
                _, outer, r, inner = step
                items.append(substitute(items[outer], r, items[inner], fp))
            elif step[0] == IDENTIFY:
                _, src, r1, r2 = step
                items.append(identify(items[src], r1, r2, fp))
            else:
                raise MonocloneError(f"unknown derivation step {step[0]!r}")
        return items

    def final(self, fp: FieldParam) -> Monomial:
        return self.replay(fp)[-1]

    def __len__(self) -> int:
        return len(self.steps)


def verify_membership(derivation: Derivation, target: Monomial,
                      generators: Iterable[Monomial], fp: FieldParam) -> bool:
    """Replay a derivation and check it proves target from the generators."""
    allowed = set(generators) | {projection(fp)}
    if any(a not in allowed for a in derivation.axioms):
        return False
    items = derivation.replay(fp)
    return items[-1] == target or (not derivation.steps and target in items)


class Builder:
    """Incremental derivation builder that tracks the produced monomials."""

    def __init__(self, axioms: Sequence[Monomial], fp: FieldParam):
        self.fp = fp
        self.axioms = tuple(axioms)
        self.items: list[Monomial] = list(self.axioms)
        self.steps: list[tuple] = []

    def substitute(self, outer: int, r: int, inner: int) -> int:
        self.items.append(substitute(self.items[outer], r, self.items[inner], self.fp))
        self.steps.append((SUBSTITUTE, outer, r, inner))
        return len(self.items) - 1

    def identify(self, src: int, r1: int, r2: int) -> int:
        self.items.append(identify(self.items[src], r1, r2, self.fp))
        self.steps.append((IDENTIFY, src, r1, r2))
        return len(self.items) - 1

    def merge(self, src: int, residues: Sequence[int]) -> int:
        """Identify all listed exponent occurrences of the source item into
        one variable; returns the item where they became a single variable
        with the reduced exponent sum."""
        residues = list(residues)
        if not residues:
            return src
        acc = residues[0]
        idx = src
        for r in residues[1:]:
            idx = self.identify(idx, acc, r)
            acc = reduce_exponent(acc + r, self.fp)
        return idx

    def collapse(self, src: int) -> int:
        """Merge every variable, producing the unary power with the reduced
        exponent sum."""
        return self.merge(src, list(self.items[src].exponents()))

    def replicate(self, src: int, times: int) -> int:
        """From m = x1 * tail, produce x1 * tail^(1+times) by repeated
        substitution of m into its own exponent-1 slot."""
        if self.items[src].count(1) < 1:
            raise MonocloneError("replication needs an exponent-1 variable")
        idx = src
        for _ in range(times):
            idx = self.substitute(idx, 1, src)
        return idx

    def freeze(self) -> Derivation:
        return Derivation(axioms=self.axioms, steps=tuple(self.steps))


# ---------------------------------------------------------------------------
# tactics


def _close_to_full_ones(b: Builder, src: int) -> int:
    """From an item with at least two exponent-1 variables, derive the
    all-ones monomial of width q (the widest idempotent one).

    Normalizes to x1*x2 or x1*x2*y^g, then searches exact replication and
    merge counts that land on width q; such counts always exist.
    """
    fp = b.fp
    q = fp.q
    m = b.items[src]
    target = (q,) + (0,) * (fp.modulus - 1)
    if m.counts == target:
        return src
    if m.count(1) < 2:
        raise MonocloneError("tactic needs two exponent-1 variables")
    rest = list(m.exponents())
    rest.remove(1)
    rest.remove(1)
    idx = src
    if rest:
        idx = b.merge(idx, rest)
        gamma = reduce_exponent(sum(rest), fp)
        g = 0 if gamma == 1 else gamma
    else:
        g = 0
    a = b.items[idx].count(1)
    # close: replicate t times, then merge all gamma variables plus k ones
    # into a single exponent-1 variable.
    mod = fp.modulus
    for t in range(0, 4 * q + 2):
        ones = a + t * (a - 1)
        if g:
            k = ones + 1 - q
            if k < 0 or k > ones:
                continue
            if (k + (t + 1) * g) % mod != 1 % mod:
                continue
            rep = b.replicate(idx, t)
            merged = b.merge(rep, [g] * (t + 1) + [1] * k)
            assert b.items[merged].counts == target
            return merged
        if ones == q:
            rep = b.replicate(idx, t)
            assert b.items[rep].counts == target
            return rep
        k = ones + 1 - q
        if k >= 2 and k <= ones and k % mod == 1 % mod:
            rep = b.replicate(idx, t)
            merged = b.merge(rep, [1] * k)
            assert b.items[merged].counts == target
            return merged
    raise MonocloneError("could not close onto the width-q all-ones monomial")


def _shrink_ones(b: Builder, src: int, alpha_idx: int) -> int:
    """From all-ones of width k and a unary power with exponent a, derive
    all-ones of width k-(q-a); requires k > q-a."""
    fp = b.fp
    q = fp.q
    k = b.items[src].width
    alpha = b.items[alpha_idx].exponents()[0]
    if k <= q - alpha:
        raise MonocloneError("width too small to shrink")
    t = q - 1 - alpha
    idx = src
    if t == 0:
        idx = b.substitute(idx, 1, alpha_idx)
        return b.identify(idx, alpha, 1)
    idx = b.merge(idx, [1] * t)
    idx = b.substitute(idx, 1, alpha_idx)
    idx = b.identify(idx, alpha, t)
    return b.identify(idx, fp.modulus, 1)


def prove_allones_pump(target_width: int, gen_widths: Sequence[int],
                       fp: FieldParam) -> Derivation | None:
    """Derivation of the all-ones monomial of the target width from all-ones
    generators, by substitution pumping alone.  Works exactly when
    target_width - 1 is a nonnegative integer combination of the generator
    widths minus one."""
    from .monomials import from_counts

    axioms = [from_counts({1: w}, fp) for w in gen_widths]
    b = Builder(axioms, fp)
    if target_width == 1 or target_width in gen_widths:
        return b.freeze()
    steps = [w - 1 for w in gen_widths if w > 1]
    gen_index = {w - 1: i for i, w in enumerate(gen_widths) if w > 1}
    reach: dict[int, tuple | None] = {1: None}
    frontier = [1]
    while frontier:
        w = frontier.pop()
        for s in steps:
            nxt = w + s
            if nxt <= target_width and nxt not in reach:
                reach[nxt] = (w, gen_index[s])
                frontier.append(nxt)
    if target_width not in reach:
        return None
    plan = []
    w = target_width
    while reach[w] is not None:
        w, i = reach[w]
        plan.append(i)
    idx = None
    for i in reversed(plan):
        idx = i if idx is None else b.substitute(idx, 1, i)
    return b.freeze()


def prove_gcd_allones(k: int, l: int, fp: FieldParam) -> Derivation:
    """Derivation of x1...x_{1+gcd(k,l)} from x1...x_{1+k} and x1...x_{1+l}.

    Route: pump a width congruent to 1+gcd mod q-1 and collapse it to the
    unary power x1^(1+gcd); reach the width-q all-ones monomial from the
    two exponent-1 variables of the first generator; shrink its width with
    the unary power."""
    import math

    from .monomials import from_counts

    mod = fp.modulus
    g = math.gcd(k, l)
    axioms = [from_counts({1: 1 + k}, fp), from_counts({1: 1 + l}, fp)]
    b = Builder(axioms, fp)
    if g in (k, l):
        return b.freeze()  # the target is a generator
    found = None
    for a in range(0, mod + 1):
        for c in range(0, mod + 1):
            if (a, c) != (0, 0) and (a * k + c * l) % mod == g % mod:
                found = (a, c)
                break
        if found:
            break
    if found is None:
        raise MonocloneError("no pump combination found")
    a, c = found
    idx = None
    for axiom, count in ((0, a), (1, c)):
        for _ in range(count):
            idx = axiom if idx is None else b.substitute(idx, 1, axiom)
    alpha_idx = b.collapse(idx)
    assert b.items[alpha_idx].exponents() == (1 + g,)
    idx = _close_to_full_ones(b, 0)
    while b.items[idx].width > 1 + g:
        idx = _shrink_ones(b, idx, alpha_idx)
    assert b.items[idx].width == 1 + g
    return b.freeze()


def _two_disjoint_unit_sums(exponents: Sequence[int], mod: int):
    """Split positions into two disjoint nonempty groups each summing to
    1 mod (q-1), plus leftovers.  Returns a choice list (0 skip, 1, 2) or
    None."""
    start = (None, None)
    states = {start: None}
    for pos, e in enumerate(exponents):
        new_states = dict(states)
        for (s1, s2), _ in states.items():
            for choice, state in (
                (1, ((0 if s1 is None else s1) + e, s2)),
                (2, (s1, (0 if s2 is None else s2) + e)),
            ):
                key = (None if state[0] is None else state[0] % mod,
                       None if state[1] is None else state[1] % mod)
                if key not in new_states:
                    new_states[key] = ((s1, s2), pos, choice)
        states = new_states
    goal = (1 % mod, 1 % mod)
    if goal not in states:
        return None
    choices = [0] * len(exponents)
    key = goal
    while states[key] is not None:
        prev, pos, choice = states[key]
        choices[pos] = choice
        key = (None if prev[0] is None else prev[0] % mod,
               None if prev[1] is None else prev[1] % mod)
    return choices


def prove_fullones(generator: Monomial, fp: FieldParam,
                   max_depth: int = 4, max_states: int = 4000) -> Derivation | None:
    """Derivation of x1...x_q from a single generator, via substitution
    pumping until two disjoint exponent groups each sum to 1 mod q-1, then
    merging those groups into two exponent-1 variables.

    Sound but incomplete: returns None when the bounded pump search fails.
    """
    width_cap = 6 * fp.q
    plans: dict[tuple[int, ...], tuple | None] = {generator.counts: None}
    layer = [generator.counts]
    winner = None
    if _two_disjoint_unit_sums(Monomial(generator.counts).exponents(), fp.modulus):
        winner = generator.counts
    for _ in range(max_depth):
        if winner:
            break
        next_layer = []
        for vec in layer:
            m = Monomial(vec)
            for r in m.residues():
                child = substitute(m, r, generator, fp).counts
                if child in plans or sum(child) > width_cap:
                    continue
                if len(plans) >= max_states:
                    break
                plans[child] = (vec, r)
                next_layer.append(child)
                if _two_disjoint_unit_sums(Monomial(child).exponents(), fp.modulus):
                    winner = child
                    break
            if winner:
                break
        layer = next_layer
        if not layer:
            break
    if winner is None:
        return None
    chain = []
    vec = winner
    while plans[vec] is not None:
        parent, r = plans[vec]
        chain.append(r)
        vec = parent
    b = Builder([generator], fp)
    idx = 0
    for r in reversed(chain):
        idx = b.substitute(idx, r, 0)
    exps = b.items[idx].exponents()
    choices = _two_disjoint_unit_sums(exps, fp.modulus)
    group1 = [e for e, c in zip(exps, choices) if c == 1]
    group2 = [e for e, c in zip(exps, choices) if c == 2]
    idx = b.merge(idx, group1)
    idx = b.merge(idx, group2)
    idx = _close_to_full_ones(b, idx)
    return b.freeze()


# ---------------------------------------------------------------------------
# refutation certificates


def refute_member(target: Monomial, generators: Iterable[Monomial],
                  fp: FieldParam) -> str | None:
    """A reason why target cannot lie in the clone the generators produce,
    or None.  Every certificate is an invariant set that is itself a clone."""
    from .engine import congruence_clone_member, kd_clone_member

    gens = list(generators)
    for bmod in divisors(fp.modulus):
        if bmod < 2:
            continue
        if all(congruence_clone_member(g, bmod, fp) for g in gens) and \
                not congruence_clone_member(target, bmod, fp):
            return f"exponent sums of all generators are 1 mod {bmod}, target is not"
    if fp.q > 2:
        indices = range(1, len(fp.primes) + 1)
        for size in range(1, len(fp.primes) + 1):
            for D in itertools.combinations(indices, size):
                if all(kd_clone_member(g, D, fp) for g in gens) and \
                        not kd_clone_member(target, D, fp):
                    primes = [fp.primes[i - 1] for i in D]
                    return (f"all generators lie in the coatom for primes "
                            f"{primes}, target does not")
    if all(g.width == 1 for g in gens) and target.width > 1:
        return "all generators are unary, so the clone has no wider member"
    return None
