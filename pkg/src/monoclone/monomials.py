"""Canonical monomials over F_q and their elementary calculus.

A monomial is stored as its residue-count vector: ``counts[i]`` is the number
of variables whose exponent reduces to the residue ``i+1`` in {1, ..., q-1}.
Variable names, variable order, and exponent representatives above q-1 are
erased, so one object stands for a whole equivalence class of monomials and
closure under permuting variables is structural.

Exponent reduction follows the one-point-off modular rule: a positive
exponent that is a multiple of q-1 reduces to q-1, never to 0, because
x^(q-1) and x^0 differ at x = 0.  The value 0 never appears inside a
canonical monomial; exponent-0 variables are dummy arguments and are
dropped.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import MonocloneError, ParseError
from .fields import FieldParam

NEG_INF = float("-inf")


@dataclass(frozen=True, order=True)
class Monomial:
    """Residue-count vector of a nonconstant monomial.

    Ordering and hashing go through the raw count tuple, which makes the
    lexicographic order on count vectors the canonical total order used
    everywhere for deterministic output.
    """

    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts:
            raise MonocloneError("empty count vector")
        if any(c < 0 for c in self.counts):
            raise MonocloneError(f"negative count in {self.counts}")
        if not any(self.counts):
            raise MonocloneError("the constant 1 is not a monomial")

    @property
    def width(self) -> int:
        """Number of variables with nonzero exponent."""
        return sum(self.counts)

    def count(self, r: int) -> int:
        return self.counts[r - 1]

    def residues(self) -> tuple[int, ...]:
        """Residues that occur, ascending."""
        return tuple(r for r, c in enumerate(self.counts, start=1) if c)

    def exponents(self) -> tuple[int, ...]:
        """All exponents with multiplicity, ascending."""
        out: list[int] = []
        for r, c in enumerate(self.counts, start=1):
            out.extend([r] * c)
        return tuple(out)

    def exponent_sum(self) -> int:
        """Total degree, before reduction."""
        return sum(r * c for r, c in enumerate(self.counts, start=1))

    @property
    def display_key(self) -> tuple:
        """Order used when choosing and printing generator labels: narrower
        and lower-degree monomials first."""
        return (self.width, self.exponent_sum(), self.counts)

    def __str__(self) -> str:
        return format_monomial(self)


def reduce_exponent(a: int, fp: FieldParam) -> int:
    """Representative of an exponent: q-1 for positive multiples of q-1,
    the residue otherwise; 0 only for 0."""
    if a < 0:
        raise MonocloneError(f"exponent must be nonnegative, got {a}")
    if a == 0:
        return 0
    m = fp.modulus
    r = a % m
    return m if r == 0 else r


def canonicalize(exponents: Iterable[int], fp: FieldParam) -> Monomial:
    """Build the canonical monomial from a raw exponent sequence.

    Zero exponents are dropped; an all-zero sequence is rejected because
    the constant 1 induces no monomial function.
    """
    counts = [0] * fp.modulus
    nonzero = False
    for a in exponents:
        r = reduce_exponent(a, fp)
        if r == 0:
            continue
        counts[r - 1] += 1
        nonzero = True
    if not nonzero:
        raise MonocloneError("monomial needs at least one positive exponent")
    return Monomial(tuple(counts))


def from_counts(counts: Mapping[int, int], fp: FieldParam) -> Monomial:
    """Canonical monomial from a residue -> multiplicity map."""
    vec = [0] * fp.modulus
    for r, c in counts.items():
        r = int(r)
        if not 1 <= r <= fp.modulus:
            raise MonocloneError(f"residue {r} outside 1..{fp.modulus}")
        if c < 0:
            raise MonocloneError(f"negative multiplicity for residue {r}")
        vec[r - 1] += int(c)
    if not any(vec):
        raise MonocloneError("monomial needs at least one positive exponent")
    return Monomial(tuple(vec))


def projection(fp: FieldParam) -> Monomial:
    """The monomial x1, inducing the projections."""
    return Monomial((1,) + (0,) * (fp.modulus - 1))


def is_idempotent(m: Monomial, fp: FieldParam) -> bool:
    """True iff the induced function fixes the diagonal: exponent sum is
    congruent to 1 modulo q-1."""
    if fp.q == 2:
        return True
    return m.exponent_sum() % fp.modulus == 1


def scaled(m: Monomial, r: int, fp: FieldParam) -> Monomial:
    """Push every exponent of m through multiplication by the residue r."""
    if not 1 <= r <= fp.modulus:
        raise MonocloneError(f"residue {r} outside 1..{fp.modulus}")
    vec = [0] * fp.modulus
    for s, c in enumerate(m.counts, start=1):
        if c:
            vec[reduce_exponent(r * s, fp) - 1] += c
    return Monomial(tuple(vec))


def substitute(m: Monomial, r: int, m2: Monomial, fp: FieldParam) -> Monomial:
    """Substitute m2, on fresh variables, into one variable of m carrying
    exponent residue r.  The remaining slots keep their variables."""
    if not 1 <= r <= fp.modulus or m.count(r) < 1:
        raise MonocloneError(f"monomial {m} has no variable with exponent {r}")
    vec = list(m.counts)
    vec[r - 1] -= 1
    for s, c in enumerate(m2.counts, start=1):
        if c:
            vec[reduce_exponent(r * s, fp) - 1] += c
    return Monomial(tuple(vec))


def identify(m: Monomial, r1: int, r2: int, fp: FieldParam) -> Monomial:
    """Identify a variable of exponent r1 with one of exponent r2, merging
    them into a single variable of exponent r1+r2 reduced.  Width drops by
    exactly one."""
    if m.width < 2:
        raise MonocloneError("cannot identify variables of a width-1 monomial")
    need = {r1: 1}
    need[r2] = need.get(r2, 0) + 1
    for r, k in need.items():
        if not 1 <= r <= fp.modulus or m.count(r) < k:
            raise MonocloneError(
                f"monomial {m} lacks {k} variable(s) with exponent {r}"
            )
    vec = list(m.counts)
    vec[r1 - 1] -= 1
    vec[r2 - 1] -= 1
    vec[reduce_exponent(r1 + r2, fp) - 1] += 1
    return Monomial(tuple(vec))


def evaluate(m: Monomial, point: Sequence, fp: FieldParam):
    """Evaluate the induced function in the multiplicative model
    (Z_{q-1} with an absorbing -inf for the field zero).

    Point coordinates are matched to exponent occurrences in ascending
    residue order; downstream uses must not depend on that order.
    """
    exps = m.exponents()
    if len(point) != len(exps):
        raise MonocloneError(
            f"point has {len(point)} coordinates, monomial has width {len(exps)}"
        )
    if any(x == NEG_INF for x in point):
        return NEG_INF
    total = 0
    for e, x in zip(exps, point):
        x = int(x)
        if not 0 <= x < fp.modulus:
            raise MonocloneError(f"coordinate {x} outside Z_{fp.modulus}")
        total += e * x
    return total % fp.modulus


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m.exponents(), start=1):
        parts.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    return "*".join(parts)


_TOKEN = re.compile(r"\s*(x\d+|\^|\*|\d+)")


def parse_monomial(text: str, fp: FieldParam) -> Monomial:
    """Parse the `x1^3*x2^2` syntax into a canonical monomial.

    Variable indices only name distinct variables; repeated indices merge
    their exponents additively, matching variable identification.
    """
    pos = 0
    exponents: dict[int, int] = {}
    expect_var = True
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos,
                                 "variable like x1, '^', or '*'")
            break
        token = match.group(1)
        if expect_var:
            if not token.startswith("x"):
                raise ParseError(f"unexpected token {token!r}", match.start(1),
                                 "variable like x1")
            index = int(token[1:])
            if index < 1:
                raise ParseError("variable index must be >= 1", match.start(1))
            pos = match.end()
            exponent = 1
            peek = _TOKEN.match(text, pos)
            if peek and peek.group(1) == "^":
                pos = peek.end()
                num = _TOKEN.match(text, pos)
                if not num or not num.group(1).isdigit():
                    raise ParseError("missing exponent after '^'", pos,
                                     "positive integer")
                exponent = int(num.group(1))
                pos = num.end()
            exponents[index] = exponents.get(index, 0) + exponent
            expect_var = False
        else:
            if token != "*":
                raise ParseError(f"unexpected token {token!r}", match.start(1),
                                 "'*' between factors")
            pos = match.end()
            expect_var = True
    if expect_var and not exponents:
        raise ParseError("empty monomial expression", 0, "variable like x1")
    if expect_var:
        raise ParseError("dangling '*'", len(text), "variable like x1")
    return canonicalize(exponents.values(), fp)


def monomial_to_json(m: Monomial, fp: FieldParam) -> dict:
    return {
        "q": fp.q,
        "counts": {str(r): m.count(r) for r in m.residues()},
    }


def monomial_from_json(obj: Mapping, fp: FieldParam) -> Monomial:
    if "q" in obj and int(obj["q"]) != fp.q:
        raise MonocloneError(f"monomial JSON is for q={obj['q']}, expected q={fp.q}")
    return from_counts({int(r): int(c) for r, c in obj["counts"].items()}, fp)


def all_monomials(fp: FieldParam, max_width: int) -> Iterator[Monomial]:
    """All canonical monomials of width between 1 and max_width, in
    canonical order."""
    d = fp.modulus
    vectors = []
    for width in range(1, max_width + 1):
        for cut in itertools.combinations(range(width + d - 1), d - 1):
            bounds = (-1,) + cut + (width + d - 1,)
            vec = tuple(bounds[i + 1] - bounds[i] - 1 for i in range(d))
            vectors.append(vec)
    for vec in sorted(set(vectors)):
        yield Monomial(vec)
