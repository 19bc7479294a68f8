"""Computational engine for clones of monomial functions over small finite
fields: canonical exponent calculus, capped closure, lattice enumeration,
the linear-form correspondence, and count-vector order embeddings."""

from .engine import (CapPolicy, Clone, Membership, congruence_clone_member,
                     default_cap, equal, generate, join, kd_clone_member,
                     meet, member, subset)
from .errors import CapError, MonocloneError, ParseError
from .fields import FieldParam
from .monomials import (Monomial, canonicalize, evaluate, from_counts,
                        identify, is_idempotent, parse_monomial, projection,
                        reduce_exponent, substitute)

__version__ = "0.1.0"

__all__ = [
    "CapPolicy", "CapError", "Clone", "FieldParam", "Membership",
    "Monomial", "MonocloneError", "ParseError", "canonicalize",
    "congruence_clone_member", "default_cap", "equal", "evaluate",
    "from_counts", "generate", "identify", "is_idempotent", "join",
    "kd_clone_member", "meet", "member", "parse_monomial", "projection",
    "reduce_exponent", "subset", "substitute",
]
