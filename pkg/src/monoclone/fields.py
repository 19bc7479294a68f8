"""Prime-power parameters and the small number-theory helpers built on them."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MonocloneError

MAX_Q = 1 << 20


def prime_factorization(n: int) -> dict[int, int]:
    """Trial-division factorization, adequate for n <= 2**20."""
    if n < 1:
        raise MonocloneError(f"cannot factor {n}")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factorization(n) == {n: 1}


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    result = [1]
    for p, e in prime_factorization(n).items():
        result = [d * p**k for d in result for k in range(e + 1)]
    return sorted(result)


def euler_phi(n: int) -> int:
    value = n
    for p in prime_factorization(n):
        value = value // p * (p - 1)
    return value


@dataclass(frozen=True)
class FieldParam:
    """Parameters of F_q needed by the exponent calculus.

    ``primes`` lists the prime divisors of q-1 in ascending order and
    ``squarefree`` records whether q-1 is square-free; both drive the
    top-of-lattice structure.
    """

    q: int
    p: int
    t: int
    primes: tuple[int, ...]
    squarefree: bool

    @classmethod
    def from_q(cls, q: int) -> "FieldParam":
        if not isinstance(q, int) or q < 2:
            raise MonocloneError(f"q must be an integer >= 2, got {q!r}")
        if q > MAX_Q:
            raise MonocloneError(f"q={q} exceeds the supported bound {MAX_Q}")
        factors = prime_factorization(q)
        if len(factors) != 1:
            raise MonocloneError(f"q={q} is not a prime power")
        ((p, t),) = factors.items()
        modulus_factors = prime_factorization(q - 1) if q > 2 else {}
        primes = tuple(sorted(modulus_factors))
        squarefree = all(e == 1 for e in modulus_factors.values())
        return cls(q=q, p=p, t=t, primes=primes, squarefree=squarefree)

    @property
    def modulus(self) -> int:
        """The exponent modulus q-1."""
        return self.q - 1

    def __str__(self) -> str:
        return f"F_{self.q}"
