"""
Prime factors of the multiplicative group order 2^n - 1, for the
primitivity check.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import sympy  # type: ignore

logger = logging.getLogger("progrand.lfsr.factor")


def is_prime(n: int) -> bool:
    return bool(sympy.isprime(n))  # type: ignore


@lru_cache(maxsize=128)
def factor(n: int) -> tuple[int, ...]:
    """
    Prime factorization of n, sorted, with multiplicity.

    Args:
        n: Positive integer

    Returns:
        Tuple of primes whose product is n; empty for n == 1.
    """
    if n < 1:
        raise ValueError(f"factor requires n >= 1, got {n}")

    powers: dict[int, int] = {int(p): int(e) for p, e in sympy.factorint(n).items()}  # type: ignore
    factors = tuple(p for p in sorted(powers) for _ in range(powers[p]))
    logger.debug(f"Factored {n} into {factors}")
    return factors


def distinct_prime_factors(n: int) -> tuple[int, ...]:
    """Sorted distinct prime divisors of n."""
    if n < 1:
        raise ValueError(f"distinct_prime_factors requires n >= 1, got {n}")
    return tuple(int(p) for p in sympy.primefactors(n))  # type: ignore
