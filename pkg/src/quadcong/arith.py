"""Integer utilities: square roots, Kronecker symbols, discriminants, factoring."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Dedekind sums, n_M and the H1/H2 quantities are all exact rationals.
ExactRational = Fraction


def isqrt(n: int) -> int:
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _kronecker_two(a: int) -> int:
    # (a/2) for the Kronecker extension
    if a % 2 == 0:
        return 0
    return 1 if a % 8 in (1, 7) else -1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for every pair of integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2:
            result *= _kronecker_two(a)
        n >>= v
    if n == 1:
        return result
    return result * jacobi(a, n)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of |n| by trial division, as (prime, exponent) pairs."""
    if n == 0:
        raise ValueError("cannot factorize 0")
    n = abs(n)
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == [(n, 1)]


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def is_discriminant(delta: int) -> bool:
    """Non-square integer congruent to 0 or 1 mod 4."""
    return delta % 4 in (0, 1) and not is_square(delta)


def is_fundamental(d: int) -> bool:
    if not is_discriminant(d) or d == 1:
        return False
    if d % 4 == 1:
        return all(e == 1 for _, e in factorize(d))
    m = d // 4
    return m % 4 in (2, 3) and all(e == 1 for _, e in factorize(m))


@dataclass(frozen=True)
class DiscriminantSplit:
    delta: int
    d: int
    f: int


def discriminant_split(delta: int) -> DiscriminantSplit:
    """Write delta = d * f**2 with d a fundamental discriminant."""
    if not is_discriminant(delta):
        raise ValueError(f"{delta} is not a quadratic discriminant")
    core, s = (1 if delta > 0 else -1), 1
    for p, e in factorize(delta):
        if e % 2:
            core *= p
        s *= p ** (e // 2)
    if core % 4 == 1:
        return DiscriminantSplit(delta, core, s)
    # core = 2,3 mod 4 forces s even because delta = 0 mod 4
    return DiscriminantSplit(delta, 4 * core, s // 2)


def prime_discriminants(d: int) -> list[int]:
    """Split a fundamental discriminant into prime discriminants.

    The 2-part (one of -4, 8, -8) comes first, followed by the odd prime
    discriminants in increasing order of the underlying prime.
    """
    if not is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    odd = []
    rest = d
    for p, _ in factorize(d):
        if p == 2:
            continue
        q = p if p % 4 == 1 else -p
        odd.append(q)
        rest //= q
    if rest == 1:
        return odd
    if rest not in (-4, 8, -8):
        raise AssertionError(f"bad 2-part {rest} for {d}")
    return [rest] + odd


def floor_quad(a: int, b: int, delta: int) -> int:
    """Exact floor of (b + sqrt(delta)) / (2a) for non-square delta > 0."""
    if a == 0:
        raise ValueError("a must be nonzero")
    if delta <= 0 or is_square(delta):
        raise ValueError(f"delta must be a positive non-square, got {delta}")
    # floor(b + sqrt(delta)) = b + isqrt(delta), and floor(x/m) = floor(floor(x)/m)
    top = b + math.isqrt(delta)
    if a > 0:
        return top // (2 * a)
    # the quotient is irrational, so its ceiling is floor + 1
    return -(top // (-2 * a)) - 1


def two_adic_valuation(x: Fraction | int) -> float | int:
    """v_2 of a rational; infinity for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    num, den = x.numerator, x.denominator
    return ((num & -num).bit_length() - 1) - ((den & -den).bit_length() - 1)


def congruent_2adic(x: Fraction | int, y: Fraction | int, k: int) -> bool:
    """x = y mod 2**k in the 2-adic integers (difference has valuation >= k)."""
    return two_adic_valuation(Fraction(x) - Fraction(y)) >= k


def format_factorization(x: Fraction | int) -> str:
    """Render a rational as '2^3·3^-1', '2^5·13', '0', '-2^2'."""
    x = Fraction(x)
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    powers = dict(factorize(x.numerator)) if abs(x.numerator) != 1 else {}
    if x.denominator != 1:
        for p, e in factorize(x.denominator):
            powers[p] = -e
    if not powers:
        return sign + "1"
    parts = [str(p) if e == 1 else f"{p}^{e}" for p, e in sorted(powers.items())]
    return sign + "·".join(parts)
