"""Quadratic irrationals (b + sqrt(D)) / (2a), continued fractions, Hirzebruch sums."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import floor_quad, is_discriminant


class InvalidIrrational(ValueError):
    pass


@dataclass(frozen=True, order=True)
class QuadIrr:
    """The real number (b + sqrt(delta)) / (2a).

    ``a`` may be negative. Instances are validated on construction: the
    associated ``c = (b*b - delta) / (4a)`` must be an integer and
    ``gcd(a, b, c)`` must be 1.
    """

    a: int
    b: int
    delta: int

    def __post_init__(self):
        a, b, delta = self.a, self.b, self.delta
        if a == 0:
            raise InvalidIrrational("a must be nonzero")
        if delta <= 0 or not is_discriminant(delta):
            raise InvalidIrrational(f"{delta} is not a positive quadratic discriminant")
        if (b * b - delta) % (4 * a):
            raise InvalidIrrational(f"not a discriminant-{delta} irrational: ({a}, {b})")
        if math.gcd(a, b, (b * b - delta) // (4 * a)) != 1:
            raise InvalidIrrational(f"imprimitive: ({a}, {b}, {delta})")

    @property
    def c(self) -> int:
        return (self.b * self.b - self.delta) // (4 * self.a)

    @property
    def key(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __float__(self):
        return (self.b + math.sqrt(self.delta)) / (2 * self.a)

    def __str__(self):
        return f"({self.b}+√{self.delta})/{2 * self.a}"


def make_quad_irr(a: int, b: int, delta: int) -> QuadIrr:
    return QuadIrr(a, b, delta)


def _trusted(a: int, b: int, delta: int) -> QuadIrr:
    # skip validation for states produced by invariant-preserving maps
    xi = object.__new__(QuadIrr)
    object.__setattr__(xi, "a", a)
    object.__setattr__(xi, "b", b)
    object.__setattr__(xi, "delta", delta)
    return xi


def conjugate(xi: QuadIrr) -> QuadIrr:
    return _trusted(-xi.a, -xi.b, xi.delta)


def minus_conjugate(xi: QuadIrr) -> QuadIrr:
    """-xi' = (-b + sqrt(delta)) / (2a)."""
    return _trusted(xi.a, -xi.b, xi.delta)


def negate(xi: QuadIrr) -> QuadIrr:
    """-xi = (b + sqrt(delta)) / (-2a)."""
    return _trusted(-xi.a, xi.b, xi.delta)


def _reduced_ab(a: int, b: int, delta: int) -> bool:
    if a <= 0:
        return False
    # xi' < 0  <=>  b < sqrt(delta)
    if b >= 0 and b * b > delta:
        return False
    # xi' > -1  <=>  sqrt(delta) < 2a + b
    t = 2 * a + b
    if t <= 0 or t * t < delta:
        return False
    # xi > 1  <=>  sqrt(delta) > 2a - b
    t = 2 * a - b
    return t < 0 or t * t < delta


def is_reduced(xi: QuadIrr) -> bool:
    """xi > 1 and -1 < xi' < 0, decided with integer comparisons only."""
    return _reduced_ab(xi.a, xi.b, xi.delta)


def _step(a: int, b: int, delta: int) -> tuple[int, int, int]:
    v = floor_quad(a, b, delta)
    c = (b * b - delta) // (4 * a)
    return v, -c + b * v - a * v * v, -b + 2 * a * v


def cf_step(xi: QuadIrr) -> tuple[int, QuadIrr]:
    """One continued-fraction step: (floor(xi), 1 / (xi - floor(xi)))."""
    v, a, b = _step(xi.a, xi.b, xi.delta)
    return v, _trusted(a, b, xi.delta)


@dataclass(frozen=True)
class CFExpansion:
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.preperiod)

    @property
    def l(self) -> int:
        return len(self.period)


def _orbit(a: int, b: int, delta: int):
    """States and partial quotients until the first repeated state.

    Returns (states, quotients, start) where states[start:] is the cycle.
    """
    seen = {}
    states = []
    quotients = []
    while (a, b) not in seen:
        seen[(a, b)] = len(states)
        states.append((a, b))
        v, a, b = _step(a, b, delta)
        quotients.append(v)
    return states, quotients, seen[(a, b)]


def expand(xi: QuadIrr) -> CFExpansion:
    """Minimal preperiod and minimal period of the continued fraction of xi."""
    _, quotients, start = _orbit(xi.a, xi.b, xi.delta)
    return CFExpansion(tuple(quotients[:start]), tuple(quotients[start:]))


def psi_from_expansion(preperiod_length: int, period) -> int:
    if len(period) % 2:
        return 0
    sign = -1 if preperiod_length % 2 else 1
    total = 0
    for v in period:
        total += sign * v
        sign = -sign
    return total


def hirzebruch_psi(xi: QuadIrr) -> int:
    """Hirzebruch sum: alternating sum over one period, signed by the preperiod length."""
    _, quotients, start = _orbit(xi.a, xi.b, xi.delta)
    return psi_from_expansion(start, quotients[start:])


def cycle(xi: QuadIrr) -> list[QuadIrr]:
    """The reduced irrationals on the periodic part of the expansion of xi."""
    states, _, start = _orbit(xi.a, xi.b, xi.delta)
    return [_trusted(a, b, xi.delta) for a, b in states[start:]]


def opposite(xi: QuadIrr) -> QuadIrr:
    """floor(xi) - xi'."""
    v = floor_quad(xi.a, xi.b, xi.delta)
    return _trusted(xi.a, 2 * xi.a * v - xi.b, xi.delta)
