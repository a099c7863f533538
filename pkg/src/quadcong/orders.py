"""Quadratic orders: fundamental units, roots of unity, class numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import discriminant_split, is_discriminant, isqrt
from .cfrac import QuadIrr, _orbit, _trusted

MAX_UNIT_POWER = 64


class InvariantError(RuntimeError):
    """An identity that must hold by theory failed; signals a bug."""


def _check_real(delta: int):
    if delta <= 0 or not is_discriminant(delta):
        raise ValueError(f"{delta} is not a positive quadratic discriminant")


def _unit_maximal(d: int) -> tuple[int, int]:
    """Fundamental unit of O_d as (X, Y) with eps = (X + Y sqrt(d)) / 2."""
    sigma = d % 2
    b = isqrt(d)
    if b % 2 != sigma:
        b -= 1
    # (b + sqrt(d))/2 is reduced and primitive; its period yields eps = q_{l-1} xi + q_{l-2}
    states, quotients, start = _orbit(1, b, d)
    assert start == 0
    q_prev, q_cur = 1, 0
    for v in quotients:
        q_prev, q_cur = q_cur, v * q_cur + q_prev
    return q_cur * b + 2 * q_prev, q_cur


@lru_cache(maxsize=4096)
def fundamental_unit(delta: int) -> tuple[int, int, int]:
    """Fundamental unit of O_delta as (q, r, norm) with eps = q + r * omega_delta."""
    _check_real(delta)
    split = discriminant_split(delta)
    d, f = split.d, split.f
    sigma = delta % 2
    X1, Y1 = _unit_maximal(d)
    X, Y = X1, Y1
    for _ in range(MAX_UNIT_POWER):
        # q + r omega_delta = (2q + r sigma + r f sqrt(d)) / 2
        if Y % f == 0:
            r = Y // f
            if (X - r * sigma) % 2 == 0:
                q = (X - r * sigma) // 2
                norm = (X * X - d * Y * Y) // 4
                assert norm in (1, -1)
                return q, r, norm
        X, Y = (X * X1 + d * Y * Y1) // 2, (X * Y1 + Y * X1) // 2
    raise InvariantError(f"no power of eps_{d} up to {MAX_UNIT_POWER} lies in O_{delta}")


def roots_of_unity_count(delta: int) -> int:
    if delta >= 0:
        raise ValueError("roots of unity are counted for negative discriminants")
    return {-3: 6, -4: 4}.get(delta, 2)


@lru_cache(maxsize=4096)
def class_number_imag(delta: int) -> int:
    """Number of reduced primitive positive definite forms of discriminant delta."""
    if delta >= 0 or not is_discriminant(delta):
        raise ValueError(f"{delta} is not a negative quadratic discriminant")
    h = 0
    a = 1
    while 3 * a * a <= -delta:
        for b in range(-a + 1, a + 1):
            if (b - delta) % 2:
                continue
            num = b * b - delta
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(a, b, c) == 1:
                h += 1
        a += 1
    return h


def reduced_irrationals(delta: int) -> list[QuadIrr]:
    """All reduced irrationals of discriminant delta, sorted by (b, a)."""
    _check_real(delta)
    out = []
    root = isqrt(delta)
    for b in range(2 - delta % 2, root + 1, 2):
        n = (delta - b * b) // 4
        # sqrt(delta) - b < 2a < sqrt(delta) + b
        lo = (root - b) // 2 + 1
        hi = (root + b) // 2
        for a in range(max(lo, 1), hi + 1):
            if n % a == 0 and math.gcd(a, b, n // a) == 1:
                out.append(_trusted(a, b, delta))
    return out


def cycles(delta: int) -> list[list[QuadIrr]]:
    """Partition the reduced irrationals of delta into continued-fraction cycles.

    Each cycle is rotated to start at its lexicographically least (a, b).
    Cycles are ordered by that first element.
    """
    remaining = {xi.key for xi in reduced_irrationals(delta)}
    out = []
    while remaining:
        start = min(remaining)
        states, _, begin = _orbit(start[0], start[1], delta)
        if begin != 0:
            raise InvariantError(f"reduced state {start} is not purely periodic")
        for s in states:
            remaining.discard(s)
        out.append([_trusted(a, b, delta) for a, b in states])
    return out


@lru_cache(maxsize=4096)
def wide_class_number_real(delta: int) -> int:
    """h(delta): each cycle of reduced irrationals is one equivalence class."""
    cyc = cycles(delta)
    _, _, norm = fundamental_unit(delta)
    if norm == 1 and any(len(c) % 2 for c in cyc):
        raise InvariantError(f"odd period for discriminant {delta} with unit norm +1")
    if norm == -1 and any(len(c) % 2 == 0 for c in cyc):
        raise InvariantError(f"even period for discriminant {delta} with unit norm -1")
    return len(cyc)


def narrow_class_number_real(delta: int) -> int:
    h = wide_class_number_real(delta)
    _, _, norm = fundamental_unit(delta)
    return 2 * h if norm == 1 else h


@dataclass(frozen=True)
class OrderInfo:
    delta: int
    d: int
    f: int
    sigma: int
    unit_q: int | None = None
    unit_r: int | None = None
    unit_norm: int | None = None
    h: int = 0
    h_plus: int | None = None
    w: int | None = None


def order_info(delta: int) -> OrderInfo:
    split = discriminant_split(delta)
    if delta < 0:
        return OrderInfo(delta, split.d, split.f, delta % 2,
                         h=class_number_imag(delta), w=roots_of_unity_count(delta))
    q, r, norm = fundamental_unit(delta)
    return OrderInfo(
        delta, split.d, split.f, delta % 2, q, r, norm,
        h=wide_class_number_real(delta), h_plus=narrow_class_number_real(delta),
    )
