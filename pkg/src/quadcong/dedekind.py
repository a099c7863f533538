"""Dedekind sums and the matrix invariant n_M.

The invariant of a hyperbolic matrix M = (x y; z w) in SL2(Z) with z != 0 is

    n_M = (x + w)/z - sign(z) * (3 + 12 s(w, |z|)),

and for a quadratic irrational xi with totally positive fundamental unit,
n(xi) = n_{M_xi} agrees with the Hirzebruch sum of xi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cfrac import QuadIrr

NAIVE_LIMIT = 10**6


def sawtooth(y) -> Fraction:
    y = Fraction(y)
    if y.denominator == 1:
        return Fraction(0)
    return y - math.floor(y) - Fraction(1, 2)


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h, k) in O(log k) steps.

    Telescoping the reciprocity law along the Euclidean remainders
    k = r0 > r1 = h > r2 > ... > rn = 1 gives

        12 k s(h, k) = k * sum (-1)^(i+1) a_i + h + e - 3k [n odd]

    where a_i are the partial quotients of k/h and e/k is the alternating
    sum of 1/(r_{i-1} r_i), accumulated backwards with exact division.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    if math.gcd(h, k) != 1:
        raise ValueError(f"gcd({h}, {k}) != 1")
    sign = 1
    if h < 0:
        sign, h = -1, -h
    h %= k
    if k == 1:
        return Fraction(0)
    rems = [k, h]
    quots = []
    while rems[-1]:
        quots.append(rems[-2] // rems[-1])
        rems.append(rems[-2] % rems[-1])
    n = len(quots)
    # e_j = ((-1)^(j+1) + e_{j+1} r_{j-1}) / r_j, starting from e_{n+1} = 0
    e = 0
    for j in range(n, 0, -1):
        num = (1 if j % 2 else -1) + e * rems[j - 1]
        e, rem = divmod(num, rems[j])
        assert rem == 0
    alt = sum(q if i % 2 == 0 else -q for i, q in enumerate(quots))
    total = k * alt + h + e - (3 * k if n % 2 else 0)
    return sign * Fraction(total, 12 * k)


def dedekind_sum_naive(h: int, k: int) -> Fraction:
    """Literal O(k) summation of the definition; test oracle only."""
    if k <= 0:
        raise ValueError("k must be positive")
    if k > NAIVE_LIMIT:
        raise ValueError(f"k={k} exceeds the naive-summation guard {NAIVE_LIMIT}")
    if math.gcd(h, k) != 1:
        raise ValueError(f"gcd({h}, {k}) != 1")
    return sum(
        (sawtooth(Fraction(h * m, k)) * sawtooth(Fraction(m, k)) for m in range(1, k + 1)),
        Fraction(0),
    )


@dataclass(frozen=True)
class Mat2:
    x: int
    y: int
    z: int
    w: int

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.x * o.x + self.y * o.z,
            self.x * o.y + self.y * o.w,
            self.z * o.x + self.w * o.z,
            self.z * o.y + self.w * o.w,
        )

    @property
    def det(self) -> int:
        return self.x * self.w - self.y * self.z

    @property
    def trace(self) -> int:
        return self.x + self.w

    def inverse(self) -> "Mat2":
        if self.det != 1:
            raise ValueError("only SL2(Z) matrices are inverted")
        return Mat2(self.w, -self.y, -self.z, self.x)


T = Mat2(1, 1, 0, 1)
S = Mat2(0, -1, 1, 0)
B = Mat2(3, -1, 1, 0)


def n_of_matrix(m: Mat2) -> Fraction:
    if m.z == 0:
        raise ValueError("n_M is undefined for z = 0")
    if m.det != 1:
        raise ValueError(f"determinant {m.det} != 1")
    sgn = 1 if m.z > 0 else -1
    return Fraction(m.x + m.w, m.z) - sgn * (3 + 12 * dedekind_sum(m.w, abs(m.z)))


def matrix_of(xi: QuadIrr, unit: tuple[int, int]) -> Mat2:
    """M_xi with eps*xi = x*xi + y and eps = z*xi + w, where eps = q + r*omega."""
    q, r = unit
    a, b, delta = xi.a, xi.b, xi.delta
    sigma = delta % 2
    s = (b - sigma) // 2
    # (U E) adj(U) / det(U) with U = (1 s; 0 a), E = (q + r sigma, r (delta - sigma)/4; r, q)
    e11, e12 = q + r * sigma, r * (delta - sigma) // 4
    x0, y0 = e11 + s * r, e12 + s * q
    z0, w0 = a * r, a * q
    x, y = x0 * a, -x0 * s + y0
    z, w = z0 * a, -z0 * s + w0
    if y % a or w % a:
        raise AssertionError(f"non-integral M_xi for {xi}")
    return Mat2(x // a, y // a, z // a, w // a)


def n_of(xi: QuadIrr) -> Fraction:
    from .orders import fundamental_unit

    q, r, norm = fundamental_unit(xi.delta)
    if norm != 1:
        raise ValueError(f"n(xi) needs a unit of norm +1; discriminant {xi.delta} has norm -1")
    return n_of_matrix(matrix_of(xi, (q, r)))
