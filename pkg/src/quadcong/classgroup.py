"""Class groups of real quadratic orders realized on quadratic irrationals.

Irrationals with a > 0 modulo proper (SL2) equivalence form the narrow class
group, modulo GL2 equivalence the wide class group. Every GL2 class holds
exactly one cycle of reduced irrationals; when the fundamental unit has norm
+1 the cycle has even length and its even and odd positions are the two
proper classes inside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    factorize,
    is_fundamental,
    kronecker,
    prime_discriminants,
)
from .cfrac import (
    QuadIrr,
    _orbit,
    _trusted,
    hirzebruch_psi,
    minus_conjugate,
)
from .orders import (
    InvariantError,
    class_number_imag,
    cycles,
    fundamental_unit,
    roots_of_unity_count,
)


def principal(delta: int) -> QuadIrr:
    """omega_delta = (sigma + sqrt(delta)) / 2."""
    return QuadIrr(1, delta % 2, delta)


def _solve_linear(coef: int, rhs: int, mod: int) -> tuple[int, int]:
    """Solve coef * x = rhs (mod mod); returns (x0, m) meaning x = x0 (mod m)."""
    g = math.gcd(coef, mod)
    if rhs % g:
        raise InvariantError(f"unsolvable congruence {coef}x = {rhs} mod {mod}")
    m = mod // g
    if m == 1:
        return 0, 1
    return (rhs // g) * pow(coef // g, -1, m) % m, m


def _crt(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        raise InvariantError(f"incompatible residues {r1} mod {m1}, {r2} mod {m2}")
    lcm = m1 // g * m2
    if m1 // g == 1 or m2 // g == 1:
        return (r1 if m1 >= m2 else r2) % lcm, lcm
    t = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g)
    return (r1 + m1 * t) % lcm, lcm


def compose(xi: QuadIrr, eta: QuadIrr) -> QuadIrr:
    """Composition of two irrationals with positive a, via the congruence system for b3."""
    if xi.delta != eta.delta:
        raise ValueError("composition needs equal discriminants")
    if xi.a <= 0 or eta.a <= 0:
        raise ValueError("composition is defined for a > 0")
    delta = xi.delta
    a1, b1, a2, b2 = xi.a, xi.b, eta.a, eta.b
    half = (b1 + b2) // 2
    e = math.gcd(a1, a2, half)
    a3 = a1 * a2 // (e * e)
    mod = 2 * a3
    x, m = _crt(b1, 2 * a1 // e, b2, 2 * a2 // e)
    num = delta + b1 * b2
    if num % (2 * e):
        raise InvariantError("(delta + b1 b2) / 2e is not integral")
    # third congruence: (half/e) * (x + m t) = num/(2e)  (mod 2 a3), solve for t
    coef = half // e
    t0, tm = _solve_linear(coef * m, num // (2 * e) - coef * x, mod)
    b3 = (x + m * t0) % mod
    if m * tm % mod:
        raise InvariantError(f"b3 is not unique modulo {mod}")
    if (b3 * b3 - delta) % (4 * a3):
        raise InvariantError("composition left the discriminant")
    return QuadIrr(a3, b3, delta)


def _cycle_with_offset(xi: QuadIrr) -> tuple[list[tuple[int, int]], int]:
    """Cycle states of xi and the index within them reached after an even number of steps."""
    states, _, start = _orbit(xi.a, xi.b, xi.delta)
    cyc = states[start:]
    # state i of the cycle is reached from xi after start + i steps
    return cyc, start % 2


def reduce_rep(xi: QuadIrr) -> QuadIrr:
    """Canonical reduced representative of the proper class of xi.

    This is the least (a, b) among cycle states reached from xi after an even
    number of continued-fraction steps.
    """
    cyc, parity = _cycle_with_offset(xi)
    n = len(cyc)
    if n % 2:
        best = min(cyc)
    else:
        best = min(cyc[i] for i in range(parity, n, 2))
    return _trusted(best[0], best[1], xi.delta)


def wide_rep(xi: QuadIrr) -> QuadIrr:
    """Canonical representative of the GL2 class of xi: least state on its cycle."""
    cyc, _ = _cycle_with_offset(xi)
    a, b = min(cyc)
    return _trusted(a, b, xi.delta)


def properly_equivalent(xi: QuadIrr, eta: QuadIrr) -> bool:
    if xi.delta != eta.delta:
        return False
    return reduce_rep(xi) == reduce_rep(eta)


def widely_equivalent(xi: QuadIrr, eta: QuadIrr) -> bool:
    if xi.delta != eta.delta:
        return False
    return wide_rep(xi) == wide_rep(eta)


@dataclass(frozen=True)
class ClassTable:
    delta: int
    narrow_reps: tuple[QuadIrr, ...]
    wide_reps: tuple[QuadIrr, ...]
    principal: QuadIrr

    def narrow_index(self, xi: QuadIrr) -> int:
        return self.narrow_reps.index(reduce_rep(xi))

    def wide_index(self, xi: QuadIrr) -> int:
        return self.wide_reps.index(wide_rep(xi))

    def multiply(self, xi: QuadIrr, eta: QuadIrr) -> QuadIrr:
        return reduce_rep(compose(xi, eta))


def class_table(delta: int, check: bool = False) -> ClassTable:
    """Narrow and wide class representatives for a positive discriminant.

    With ``check`` the group axioms are verified on the narrow classes.
    """
    narrow = []
    wide = []
    for cyc in cycles(delta):
        first = cyc[0]
        wide.append(first)
        narrow.append(reduce_rep(first))
        if len(cyc) % 2 == 0:
            narrow.append(reduce_rep(cyc[1]))
    narrow.sort()
    table = ClassTable(delta, tuple(narrow), tuple(wide), reduce_rep(principal(delta)))
    if check:
        check_group_axioms(table)
    return table


def check_group_axioms(table: ClassTable) -> None:
    reps = table.narrow_reps
    e = table.principal
    index = {r: i for i, r in enumerate(reps)}
    mul = [[index[table.multiply(x, y)] for y in reps] for x in reps]
    n = len(reps)
    ie = index[e]
    for i in range(n):
        if mul[i][ie] != i:
            raise InvariantError(f"identity fails on {reps[i]}")
        if mul[i][index[reduce_rep(minus_conjugate(reps[i]))]] != ie:
            raise InvariantError(f"-xi' is not inverse to {reps[i]}")
        for j in range(n):
            if mul[i][j] != mul[j][i]:
                raise InvariantError("composition is not commutative")
            for k in range(n):
                if mul[mul[i][j]][k] != mul[i][mul[j][k]]:
                    raise InvariantError("composition is not associative")


def _genus_factor(q: int, xi: QuadIrr) -> int:
    a, c = xi.a, xi.c
    va = kronecker(q, a) if math.gcd(a, q) == 1 else None
    vc = kronecker(q, c) if math.gcd(c, q) == 1 else None
    if va is None and vc is None:
        raise InvariantError(f"character undefined on representative {xi}")
    if va is not None and vc is not None and va != vc:
        raise InvariantError(f"chi_{q}(a) != chi_{q}(c) on {xi}")
    return va if va is not None else vc


def genus_character(d1: int, d2: int, xi: QuadIrr) -> int:
    """Genus character attached to the splitting delta = d1 d2 f^2."""
    f2, rem = divmod(xi.delta, d1 * d2)
    if rem or f2 <= 0 or math.isqrt(f2) ** 2 != f2:
        raise ValueError(f"{xi.delta} is not {d1}*{d2}*f^2")
    value = 1
    for q in prime_discriminants(d1):
        value *= _genus_factor(q, xi)
    return value


def theta(d1: int, d2: int, f: int) -> Fraction:
    result = Fraction(1)
    for p, m in factorize(f) if f > 1 else []:
        x1, x2 = kronecker(d1, p), kronecker(d2, p)
        num = (1 - x1) * (1 - x2) - p ** (m - 1) * (p - x1) * (p - x2)
        result *= Fraction(num, 1 - p)
    return result


@dataclass(frozen=True)
class KMZResult:
    lhs: Fraction
    rhs: int
    equal: bool


def chi_psi_sum(d1: int, d2: int, f: int) -> int:
    """Sum of chi * Psi over the wide classes of d1 d2 f^2, one reduced rep each."""
    delta = d1 * d2 * f * f
    total = 0
    for cyc in cycles(delta):
        xi = cyc[0]
        total += genus_character(d1, d2, xi) * hirzebruch_psi(xi)
    return total


def kmz_check(d1: int, d2: int, f: int) -> KMZResult:
    """Both sides of the class-number identity for (d1, d2, f)."""
    if d1 == d2 or d1 >= 0 or d2 >= 0 or not (is_fundamental(d1) and is_fundamental(d2)):
        raise ValueError("d1, d2 must be distinct negative fundamental discriminants")
    if f < 1:
        raise ValueError("f must be positive")
    delta = d1 * d2 * f * f
    if fundamental_unit(delta)[2] != 1:
        raise InvariantError(f"unit of {delta} has norm -1")
    lhs = (
        Fraction(24 * class_number_imag(d1) * class_number_imag(d2),
                 roots_of_unity_count(d1) * roots_of_unity_count(d2))
        * theta(d1, d2, f)
    )
    rhs = chi_psi_sum(d1, d2, f)
    return KMZResult(lhs, rhs, lhs == rhs)


def coprime_representative(xi: QuadIrr, factor: int = 2) -> QuadIrr:
    """A reduced irrational on the cycle of xi whose a is coprime to factor."""
    for a, b in _cycle_with_offset(xi)[0]:
        if math.gcd(a, factor) == 1:
            return _trusted(a, b, xi.delta)
    raise InvariantError(f"no representative with a coprime to {factor} on the cycle of {xi}")


def lift_class(xi: QuadIrr, factor: int = 2) -> QuadIrr:
    """Form-level lift (a, b, c) -> (a, g b, g^2 c) into discriminant g^2 delta."""
    if math.gcd(xi.a, factor) != 1:
        raise ValueError(f"lift needs gcd(a, {factor}) = 1, got a = {xi.a}")
    return QuadIrr(xi.a, factor * xi.b, factor * factor * xi.delta)


def wide_multiply(xi: QuadIrr, eta: QuadIrr) -> QuadIrr:
    """Product in the wide class group, as a wide representative."""
    return wide_rep(compose(wide_rep(xi), wide_rep(eta)))


def wide_power(xi: QuadIrr, n: int) -> QuadIrr:
    result = wide_rep(principal(xi.delta))
    base = wide_rep(xi)
    while n > 0:
        if n & 1:
            result = wide_multiply(result, base)
        base = wide_multiply(base, base)
        n >>= 1
    return result


def lift_image(delta: int, factor: int = 2) -> list[QuadIrr]:
    """Image of each wide class of delta under the lift into factor^2 * delta.

    The form-level lift of a representative is only determined up to the
    kernel of the norm map back to delta. When h(delta) = m is coprime to the
    index k = h(factor^2 delta) / m, the lifted class y is replaced by its
    component of order dividing m, namely y^e with e = 1 (mod m), e = 0 (mod k).
    This is independent of the chosen representative and multiplicative.
    """
    big = factor * factor * delta
    m = len(cycles(delta))
    k, rem = divmod(len(cycles(big)), m)
    if rem or math.gcd(m, k) != 1:
        raise InvariantError(f"no canonical section from {delta} to {big}")
    e = k * pow(k, -1, m) if m > 1 else 0
    return [wide_power(lift_class(coprime_representative(cyc[0], factor), factor), e)
            for cyc in cycles(delta)]


def ambiguous_ideals(p: int) -> list[tuple[str, QuadIrr]]:
    """The eight ambiguous ideals (a, (b + sqrt(32p))/2) of O_32p as irrationals."""
    delta = 32 * p
    pairs = [
        ("(1,√8p)", 1, 0), ("(8,√8p)", 8, 0), ("(p,√8p)", p, 0), ("(8p,√8p)", 8 * p, 0),
        ("(4,2+√8p)", 4, 4), ("(8,4+√8p)", 8, 8),
        ("(4p,2p+√8p)", 4 * p, 4 * p), ("(8p,4p+√8p)", 8 * p, 8 * p),
    ]
    return [(name, QuadIrr(a, b, delta)) for name, a, b in pairs]


# ambiguous ideals sharing a class with omega^Am, by p mod 8
_AM_CLASS = {
    3: {"(4,2+√8p)", "(8,√8p)", "(p,√8p)", "(8p,4p+√8p)"},
    7: {"(4,2+√8p)", "(8,4+√8p)", "(4p,2p+√8p)", "(8p,4p+√8p)"},
}


@dataclass(frozen=True)
class AmbiguousData:
    p: int
    am_reps: tuple[QuadIrr, QuadIrr]
    ideal_classes: dict


def ambiguous_data(p: int) -> AmbiguousData:
    """Assign each ambiguous ideal of O_32p to the class of omega or of omega^Am."""
    if p % 4 != 3:
        raise ValueError("p must be 3 mod 4")
    delta = 32 * p
    omega, omega_am = QuadIrr(1, 0, delta), QuadIrr(4, 4, delta)
    if widely_equivalent(omega, omega_am):
        raise InvariantError("omega and omega^Am are equivalent")
    classes = {}
    for name, xi in ambiguous_ideals(p):
        if widely_equivalent(xi, omega):
            classes[name] = 0
        elif widely_equivalent(xi, omega_am):
            classes[name] = 1
        else:
            raise InvariantError(f"ambiguous ideal {name} is in neither ambiguous class")
    expected = _AM_CLASS[p % 8]
    got = {name for name, k in classes.items() if k == 1}
    if got != expected:
        raise InvariantError(f"ambiguous partition mismatch for p={p}: {sorted(got)}")
    return AmbiguousData(p, (omega, omega_am), classes)

