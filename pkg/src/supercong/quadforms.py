"""Representations c*p = a*x^2 + d*y^2 and the p-adic facts hanging off them.

The solver is a deliberately simple O(sqrt(p)) search: at sweep scale it is
instant and obviously correct, and it doubles as the oracle for the
representability predicates in the congruence catalog.  The p-adic side picks
the square root r of -d mod p^k for which x + y*r stays a unit, and checks
the degree-4 expansions of x + y*sqrt(-d) and its square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import Modulus, inv, sqrt_mod_pk


@dataclass(frozen=True)
class FormSpec:
    """The form a*x^2 + d*y^2 representing c*p."""

    a: int
    d: int
    c: int


@dataclass(frozen=True)
class QuadRep:
    x: int
    y: int
    form: FormSpec
    p: int


def represent(p: int, form: FormSpec) -> QuadRep | None:
    """Solve c*p = a*x^2 + d*y^2 with x > 0, y >= 0; least y wins.

    Returns None when no representation exists (absence is data: the harness
    cross-checks it against the catalog predicate).
    """
    a, d, c = form.a, form.d, form.c
    target = c * p
    y = 0
    while d * y * y < target:
        rem = target - d * y * y
        if rem % a == 0:
            x2 = rem // a
            x = math.isqrt(x2)
            if x * x == x2:
                return QuadRep(x, y, form, p)
        y += 1
    return None


def unit_leading(rep: QuadRep) -> QuadRep:
    """Rescale a=2 representations to an equivalent a=1 one.

    p = 2x^2 + dy^2 doubles to 2p = (2x)^2 + (2d)y^2, which is the shape the
    p-adic expansion lemma speaks about.
    """
    f = rep.form
    if f.a == 1:
        return rep
    if f.a == 2:
        return QuadRep(2 * rep.x, rep.y, FormSpec(1, 2 * f.d, 2 * f.c), rep.p)
    raise ValueError(f"unsupported leading coefficient {f.a}")


def padic_root_select(rep: QuadRep, m: Modulus) -> int:
    """Square root r of -d mod p^k such that x + y*r is a unit mod p.

    Exactly one of the two roots qualifies when y is a unit, because
    (x+yr)(x-yr) = x^2 - y^2 r^2 = x^2 + d y^2 = c*p = 0 mod p while
    2x is a unit; for y = 0 mod p either root works.
    """
    u = unit_leading(rep)
    x, y, d = u.x, u.y, u.form.d
    p = rep.p
    r = sqrt_mod_pk(-d % m.pk, m)
    if r is None:
        raise ValueError(f"-{d} is not a square mod {p}")
    if (x + y * r) % p != 0:
        return r
    r = m.pk - r
    if (x + y * r) % p == 0:
        raise AssertionError("both roots of -d give x + y*r divisible by p")
    return r


@dataclass(frozen=True)
class Lemma23Result:
    ok: bool
    p: int
    form: FormSpec
    x: int
    y: int
    diff_linear: int  # residual of the expansion of x + y*sqrt(-d), 0 on pass
    diff_square: int  # residual of the expansion of its square, 0 on pass


def lemma23_check(rep: QuadRep, m: Modulus) -> Lemma23Result:
    """Check both degree-4 p-adic expansions of A = x + y*sqrt(-d).

    With c*p = x^2 + d*y^2 and A a unit, A and A^2 admit closed expansions
    in powers of p with denominators that are powers of 2x:

        A   = 2x - cp/(2x) - c^2 p^2/(8x^3) - c^3 p^3/(16x^5)   mod p^4
        A^2 = 4x^2 - 2cp - c^2 p^2/(4x^2) - c^3 p^3/(8x^4)      mod p^4
    """
    if m.k != 4:
        raise ValueError("expansion check is a mod p^4 statement")
    u = unit_leading(rep)
    x, y, d, c = u.x, u.y, u.form.d, u.form.c
    p, pk = rep.p, m.pk
    if x % p == 0:
        raise ValueError("p divides x; representation violates preconditions")
    r = padic_root_select(rep, m)
    a_val = (x + y * r) % pk
    cp = c * p
    ix = inv(x, m)
    ix2 = ix * ix % pk
    i2 = inv(2, m)
    rhs1 = (
        2 * x
        - cp * ix % pk * i2
        - cp * cp % pk * ix % pk * ix2 % pk * inv(8, m)
        - cp * cp % pk * cp % pk * ix % pk * ix2 % pk * ix2 % pk * inv(16, m)
    ) % pk
    rhs2 = (
        4 * x * x
        - 2 * cp
        - cp * cp % pk * ix2 % pk * inv(4, m)
        - cp * cp % pk * cp % pk * ix2 % pk * ix2 % pk * inv(8, m)
    ) % pk
    diff1 = (a_val - rhs1) % pk
    diff2 = (a_val * a_val - rhs2) % pk
    return Lemma23Result(diff1 == 0 and diff2 == 0, p, u.form, x, y, diff1, diff2)


def rhs_quadratic(rep: QuadRep, template: tuple[int, int, int, int], m: Modulus) -> int:
    """Evaluate r1*x^2 + r2*p + r3*p^2 / (r4*x^2) mod p^k."""
    r1, r2, r3, r4 = template
    x, p, pk = rep.x, rep.p, m.pk
    val = (r1 * x * x + r2 * p) % pk
    if r3:
        val += r3 * p * p % pk * inv(r4 * x * x, m) % pk
    return val % pk
