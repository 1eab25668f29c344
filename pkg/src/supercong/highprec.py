"""Arbitrary-precision evaluation of eta, the Weber functions, gamma2/j and
the six Hauptmoduls at points of the upper half-plane.

Values are mpmath complex numbers; every function takes the working precision
in bits explicitly.  CM points are carried exactly (rational + rational
multiple of sqrt(-D)) and realized to floating point only at evaluation time.
The eta series is truncated from a per-point tail bound: with |q| =
exp(-2*pi*Im(tau)), terms beyond |q|^E < 2^-(prec+guard) cannot move the
result at working precision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

_GUARD_BITS = 32


@dataclass(frozen=True)
class QuadraticPoint:
    """tau = re + im * sqrt(d) * i with rational re, im and integer d > 0."""

    re: Fraction
    im: Fraction
    d: int

    def to_mpc(self, prec: int) -> mpmath.mpc:
        with mp.workprec(prec):
            real = mpmath.mpf(self.re.numerator) / self.re.denominator
            imag = (
                mpmath.mpf(self.im.numerator) / self.im.denominator * mpmath.sqrt(self.d)
            )
            return mpmath.mpc(real, imag)

    def label(self) -> str:
        if self.d == 1:
            root = "i"
        else:
            root = f"sqrt(-{self.d})"
        num = f"{self.re} + {self.im}*{root}" if self.re else f"{self.im}*{root}"
        return num


def eta_num(tau: mpmath.mpc, prec: int) -> mpmath.mpc:
    """eta(tau) via the sparse pentagonal-number series, rigorously truncated."""
    b = mpmath.im(tau)
    if b <= 0:
        raise ValueError("eta needs Im(tau) > 0")
    work = prec + _GUARD_BITS
    with mp.workprec(work):
        two_pi_b = 2 * mpmath.pi * b
        bound = int(mpmath.ceil(work * mpmath.ln(2) / two_pi_b)) + 2
        q = mpmath.expjpi(2 * tau)
        s = mpmath.mpc(1)
        k = 1
        while k * (3 * k - 1) // 2 <= bound:
            sign = -1 if k % 2 else 1
            s += sign * (q ** (k * (3 * k - 1) // 2) + q ** (k * (3 * k + 1) // 2))
            k += 1
        return mpmath.expjpi(tau / 12) * s


def weber(tau: mpmath.mpc, which: str, prec: int) -> mpmath.mpc:
    """Weber f, f1, f2 as eta quotients at shifted/scaled arguments."""
    with mp.workprec(prec + _GUARD_BITS):
        if which == "f":
            zeta48_inv = mpmath.expjpi(mpmath.mpf(-1) / 24)
            return zeta48_inv * eta_num((tau + 1) / 2, prec) / eta_num(tau, prec)
        if which == "f1":
            return eta_num(tau / 2, prec) / eta_num(tau, prec)
        if which == "f2":
            return mpmath.sqrt(2) * eta_num(2 * tau, prec) / eta_num(tau, prec)
    raise ValueError(f"unknown Weber function {which!r}")


def gamma2_j(tau: mpmath.mpc, prec: int) -> tuple[mpmath.mpc, mpmath.mpc]:
    """gamma2 = (f^24 - 16) / f^8 and j = gamma2^3."""
    with mp.workprec(prec + _GUARD_BITS):
        f = weber(tau, "f", prec)
        f8 = f**8
        g2 = (f8**3 - 16) / f8
        return g2, g2**3


def _eta_quotient(tau, prec, num: list[int], den: list[int], power: int):
    with mp.workprec(prec + _GUARD_BITS):
        val = mpmath.mpc(1)
        for mult in num:
            val *= eta_num(mult * tau, prec)
        for mult in den:
            val /= eta_num(mult * tau, prec)
        return val**power


def hauptmodul_value(tag: str, tau: mpmath.mpc, prec: int) -> mpmath.mpc:
    if tag == "t":
        return _eta_quotient(tau, prec, [1, 4], [2, 2], 24)
    if tag == "u":
        with mp.workprec(prec + _GUARD_BITS):
            f24 = weber(tau, "f2", prec) ** 24
            return f24 / (f24 + 64) ** 2
    if tag == "s":
        return _eta_quotient(tau, prec, [4], [1], 8)
    if tag == "w":
        return _eta_quotient(tau, prec, [1, 8], [2, 4], 8)
    if tag == "v":
        return _eta_quotient(tau, prec, [1, 3, 4, 12], [2, 2, 6, 6], 6)
    if tag == "h":
        return _eta_quotient(tau, prec, [1, 6], [2, 3], 12)
    if tag == "gamma2":
        return gamma2_j(tau, prec)[0]
    if tag == "j":
        return gamma2_j(tau, prec)[1]
    raise ValueError(f"unknown function tag {tag!r}")


@dataclass(frozen=True)
class CMTarget:
    name: str
    fn: str
    point: QuadraticPoint
    expected: Fraction


def _q(a, b=1):
    return Fraction(a, b)


def cm_table() -> list[CMTarget]:
    """Every exact CM value certified by the suite."""
    rows = [
        # t on Gamma_0(4)+
        ("t", _q(3, 8), _q(1, 8), 7, _q(1)),
        ("t", _q(0), _q(1, 2), 7, _q(1, 4096)),
        ("t", _q(3, 4), _q(1, 4), 3, _q(1, 16)),
        ("t", _q(0), _q(1, 2), 3, _q(1, 256)),
        ("t", _q(1, 2), _q(1, 2), 1, _q(-1, 8)),
        ("t", _q(1, 2), _q(1, 2), 2, _q(-1, 64)),
        # u on Gamma_0(2)+
        ("u", _q(0), _q(1, 2), 2, _q(1, 256)),
        ("u", _q(1, 2), _q(1, 2), 3, _q(-1, 144)),
        ("u", _q(1, 4), _q(1, 4), 1, _q(1, 648)),
        ("u", _q(1, 2), _q(1, 2), 7, _q(-1, 3969)),
        ("u", _q(1, 4), _q(1, 4), 7, _q(1, 81)),
        ("u", _q(1, 2), _q(3, 2), 1, _q(-1, 12288)),
        ("u", _q(1, 2), _q(5, 2), 1, _q(-1, 6635520)),
        ("u", _q(1, 2), _q(1, 2), 5, _q(-1, 1024)),
        ("u", _q(1, 2), _q(1, 2), 13, _q(-1, 82944)),
        ("u", _q(1, 2), _q(1, 2), 37, _q(-1, 14112 * 14112)),
        ("u", _q(0), _q(1, 2), 6, _q(1, 48 * 48)),
        ("u", _q(0), _q(1, 2), 10, _q(1, 12**4)),
        ("u", _q(0), _q(3, 2), 2, _q(1, 28**4)),
        ("u", _q(0), _q(1, 2), 22, _q(1, 1584 * 1584)),
        ("u", _q(0), _q(1, 2), 58, _q(1, 396**4)),
        # s on Gamma_0(4)
        ("s", _q(0), _q(1, 2), 1, _q(1, 16)),
        ("s", _q(-1, 4), _q(1, 4), 1, _q(-1, 8)),
        # w on Gamma_0(8)+
        ("w", _q(1, 2), _q(1, 4), 2, _q(-1, 4)),
        ("w", _q(5, 16), _q(1, 16), 7, _q(1)),
        ("w", _q(1, 8), _q(1, 8), 7, _q(1, 16)),
        # v on Gamma_0(12)+
        ("v", _q(1, 6), _q(1, 6), 2, _q(1, 8)),
        ("v", _q(1, 2), _q(1, 6), 3, _q(-1, 2)),
        ("v", _q(1, 2), _q(1, 3), 3, _q(-1, 32)),
        ("v", _q(1, 2), _q(1, 6), 6, _q(-1, 8)),
        # h on Gamma_0(6)+
        ("h", _q(1, 3), _q(1, 6), 2, _q(1)),
        ("h", _q(1, 2), _q(1, 6), 3, _q(-1)),
    ]
    out = []
    for fn, re, im, d, expected in rows:
        pt = QuadraticPoint(re, im, d)
        out.append(CMTarget(f"{fn}({pt.label()})", fn, pt, expected))
    return out


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    residual: float


def cm_check(target: CMTarget, digits: int, work_digits: int | None = None) -> CheckResult:
    """Evaluate the target's function at its CM point and compare exactly.

    Real targets must also have a vanishing imaginary part at tolerance.
    """
    if digits < 10:
        raise ValueError("digits must be >= 10")
    if work_digits is None:
        work_digits = max(digits + 20, 80)
    prec = int(work_digits * 3.33) + 8
    with mp.workprec(prec):
        tau = target.point.to_mpc(prec)
        val = hauptmodul_value(target.fn, tau, prec)
        expect = mpmath.mpf(target.expected.numerator) / target.expected.denominator
        residual = max(abs(mpmath.re(val) - expect), abs(mpmath.im(val)))
        tol = mpmath.mpf(10) ** (-digits)
        return CheckResult(target.name, residual < tol, float(residual))


@dataclass(frozen=True)
class SurdValue:
    """(a + b*sqrt(d)) / den with integer a, b, d, den."""

    a: int
    b: int
    d: int
    den: int = 1

    def to_mpf(self, prec: int) -> mpmath.mpf:
        with mp.workprec(prec):
            return (self.a + self.b * mpmath.sqrt(self.d)) / self.den

    def __str__(self) -> str:
        return f"({self.a}+{self.b}*sqrt({self.d}))/{self.den}"


# Class invariants 2^(-1/4) f(sqrt(-n)) resp. 2^(-1/4) f1(sqrt(-n)); the
# listed power of each has the stated closed form.
CLASS_INVARIANTS = [
    ("G5", "f", 5, 4, SurdValue(1, 1, 5, 2)),
    ("G9", "f", 9, 6, SurdValue(2, 1, 3)),
    ("G13", "f", 13, 4, SurdValue(3, 1, 13, 2)),
    ("G25", "f", 25, 1, SurdValue(1, 1, 5, 2)),
    ("G37", "f", 37, 4, SurdValue(6, 1, 37)),
    ("g6", "f1", 6, 6, SurdValue(1, 1, 2)),
    ("g10", "f1", 10, 2, SurdValue(1, 1, 5, 2)),
    ("g18", "f1", 18, 6, SurdValue(5, 2, 6)),
    ("g22", "f1", 22, 2, SurdValue(1, 1, 2)),
    ("g58", "f1", 58, 2, SurdValue(5, 1, 29, 2)),
    ("g58^12", "f1", 58, 12, SurdValue(9801, 1820, 29)),
]


def class_invariant_check(digits: int, work_digits: int | None = None) -> list[CheckResult]:
    if digits < 10:
        raise ValueError("digits must be >= 10")
    if work_digits is None:
        work_digits = max(digits + 20, 80)
    prec = int(work_digits * 3.33) + 8
    out = []
    with mp.workprec(prec):
        tol = mpmath.mpf(10) ** (-digits)
        quarter = mpmath.mpf(2) ** mpmath.mpf("-0.25")
        for name, which, n, power, closed in CLASS_INVARIANTS:
            tau = mpmath.mpc(0, mpmath.sqrt(n))
            g = quarter * weber(tau, which, prec)
            val = g**power
            residual = max(
                abs(mpmath.re(val) - closed.to_mpf(prec)), abs(mpmath.im(val))
            )
            out.append(CheckResult(f"{name}^{power}={closed}", residual < tol, float(residual)))
    return out


# -- random-sample identity suite -------------------------------------------


def _random_tau(rng: random.Random) -> mpmath.mpc:
    return mpmath.mpc(rng.uniform(-0.9, 0.9), rng.uniform(0.6, 1.6))


def _random_gamma0_4(rng: random.Random) -> tuple[int, int, int, int]:
    while True:
        c = 4 * rng.randint(1, 6)
        a = rng.randrange(1, 4 * c, 2)
        if _gcd(a, c) == 1:
            break
    d = pow(a, -1, c)
    b = (a * d - 1) // c
    return a, b, c, d


def _random_sl2(rng: random.Random) -> tuple[int, int, int, int]:
    while True:
        c = rng.randint(1, 8)
        a = rng.randint(-10, 10)
        if a and _gcd(abs(a), c) == 1:
            break
    d = pow(a, -1, c)
    b = (a * d - 1) // c
    return a, b, c, d


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _eta_mult_gamma0_4(a: int, b: int, c: int, d: int, tau, prec):
    """Right-hand side of the eta transformation on Gamma_0(4)."""
    from .arith import jacobi

    r = 0
    c0 = c
    while c0 % 2 == 0:
        c0 //= 2
        r += 1
    expo = (
        a * b
        + c * d * (1 - a * a)
        - c * a
        + 3 * c0 * (a - 1)
        + r * 3 * (a * a - 1) // 2
    )
    with mp.workprec(prec):
        zeta24 = mpmath.expjpi(mpmath.mpf(1) / 12)
        return jacobi(a, c0) * zeta24**expo * mpmath.sqrt(c * tau + d) * eta_num(tau, prec)


def identity_suite(samples: int, prec: int, seed: int = 12345) -> list[CheckResult]:
    """Numeric checks of the transformation and Weber-function identities.

    Runs `samples` random draws per identity and reports the worst residual;
    all residuals must sit far below 2^(-prec/2).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    worst: dict[str, float] = {}

    def note(name: str, residual) -> None:
        worst[name] = max(worst.get(name, 0.0), float(residual))

    with mp.workprec(prec + _GUARD_BITS):
        zeta24 = mpmath.expjpi(mpmath.mpf(1) / 12)
        zeta48_inv = mpmath.expjpi(mpmath.mpf(-1) / 24)
        omega = (-1 + mpmath.sqrt(-3)) / 2
        sqrt2 = mpmath.sqrt(2)
        for _ in range(samples):
            tau = _random_tau(rng)
            e_tau = eta_num(tau, prec)
            note("eta-shift", abs(eta_num(tau + 1, prec) - zeta24 * e_tau))
            note(
                "eta-inversion",
                abs(eta_num(-1 / tau, prec) - mpmath.sqrt(-1j * tau) * e_tau),
            )
            a, b, c, d = _random_gamma0_4(rng)
            lhs = eta_num((a * tau + b) / (c * tau + d), prec)
            note("eta-gamma0(4)", abs(lhs - _eta_mult_gamma0_4(a, b, c, d, tau, prec)))

            f = weber(tau, "f", prec)
            f1 = weber(tau, "f1", prec)
            f2 = weber(tau, "f2", prec)
            note("f*f1*f2=sqrt2", abs(f * f1 * f2 - sqrt2))
            note("f1(2t)f2(t)=sqrt2", abs(weber(2 * tau, "f1", prec) * f2 - sqrt2))
            inv_tau = -1 / tau
            note("f(-1/t)=f(t)", abs(weber(inv_tau, "f", prec) - f))
            note("f1(-1/t)=f2(t)", abs(weber(inv_tau, "f1", prec) - f2))
            note("f2(-1/t)=f1(t)", abs(weber(inv_tau, "f2", prec) - f1))
            note("f(t+1)=z48^-1 f1", abs(weber(tau + 1, "f", prec) - zeta48_inv * f1))

            # conjugation symmetry at tau = x + i*y
            x = rng.uniform(-1.5, 1.5)
            y = rng.uniform(0.6, 1.8)
            for which in ("f", "f1", "f2"):
                left = mpmath.conj(weber(mpmath.mpc(x, y), which, prec))
                right = weber(mpmath.mpc(-x, y), which, prec)
                note("conjugation", abs(left - right))

            # -f^8, f1^8, f2^8 are the roots of X^3 - gamma2 X + 16
            g2, _ = gamma2_j(tau, prec)
            x0, x1, x2 = -(f**8), f1**8, f2**8
            note("cubic-sum", abs(x0 + x1 + x2))
            note("cubic-product", abs(x0 * x1 * x2 + 16))
            note("cubic-pairsum", abs(x0 * x1 + x0 * x2 + x1 * x2 + g2))

            a, b, c, d = _random_sl2(rng)
            g2m, _ = gamma2_j((a * tau + b) / (c * tau + d), prec)
            expo = (a * c - a * b + a * a * c * d - c * d) % 3
            note("gamma2-transform", abs(g2m - omega**expo * g2))

        # fixed-point facts
        note("f1(sqrt-2)^2", abs(weber(mpmath.mpc(0, mpmath.sqrt(2)), "f1", prec) ** 2 - sqrt2))
        g2_7, _ = gamma2_j(mpmath.mpc(0, mpmath.sqrt(7)), prec)
        note("gamma2(sqrt-7)=255", abs(g2_7 - 255))
        tau7 = mpmath.mpc(0, mpmath.sqrt(7))
        roots = sorted(
            [
                mpmath.re(-weber(tau7, "f", prec) ** 8),
                mpmath.re(weber(tau7, "f1", prec) ** 8),
                mpmath.re(weber(tau7, "f2", prec) ** 8),
            ]
        )
        root7 = 3 * mpmath.sqrt(7)
        expected = sorted([mpmath.mpf(-16), 8 - root7, 8 + root7])
        note("cubic-roots(sqrt-7)", max(abs(r - e) for r, e in zip(roots, expected)))

        tol = mpmath.mpf(2) ** (-(prec // 2))
        return [CheckResult(name, worst[name] < tol, worst[name]) for name in sorted(worst)]
