"""Truncated q-expansions with exact rational coefficients.

A QSeries is q^(off24/24) * sum(coeffs[i] * q^i); offsets are kept as integer
multiples of 1/24, which is exactly the granularity eta quotients need.
Coefficients are ints whenever possible and Fractions otherwise; arithmetic
is exact, and truncation is pessimistic (an operation's result is only as
long as it is provably correct).

On top of the core algebra: the eta expansion, the weight-2 Eisenstein
series, the six Hauptmoduls t/u/s/w/v/h with their alternative product
constructions, and the identity checks the verification suite runs (the six
generating-function identities, the cubic relation between t and j(2tau),
and the third-order differential equation satisfied by the V generating
function).
"""

from __future__ import annotations

from fractions import Fraction

from .sequences import SequenceId, exact_terms


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class QSeries:
    __slots__ = ("off24", "coeffs")

    def __init__(self, off24: int, coeffs: list):
        self.off24 = off24
        self.coeffs = [_norm(c) for c in coeffs]

    # -- structure ---------------------------------------------------------

    @property
    def length(self) -> int:
        return len(self.coeffs)

    @property
    def offset(self) -> Fraction:
        return Fraction(self.off24, 24)

    def coeff(self, n: int) -> Fraction | int:
        """Coefficient of q^(off24/24 + n); n may be negative (then 0)."""
        if n < 0:
            return 0
        if n >= len(self.coeffs):
            raise IndexError(f"coefficient q^{n} beyond truncation {len(self.coeffs)}")
        return self.coeffs[n]

    def coeff_at(self, exponent: int) -> Fraction | int:
        """Coefficient of q^exponent for integer-offset series."""
        if self.off24 % 24:
            raise ValueError("coeff_at needs an integral leading exponent")
        return self.coeff(exponent - self.off24 // 24)

    def truncate(self, length: int) -> "QSeries":
        return QSeries(self.off24, self.coeffs[:length])

    def shift24(self, amount: int) -> "QSeries":
        """Multiply by the exact monomial q^(amount/24)."""
        return QSeries(self.off24 + amount, self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"QSeries(q^({self.off24}/24) * [{head}, ...], len={len(self.coeffs)})"

    # -- ring operations ----------------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries(self.off24, [-c for c in self.coeffs])

    def scale(self, factor) -> "QSeries":
        return QSeries(self.off24, [c * factor for c in self.coeffs])

    def __add__(self, other: "QSeries") -> "QSeries":
        diff = other.off24 - self.off24
        if diff < 0:
            return other + self
        if diff % 24:
            raise ValueError("offsets differ by a non-integral q-power; cannot add")
        shift = diff // 24
        n = min(len(self.coeffs), shift + len(other.coeffs))
        out = list(self.coeffs[:n])
        for i, c in enumerate(other.coeffs):
            j = i + shift
            if j >= n:
                break
            out[j] = out[j] + c
        return QSeries(self.off24, out)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def add_const(self, value) -> "QSeries":
        """Add an exact constant; kept exact, so truncation does not shrink."""
        if self.off24 % 24:
            raise ValueError("cannot add a constant to a fractional-offset series")
        off = self.off24 // 24
        if off <= 0:
            idx = -off
            if idx >= len(self.coeffs):
                raise ValueError("constant lies beyond the known truncation")
            out = list(self.coeffs)
            out[idx] += value
            return QSeries(self.off24, out)
        out = [0] * off + list(self.coeffs)
        out[0] = value
        return QSeries(0, out)

    def __mul__(self, other: "QSeries") -> "QSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            for j in range(n - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return QSeries(self.off24 + other.off24, out)

    def __truediv__(self, other: "QSeries") -> "QSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        if n == 0 or not other.coeffs[0]:
            raise ZeroDivisionError("division by a series with zero leading coefficient")
        b0 = Fraction(other.coeffs[0])
        a, b = self.coeffs, other.coeffs
        out: list = []
        for i in range(n):
            acc = a[i]
            for j in range(1, i + 1):
                bj = b[j]
                if bj:
                    acc = acc - bj * out[i - j]
            out.append(_norm(acc / b0))
        return QSeries(self.off24 - other.off24, out)

    def inverse(self) -> "QSeries":
        one = QSeries(0, [1] + [0] * (len(self.coeffs) - 1))
        return one / self

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            return self.inverse() ** (-e)
        result = QSeries(0, [1] + [0] * (len(self.coeffs) - 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def first_nonzero(self) -> int | None:
        """Index (from the offset) of the first nonzero known coefficient."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None


def first_mismatch(a: QSeries, b: QSeries) -> int | None:
    """First q-exponent (integer series only) where a and b disagree."""
    d = a - b
    i = d.first_nonzero()
    if i is None:
        return None
    if d.off24 % 24:
        raise ValueError("comparison needs integral offsets")
    return d.off24 // 24 + i


def eta_q(mult: int, nterms: int) -> QSeries:
    """Expansion of eta(mult*tau): q^(mult/24) times the pentagonal series."""
    if mult < 1 or nterms < 1:
        raise ValueError("eta_q needs mult >= 1 and nterms >= 1")
    coeffs = [0] * nterms
    coeffs[0] = 1
    k = 1
    while True:
        e1 = mult * k * (3 * k - 1) // 2
        e2 = mult * k * (3 * k + 1) // 2
        if e1 >= nterms and e2 >= nterms:
            break
        sign = -1 if k % 2 else 1
        if e1 < nterms:
            coeffs[e1] += sign
        if e2 < nterms:
            coeffs[e2] += sign
        k += 1
    return QSeries(mult, coeffs)


def one_plus_q_product(step: int, start: int, power: int, nterms: int) -> QSeries:
    """prod_{n>=1} (1 + q^(start + (n-1)*step))^power, truncated.

    Each factor is expanded by the binomial series (exact for any integer
    power, including negative) and folded in; factors with exponent beyond
    the truncation are identically 1.
    """
    out = [0] * nterms
    out[0] = 1
    e = start
    while e < nterms:
        # (1 + q^e)^power = sum_j C(power, j) q^(e*j)
        fac = [0] * nterms
        fac[0] = 1
        coef = Fraction(1)
        j = 1
        while e * j < nterms:
            coef = coef * Fraction(power - j + 1, j)
            fac[e * j] = _norm(coef)
            j += 1
        acc = [0] * nterms
        for i in range(nterms):
            ci = out[i]
            if not ci:
                continue
            for jj in range(0, nterms - i, e):
                fj = fac[jj]
                if fj:
                    acc[i + jj] += ci * fj
        out = acc
        e += step
    return QSeries(0, out)


def e2_q(mult: int, nterms: int) -> QSeries:
    """Weight-2 Eisenstein series 1 - 24 sum sigma(n) q^(mult*n)."""
    if nterms < 1:
        raise ValueError("nterms must be >= 1")
    sigma = [0] * nterms
    top = (nterms - 1) // mult
    for d in range(1, top + 1):
        for n in range(d, top + 1, d):
            sigma[n * mult] += d
    coeffs = [0] * nterms
    coeffs[0] = 1
    for e in range(mult, nterms, mult):
        coeffs[e] = -24 * sigma[e]
    return QSeries(0, coeffs)


def compose(outer: list, inner: QSeries) -> QSeries:
    """sum_n outer[n] * inner^n, for inner = c*q^j + ... with integral j >= 1.

    Powers of inner are accumulated with shrinking truncation windows; the
    result is correct through q^(len(inner)+j-1).
    """
    if inner.off24 % 24 or inner.off24 <= 0:
        raise ValueError("composition needs an inner series q^j + ... with integer j >= 1")
    j = inner.off24 // 24
    nterms = len(inner.coeffs) + j  # exponents 0 .. len+j-1
    out = [0] * nterms
    if outer:
        out[0] = outer[0]
    power = inner  # inner^n, exponents n*j .. n*j + len(coeffs) - 1
    for n in range(1, len(outer)):
        base_exp = power.off24 // 24
        if base_exp >= nterms:
            break
        an = outer[n]
        if an:
            for i, c in enumerate(power.coeffs):
                e = base_exp + i
                if e >= nterms:
                    break
                if c:
                    out[e] += an * c
        keep = nterms - base_exp - j  # coefficients of inner^(n+1) we still need
        if keep <= 0:
            break
        power = power.truncate(keep) * inner.truncate(keep)
    return QSeries(0, out)


# -- Hauptmoduls and generating-function identities -------------------------


def _eta_pows(nterms: int, *mults: int) -> dict[int, QSeries]:
    return {mm: eta_q(mm, nterms) for mm in set(mults)}


def weber_f2_pow24_q(nterms: int) -> QSeries:
    """f2(tau)^24 = 2^12 q prod (1+q^n)^24 as an integral-exponent series."""
    return one_plus_q_product(1, 1, 24, nterms).scale(4096).shift24(24)


def weber_f_2tau_pow24_q(nterms: int) -> QSeries:
    """f(2*tau)^24 = q^-1 prod (1+q^(2n-1))^24."""
    return one_plus_q_product(2, 1, 24, nterms).shift24(-24)


def hauptmodul_q(tag: str, nterms: int) -> QSeries:
    """Canonical eta-quotient construction; all six are q + O(q^2)."""
    if nterms < 2:
        raise ValueError("need at least 2 terms")
    if tag == "t":
        e = _eta_pows(nterms, 1, 2, 4)
        return ((e[1] * e[4]) / (e[2] * e[2])) ** 24
    if tag == "u":
        f24 = weber_f2_pow24_q(nterms)
        return f24 / (f24.add_const(64) ** 2)
    if tag == "s":
        e = _eta_pows(nterms, 1, 4)
        return (e[4] / e[1]) ** 8
    if tag == "w":
        e = _eta_pows(nterms, 1, 2, 4, 8)
        return ((e[1] * e[8]) / (e[2] * e[4])) ** 8
    if tag == "v":
        e = _eta_pows(nterms, 1, 2, 3, 4, 6, 12)
        return ((e[1] * e[3] * e[4] * e[12]) / (e[2] * e[2] * e[6] * e[6])) ** 6
    if tag == "h":
        e = _eta_pows(nterms, 1, 2, 3, 6)
        return ((e[1] * e[6]) / (e[2] * e[3])) ** 12
    raise ValueError(f"unknown hauptmodul tag {tag!r}")


def hauptmodul_alt_q(tag: str, nterms: int) -> QSeries:
    """Independent second construction, where one is stated.

    u:  quotient of eta-squares by the weight-2 Eisenstein combination
        2E2(2t) - E2(t); that combination leads with 1, which is the
        normalization under which the quotient starts q + O(q^2).
    s:  the direct product q prod (1+q^n)^8 (1+q^2n)^8.
    w:  the quotient f2(4tau)^8 / f2(tau)^8 built from (1+q^n) products.
    """
    if tag == "u":
        e = _eta_pows(nterms, 1, 2)
        den = e2_q(2, nterms).scale(2) - e2_q(1, nterms)
        return ((e[1] * e[1] * e[2] * e[2]) / den) ** 4
    if tag == "s":
        prod = one_plus_q_product(1, 1, 8, nterms) * one_plus_q_product(2, 2, 8, nterms)
        return prod.shift24(24)
    if tag == "w":
        num = one_plus_q_product(4, 4, 8, nterms)
        den = one_plus_q_product(1, 1, 8, nterms)
        return (num / den).shift24(24)
    raise ValueError(f"no alternative construction for {tag!r}")


# pairing of hauptmoduls with sequence families; V composes into -s
HAUPTMODUL_SEQUENCE = {
    "t": SequenceId.CB3,
    "u": SequenceId.CB4,
    "s": SequenceId.V,
    "w": SequenceId.T,
    "v": SequenceId.D,
    "h": SequenceId.A,
}


def genfun_rhs_q(tag: str, nterms: int) -> QSeries:
    """Stated weight-2 form equal to the composed generating function."""
    if tag == "t":
        e = _eta_pows(nterms, 1, 2, 4)
        return (e[2] ** 20) / (e[1] ** 8 * e[4] ** 8)
    if tag == "u":
        return e2_q(2, nterms).scale(2) - e2_q(1, nterms)
    if tag == "s":
        e = _eta_pows(nterms, 1, 2)
        return e[1] ** 8 / e[2] ** 4
    if tag == "w":
        e = _eta_pows(nterms, 1, 2, 4, 8)
        return (e[2] ** 6 * e[4] ** 6) / (e[1] ** 4 * e[8] ** 4)
    if tag == "v":
        e = _eta_pows(nterms, 1, 2, 3, 4, 6, 12)
        return (e[2] ** 10 * e[6] ** 10) / (e[1] ** 4 * e[3] ** 4 * e[4] ** 4 * e[12] ** 4)
    if tag == "h":
        e = _eta_pows(nterms, 1, 2, 3, 6)
        return (e[2] ** 7 * e[3] ** 7) / (e[1] ** 5 * e[6] ** 5)
    raise ValueError(f"unknown hauptmodul tag {tag!r}")


def genfun_identity_check(tag: str, nterms: int) -> int | None:
    """Compose the paired sequence into the Hauptmodul and compare.

    Returns None on agreement through q^nterms, else the first mismatching
    exponent.
    """
    if nterms < 10:
        raise ValueError("nterms must be >= 10")
    inner = hauptmodul_q(tag, nterms)
    seq = HAUPTMODUL_SEQUENCE[tag]
    outer = exact_terms(seq, nterms + 1)
    if tag == "s":
        inner = -inner
    lhs = compose(outer, inner).truncate(nterms + 1)
    rhs = genfun_rhs_q(tag, nterms + 1).truncate(nterms + 1)
    return first_mismatch(lhs, rhs)


def j_2tau_q(nterms: int) -> QSeries:
    """j(2*tau) = (F - 16)^3 / F with F = f(2*tau)^24; starts q^-2 + 744 + ..."""
    f24 = weber_f_2tau_pow24_q(nterms)
    return (f24.add_const(-16) ** 3) / f24


def t_j_relation_check(nterms: int) -> int | None:
    """(16 t - 1)^3 + j(2tau) t^2 must vanish identically.

    t comes from the eta quotient, j(2tau) from the Weber product, so the two
    routes genuinely cross-check each other.  Returns the first exponent with
    a nonzero coefficient, or None.
    """
    if nterms < 10:
        raise ValueError("nterms must be >= 10")
    pad = nterms + 4
    t = hauptmodul_q("t", pad)
    j2 = j_2tau_q(pad)
    if j2.coeff_at(-2) != 1 or j2.coeff_at(-1) != 0 or j2.coeff_at(0) != 744:
        raise ArithmeticError("j(2*tau) expansion head is wrong; build is broken")
    rel = (t.scale(16).add_const(-1)) ** 3 + j2 * t * t
    idx = rel.first_nonzero()
    if idx is None:
        return None
    return rel.off24 // 24 + idx


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_diff(a: list) -> list:
    return [i * a[i] for i in range(1, len(a))]


def v_ode_check(nterms: int) -> int | None:
    """Third-order ODE for Y(s) = sum V_n (-s)^n, cleared of denominators:

        s^2 (16s+1)^2 Y''' + 3 s (32s+1)(16s+1) Y''
            + (1792 s^2 + 112 s + 1) Y' + 8 (32s+1) Y = 0

    Verified coefficientwise through s^nterms; returns the first failing
    degree or None.
    """
    if nterms < 10:
        raise ValueError("nterms must be >= 10")
    v = exact_terms(SequenceId.V, nterms + 4)
    y = [(-1) ** n * v[n] for n in range(len(v))]
    y1 = _poly_diff(y)
    y2 = _poly_diff(y1)
    y3 = _poly_diff(y2)
    total = [0] * (nterms + 6)

    def _acc(poly: list, coef: list) -> None:
        for i, c in enumerate(_poly_mul(coef, poly)):
            if i < len(total):
                total[i] += c

    _acc(y3, [0, 0, 1, 32, 256])           # s^2 (16s+1)^2
    _acc(y2, [0, 3, 144, 1536])            # 3 s (32s+1)(16s+1)
    _acc(y1, [1, 112, 1792])
    _acc(y, [8, 256])                      # 8 (32s+1)
    for i in range(nterms + 1):
        if total[i]:
            return i
    return None
