"""Exact q-expansion algebra and the generating-function identity checks."""

import random
from fractions import Fraction
from math import comb

import pytest

from supercong.qseries import (
    QSeries,
    compose,
    e2_q,
    eta_q,
    first_mismatch,
    genfun_identity_check,
    genfun_rhs_q,
    hauptmodul_alt_q,
    hauptmodul_q,
    j_2tau_q,
    one_plus_q_product,
    t_j_relation_check,
    v_ode_check,
    weber_f_2tau_pow24_q,
)
from supercong.sequences import SequenceId, exact_terms


def test_eta_pentagonal():
    e = eta_q(1, 16)
    assert e.off24 == 1
    assert e.coeffs == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]
    e2 = eta_q(2, 11)
    assert e2.off24 == 2
    assert e2.coeffs == [1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1]


def test_eta_reciprocal_is_one():
    e = eta_q(1, 40)
    prod = e * e.inverse()
    assert prod.off24 == 0
    assert prod.coeffs[0] == 1 and all(c == 0 for c in prod.coeffs[1:])


def test_eta_pow24_ramanujan():
    e24 = eta_q(1, 6) ** 24
    assert e24.off24 == 24
    assert e24.coeffs[:5] == [1, -24, 252, -1472, 4830]


def test_offsets_add():
    a = QSeries(12, [1, 2])
    b = QSeries(12, [1, 3])
    assert (a * b).off24 == 24
    assert (a * b).coeffs == [1, 5]


def test_add_and_mul_polynomials():
    one_plus = QSeries(0, [1, 1, 0])
    one_minus = QSeries(0, [1, -1, 0])
    assert (one_plus * one_minus).coeffs == [1, 0, -1]
    with pytest.raises(ValueError):
        QSeries(1, [1]) + QSeries(0, [1])


def test_division_and_exactness():
    num = QSeries(0, [1, 0, 0, 0])
    den = QSeries(0, [2, 1, 0, 0])
    q = num / den
    assert q.coeffs == [Fraction(1, 2), Fraction(-1, 4), Fraction(1, 8), Fraction(-1, 16)]
    back = q * den
    assert back.coeffs == [1, 0, 0, 0]
    with pytest.raises(ZeroDivisionError):
        num / QSeries(0, [0, 1])


def test_e2_values():
    e2 = e2_q(1, 4)
    assert e2.coeffs == [1, -24, -72, -96]
    assert e2_q(2, 5).coeffs == [1, 0, -24, 0, -72]
    comb48 = e2_q(2, 5).scale(8) - e2_q(1, 5).scale(4)
    assert comb48.coeffs[0] == 4 and comb48.coeffs[1] == 96


def test_compose_trivial():
    inner = QSeries(24, [1, 0, 0])
    assert compose([1, 1], inner).coeffs == [1, 1, 0, 0]
    assert compose([5], inner).coeffs == [5, 0, 0, 0]
    with pytest.raises(ValueError):
        compose([1], QSeries(0, [1, 1]))
    with pytest.raises(ValueError):
        compose([1], QSeries(12, [1, 1]))


def test_compose_against_naive_expansion():
    rng = random.Random(71)
    for _ in range(10):
        n = 12
        inner = QSeries(24, [rng.randint(-3, 3) for _ in range(n)])
        if inner.coeffs[0] == 0:
            inner = QSeries(24, [1] + inner.coeffs[1:])
        outer = [rng.randint(-4, 4) for _ in range(n)]
        got = compose(outer, inner)
        naive = QSeries(0, [0] * (n + 1))
        power = QSeries(0, [1] + [0] * n)
        for a in outer:
            naive = naive + power.scale(a)
            power = (power * inner.truncate(n + 1 - power.off24 // 24)
                     if power.off24 // 24 < n + 1 else power)
        assert got.coeffs == naive.coeffs[: len(got.coeffs)]


def test_compose_associates_with_substitution():
    # (A o f) o g == A o (f o g) for a polynomial A and series f, g = q + ...
    rng = random.Random(73)
    for _ in range(5):
        n = 10
        f = QSeries(24, [1] + [rng.randint(-2, 2) for _ in range(n - 1)])
        g = QSeries(24, [1] + [rng.randint(-2, 2) for _ in range(n - 1)])
        outer = [rng.randint(-3, 3) for _ in range(n)]
        a_of_f = compose(outer, f)
        lhs = compose(a_of_f.coeffs, g)
        f_of_g = compose([0] + f.coeffs, g)
        assert f_of_g.coeffs[0] == 0
        rhs = compose(outer, QSeries(24, f_of_g.coeffs[1:]))
        keep = min(len(lhs.coeffs), len(rhs.coeffs), n)
        assert lhs.coeffs[:keep] == rhs.coeffs[:keep]


def test_one_plus_q_product():
    # prod (1+q^n) counts partitions into distinct parts
    prod = one_plus_q_product(1, 1, 1, 12)
    assert prod.coeffs == [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12]
    sq = one_plus_q_product(1, 1, 2, 8)
    ref = prod.truncate(8) * prod.truncate(8)
    assert sq.coeffs == ref.coeffs


def test_hauptmoduls_normalized_and_integral():
    for tag in ("t", "u", "s", "w", "v", "h"):
        h = hauptmodul_q(tag, 201)
        assert h.off24 == 24, tag
        assert h.coeffs[0] == 1, tag
        assert all(isinstance(c, int) for c in h.coeffs), tag


def test_hauptmodul_leading_terms():
    assert hauptmodul_q("t", 4).coeffs[:2] == [1, -24]
    assert hauptmodul_q("u", 4).coeffs[:2] == [1, -104]
    assert hauptmodul_q("s", 4).coeffs[:3] == [1, 8, 44]


def test_dual_constructions_agree_to_200():
    for tag in ("u", "s", "w"):
        a = hauptmodul_q(tag, 201)
        b = hauptmodul_alt_q(tag, 201)
        assert first_mismatch(a, b) is None, tag


def test_genfun_identities_to_200():
    for tag in ("t", "u", "s", "w", "v", "h"):
        assert genfun_identity_check(tag, 200) is None, tag


def test_genfun_cb3_matches_quoted_quotient_at_50():
    inner = hauptmodul_q("t", 50)
    outer = [comb(2 * n, n) ** 3 for n in range(51)]
    lhs = compose(outer, inner)
    rhs = genfun_rhs_q("t", 51)
    assert first_mismatch(lhs.truncate(51), rhs.truncate(51)) is None


def test_genfun_negative_control():
    inner = hauptmodul_q("h", 40)
    outer = exact_terms(SequenceId.A, 41)
    outer[7] += 1
    lhs = compose(outer, inner)
    rhs = genfun_rhs_q("h", 41)
    assert first_mismatch(lhs.truncate(41), rhs.truncate(41)) == 7


def test_t_j_relation():
    assert t_j_relation_check(100) is None
    j2 = j_2tau_q(12)
    assert j2.off24 == -48
    assert j2.coeff_at(0) == 744
    assert j2.coeff_at(-2) == 1
    assert j2.coeff_at(-1) == 0
    assert j2.coeff_at(2) == 196884


def test_t_j_relation_stable_under_unit_factor():
    # multiplying the relation by t and dividing again keeps it zero
    t = hauptmodul_q("t", 30)
    j2 = j_2tau_q(30)
    rel = (t.scale(16).add_const(-1)) ** 3 + j2 * t * t
    again = (rel * t) / t
    assert again.first_nonzero() is None


def test_t_j_relation_negative_control():
    f24 = weber_f_2tau_pow24_q(30)
    bad = QSeries(f24.off24, [c + (1 if i == 3 else 0) for i, c in enumerate(f24.coeffs)])
    j_bad = (bad.add_const(-16) ** 3) / bad
    t = hauptmodul_q("t", 30)
    rel = (t.scale(16).add_const(-1)) ** 3 + j_bad * t * t
    assert rel.first_nonzero() is not None


def test_v_ode():
    assert v_ode_check(100) is None


def test_v_ode_low_order_balance():
    # constant coefficient of the cleared form: y1 + 8 y0 = 0 with y1 = -V_1
    v = exact_terms(SequenceId.V, 2)
    assert -v[1] + 8 * v[0] == 0


def test_v_ode_negative_control(monkeypatch):
    import supercong.qseries as qs

    real = exact_terms

    def corrupted(seq, count):
        vals = real(seq, count)
        if seq is SequenceId.V and count > 2:
            vals[2] += 1
        return vals

    monkeypatch.setattr(qs, "exact_terms", corrupted)
    assert qs.v_ode_check(20) is not None
