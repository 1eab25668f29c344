"""Catalog encoding checks and the sweep harness, cross-validated against an
independent big-integer oracle."""

import math
import random

import pytest

from supercong.arith import jacobi, primes_in
from supercong.congruence import (
    QF,
    Branch,
    CharSpec,
    CongruenceSpec,
    PrimeContext,
    PrimePredicate,
    catalog,
    lhs_sum,
    lookup,
    rhs_value,
    sweep,
    verify,
)
from supercong.quadforms import QuadRep, represent
from supercong.report import Report
from supercong.sequences import SequenceId, exact_terms


def oracle_lhs_fraction(spec, p):
    """Independent route: exact big-integer terms, one modular inversion."""
    pk = p**spec.mod_exp
    limit = (p - 1) // 2 if spec.limit == "half" else p - 1
    terms = exact_terms(spec.sequence, limit + 1)
    m = spec.m
    num = sum(a * m ** (limit - k) for k, a in enumerate(terms))
    return num % pk * pow(pow(m, limit, pk), -1, pk) % pk


def test_catalog_shape():
    rows = catalog()
    assert len(rows) >= 40
    assert {r.status for r in rows} == {"proven", "conjectural", "cited"}
    proven = [r for r in rows if r.status == "proven"]
    assert len(proven) >= 40
    # every theorem appears
    for i in range(1, 30):
        assert any(r.id.startswith(f"T1.{i}") for r in rows), f"T1.{i} missing"


def test_lookup_examples():
    t15 = lookup("T1.5")
    assert t15.sequence is SequenceId.CB4
    assert t15.m == 256
    assert t15.limit == "full"
    assert t15.predicate.holds(3) and t15.predicate.holds(11)
    assert not t15.predicate.holds(5) and not t15.predicate.holds(7)
    branch = t15.match_branch(3)
    assert branch.rep.a == 1 and branch.rep.d == 2 and branch.rep.c == 1
    assert branch.rhs == QF(4, -2, -1, 4)
    assert branch.character.value(11) == 1

    t122 = lookup("T1.22")
    assert t122.sequence is SequenceId.CB6
    assert t122.m == -(640320**3)
    assert t122.m_cubed and t122.m_base == -640320
    assert t122.predicate.jacobi_conditions == ((-163, 1),)
    b = t122.branches[0]
    assert (b.rep.a, b.rep.d, b.rep.c) == (1, 163, 4)
    assert b.rhs == QF(1, -2, -1, 1)
    assert b.character.jacobi_factors == (-10005,)

    t129 = lookup("T1.29")
    assert t129.sequence is SequenceId.A
    assert t129.m == -1
    assert (t129.branches[0].rep.a, t129.branches[0].rep.d, t129.branches[0].rep.c) == (1, 3, 1)
    assert t129.branches[0].rhs == QF(4, -2, -1, 4)

    with pytest.raises(KeyError):
        lookup("T9.99")


def test_char_spec():
    assert CharSpec(jacobi_factors=(-3,)).value(13) == jacobi(-3, 13) == 1
    assert CharSpec(parity_factors=(2,)).value(3) == -1
    assert CharSpec(parity_factors=(2,)).value(5) == 1
    assert CharSpec(parity_factors=(4,)).value(13) == -1
    with pytest.raises(ValueError):
        CharSpec(parity_factors=(4,)).value(7)


def test_branch_exclusivity_below_2000():
    for spec in catalog():
        for p in primes_in(3, 2000):
            if spec.m % p == 0 or not spec.qualifies(p):
                continue
            matches = [b for b in spec.branches if b.condition.holds(p)]
            assert len(matches) == 1, (spec.id, p)


def test_representability_consistency_below_2000():
    """For qualifying primes the matched branch's form represents, and a
    two-branch row's other form does not (representations are exclusive)."""
    for spec in catalog():
        multi = len(spec.branches) > 1
        for p in primes_in(3, 2000):
            if spec.m % p == 0 or not spec.qualifies(p):
                continue
            branch = spec.match_branch(p)
            if branch.rep is None:
                continue
            assert represent(p, branch.rep) is not None, (spec.id, p)
            if multi:
                for other in spec.branches:
                    if other is not branch and other.rep is not None:
                        if other.rep != branch.rep:
                            assert represent(p, other.rep) is None, (spec.id, p)


def test_verify_examples():
    assert verify(lookup("T1.5"), 3).outcome == "pass"
    # tiny-prime edge: p=3 half sum has limit 1, so the a_1 term participates
    row = verify(lookup("T1.4"), 3)
    assert row.outcome == "pass" and row.lhs == 11  # 1 + 8*inv(-64) mod 27
    row = verify(lookup("T1.5"), 5)
    assert row.outcome == "skip" and row.detail == "predicate"
    row = verify(lookup("T1.8"), 3)
    assert row.outcome == "skip" and row.detail == "divides-m"


def test_lhs_sum_against_oracle():
    rng = random.Random(131)
    specs = list(catalog())
    checked = 0
    while checked < 40:
        spec = rng.choice(specs)
        p = rng.choice(primes_in(5, 80))
        if spec.m % p == 0:
            continue
        assert lhs_sum(spec, p) == oracle_lhs_fraction(spec, p), (spec.id, p)
        checked += 1


def test_lhs_sum_frozen_examples():
    # big-integer oracle values, frozen: sum C(2k,k)^3, k <= 14, mod 29^3
    spec = lookup("T1.1")
    assert lhs_sum(spec, 29) == 5833
    row = verify(spec, 29)
    assert row.outcome == "pass" and row.lhs == row.rhs == 5833
    # alternating Apery sum at p=7: 1 - 5 + 73 - 1445 + 33001 - 819005 + 21460825
    spec = lookup("T1.29")
    assert lhs_sum(spec, 7) == 149
    row = verify(spec, 7)
    assert row.outcome == "pass" and row.rhs == 149 and (row.x, row.y) == (2, 1)


def test_rhs_invbinomsq_example():
    # p=3 on the p=3 mod 7 branch: -11 * 9 * C(1,0)^-2 = -99 = 9 mod 27
    spec = lookup("I1.1-b")
    branch = spec.match_branch(3)
    assert rhs_value(spec, branch, 3, None) == -99 % 27 == 9


def test_rhs_depends_only_on_x_squared():
    spec = lookup("T1.5")
    branch = spec.match_branch(3)
    rep = represent(3, branch.rep)
    base = rhs_value(spec, branch, 3, rep)
    for flipped in (
        QuadRep(-rep.x, rep.y, rep.form, rep.p),
        QuadRep(rep.x, -rep.y, rep.form, rep.p),
        QuadRep(-rep.x, -rep.y, rep.form, rep.p),
    ):
        assert rhs_value(spec, branch, 3, flipped) == base


def test_theorem_1_1_pair_identity():
    """The two half sums agree up to the parity character, mod p^3."""
    a = lookup("T1.1")
    b = lookup("T1.1-b")
    for p in primes_in(5, 500):
        if not a.qualifies(p):
            continue
        ctx = PrimeContext(p)
        lhs_plain = lhs_sum(a, p, ctx)
        lhs_scaled = lhs_sum(b, p, ctx)
        sign = -1 if ((p - 1) // 2) % 2 else 1
        assert lhs_plain % p**3 == sign * lhs_scaled % p**3, p


def test_half_vs_full_cb3():
    """Upper-range terms of C(2k,k)^3/m^k vanish mod p^3."""
    for spec_id in ("T1.1", "T1.2", "T1.3", "T1.4"):
        spec = lookup(spec_id)
        for p in primes_in(5, 500):
            if spec.m % p == 0 or not spec.qualifies(p):
                continue
            ctx = PrimeContext(p)
            half = lhs_sum(spec, p, ctx)
            full_spec = CongruenceSpec(
                spec.id, spec.status, spec.sequence, spec.m_base, spec.m_cubed,
                "full", spec.mod_exp, spec.predicate, spec.branches, spec.source,
            )
            assert lhs_sum(full_spec, p, ctx) == half, (spec_id, p)


def test_sweep_skip_row():
    rep = sweep(["T1.1"], 5, 5)
    assert len(rep.rows) == 1
    assert rep.rows[0].outcome == "skip" and rep.rows[0].detail == "predicate"


def test_sweep_unknown_id():
    with pytest.raises(KeyError):
        sweep(["nope"], 5, 50)


def test_sweep_deterministic_across_workers():
    ids = ["T1.5", "T1.10", "T1.29", "R20.2"]
    seq = sweep(ids, 5, 120, workers=1)
    par = sweep(ids, 5, 120, workers=2)
    assert seq.rows == par.rows
    assert seq.summary()["fail"] == 0


def test_verify_detects_corruption():
    spec = lookup("T1.29")
    bad_branch = Branch(
        spec.branches[0].condition, spec.branches[0].rep,
        QF(4, -1, -1, 4), spec.branches[0].character,
    )
    bad = CongruenceSpec(
        "T1.29-corrupt", spec.status, spec.sequence, spec.m_base, spec.m_cubed,
        spec.limit, spec.mod_exp, spec.predicate, (bad_branch,), spec.source,
    )
    p = 7
    assert spec.qualifies(p)
    assert verify(spec, p).outcome == "pass"
    assert verify(bad, p).outcome == "fail"


def test_report_anomaly_accounting():
    report = Report()
    report.extend(sweep(["T1.11"], 5, 60).rows)
    assert not report.anomalies()
    # an absent representation on a qualifying prime is flagged as an anomaly
    from supercong.quadforms import FormSpec

    impossible = Branch(PrimePredicate(), FormSpec(1, 7, 3), QF(4, -2, -1, 4))
    fake = CongruenceSpec(
        "fake", "proven", SequenceId.CB3, 1, False, "half", 3,
        PrimePredicate(residue_classes=(((1, 2, 4), 7),)), (impossible,), "",
    )
    row = verify(fake, 11)
    assert row.outcome == "skip" and row.detail == "representability-anomaly"
    report2 = Report()
    report2.add(row)
    assert report2.anomalies() == [row]
