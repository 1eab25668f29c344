"""Catalog of the verified congruences and the prime-sweep harness.

Each catalog row states: a sequence family, the denominator base m (terms are
a_k / m^k), the summation limit (half = (p-1)/2, full = p-1), the modulus
exponent, a predicate selecting the qualifying primes, and one or more
branches.  A branch refines the predicate, optionally names the binary
quadratic form giving x and y, and carries the right-hand-side template plus
a quadratic-character prefactor.

Statuses: "proven" rows form the default verification gate; "conjectural"
and "cited" rows are swept separately (a failure there points at a catalog
encoding bug, not at the underlying mathematics).
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import FactorialTable, Modulus, factorial_table, inv, jacobi, primes_in
from .quadforms import FormSpec, QuadRep, represent, rhs_quadratic
from .report import Report, Row
from .sequences import SequenceId, table_size_for, terms_mod


# -- predicate / template / character types ----------------------------------


@dataclass(frozen=True)
class PrimePredicate:
    """p qualifies iff p falls in every residue-class set and every listed
    Jacobi symbol (u/p) takes its required value."""

    residue_classes: tuple[tuple[tuple[int, ...], int], ...] = ()
    jacobi_conditions: tuple[tuple[int, int], ...] = ()

    def holds(self, p: int) -> bool:
        for allowed, modulus in self.residue_classes:
            if p % modulus not in allowed:
                return False
        for u, want in self.jacobi_conditions:
            if jacobi(u, p) != want:
                return False
        return True


@dataclass(frozen=True)
class CharSpec:
    """Product of Jacobi symbols (u/p) and parity signs (-1)^((p-1)/e)."""

    jacobi_factors: tuple[int, ...] = ()
    parity_factors: tuple[int, ...] = ()

    def value(self, p: int) -> int:
        sign = 1
        for u in self.jacobi_factors:
            sign *= jacobi(u, p)
        for e in self.parity_factors:
            if (p - 1) % e:
                raise ValueError(f"(p-1)/{e} is not integral at p={p}")
            sign *= -1 if ((p - 1) // e) % 2 else 1
        return sign


@dataclass(frozen=True)
class FloorExpr:
    """floor((num*p + off) / den)."""

    num: int
    off: int
    den: int

    def eval(self, p: int) -> int:
        return (self.num * p + self.off) // self.den


@dataclass(frozen=True)
class QF:
    """r1*x^2 + r2*p + r3*p^2/(r4*x^2)."""

    r1: int
    r2: int
    r3: int
    r4: int

    def template(self) -> tuple[int, int, int, int]:
        return (self.r1, self.r2, self.r3, self.r4)


@dataclass(frozen=True)
class InvBinomSq:
    """rho * p^2 * C(top, bottom)^-2 with both arguments below p."""

    rho: Fraction
    top: FloorExpr
    bottom: FloorExpr


@dataclass(frozen=True)
class ZeroRhs:
    pass


@dataclass(frozen=True)
class Branch:
    condition: PrimePredicate
    rep: FormSpec | None
    rhs: QF | InvBinomSq | ZeroRhs
    character: CharSpec = CharSpec()


@dataclass(frozen=True)
class CongruenceSpec:
    id: str
    status: str  # proven | conjectural | cited
    sequence: SequenceId
    m_base: int
    m_cubed: bool
    limit: str  # half | full
    mod_exp: int
    predicate: PrimePredicate
    branches: tuple[Branch, ...]
    source: str

    @property
    def m(self) -> int:
        return self.m_base**3 if self.m_cubed else self.m_base

    def qualifies(self, p: int) -> bool:
        return self.predicate.holds(p)

    def match_branch(self, p: int) -> Branch | None:
        for branch in self.branches:
            if branch.condition.holds(p):
                return branch
        return None


# -- catalog -----------------------------------------------------------------

QF4 = QF(4, -2, -1, 4)     # 4x^2 - 2p - p^2/(4x^2)
QF_M2 = QF(-2, 2, 1, 2)    # -2x^2 + 2p + p^2/(2x^2)
QF_M8 = QF(-8, 2, 1, 8)    # -8x^2 + 2p + p^2/(8x^2)
QF1 = QF(1, -2, -1, 1)     # x^2 - 2p - p^2/x^2
QF8 = QF(8, -2, -1, 8)     # 8x^2 - 2p - p^2/(8x^2)
QF_P2 = QF(4, -2, 0, 1)    # 4x^2 - 2p (mod p^2 rows)

_ALWAYS = PrimePredicate()


def _rc(modulus: int, *allowed: int) -> PrimePredicate:
    return PrimePredicate(residue_classes=(((tuple(sorted(allowed))), modulus),))

def _jc(*conds: tuple[int, int]) -> PrimePredicate:
    return PrimePredicate(jacobi_conditions=tuple(conds))


def _merge(*preds: PrimePredicate) -> PrimePredicate:
    rc: tuple = ()
    jc: tuple = ()
    for pr in preds:
        rc += pr.residue_classes
        jc += pr.jacobi_conditions
    return PrimePredicate(rc, jc)


def _simple(
    spec_id, status, seq, m, limit, pred, form, rhs=QF4, char=CharSpec(), source="",
    m_cubed=False, mod_exp=3,
):
    branch = Branch(_ALWAYS, form, rhs, char)
    return CongruenceSpec(
        spec_id, status, seq, m, m_cubed, limit, mod_exp, pred, (branch,), source
    )


_PARITY2 = CharSpec(parity_factors=(2,))


def _build_catalog() -> list[CongruenceSpec]:
    S = SequenceId
    rows: list[CongruenceSpec] = []
    add = rows.append

    # central binomial cubes, half sums
    p7 = _rc(7, 1, 2, 4)
    x7 = FormSpec(1, 7, 1)
    add(_simple("T1.1", "proven", S.CB3, 1, "half", p7, x7, source="Thm 1.1"))
    add(_simple("T1.1-b", "proven", S.CB3, 4096, "half", p7, x7, char=_PARITY2,
                source="Thm 1.1"))
    p3 = _rc(3, 1)
    x3 = FormSpec(1, 3, 1)
    add(_simple("T1.2", "proven", S.CB3, 16, "half", p3, x3, source="Thm 1.2"))
    add(_simple("T1.2-b", "proven", S.CB3, 256, "half", p3, x3, char=_PARITY2,
                source="Thm 1.2"))
    p4 = _rc(4, 1)
    x4 = FormSpec(1, 4, 1)
    add(_simple("T1.3", "proven", S.CB3, -8, "half", p4, x4, source="Thm 1.3"))
    p8 = _rc(8, 1, 3)
    x2 = FormSpec(1, 2, 1)
    add(_simple("T1.4", "proven", S.CB3, -64, "half", p8, x2, char=_PARITY2,
                source="Thm 1.4"))

    # C(2k,k)^2 C(4k,2k), full sums
    add(_simple("T1.5", "proven", S.CB4, 256, "full", p8, x2, source="Thm 1.5"))
    add(_simple("T1.6", "proven", S.CB4, -144, "full", p3, x3, source="Thm 1.6"))
    add(_simple("T1.7", "proven", S.CB4, 648, "full", p4, x4, source="Thm 1.7"))
    add(_simple("T1.8", "proven", S.CB4, 81, "full", p7, x7, source="Thm 1.8"))
    add(_simple("T1.8-b", "proven", S.CB4, -3969, "full", p7, x7, source="Thm 1.8"))
    add(_simple("T1.9", "proven", S.CB4, 28**4, "full", p8, x2, source="Thm 1.9"))
    add(CongruenceSpec(
        "T1.10", "proven", S.CB4, -12288, False, "full", 3, p4,
        (
            Branch(_rc(12, 1), FormSpec(1, 9, 1), QF4),
            Branch(_rc(12, 5), FormSpec(1, 9, 2), QF_M2),
        ),
        "Thm 1.10",
    ))
    add(CongruenceSpec(
        "T1.10-b", "proven", S.CB4, -6635520, False, "full", 3, p4,
        (
            Branch(_rc(20, 1, 9), FormSpec(1, 25, 1), QF4),
            Branch(_rc(20, 13, 17), FormSpec(1, 25, 2), QF_M2),
        ),
        "Thm 1.10",
    ))
    for suffix, mm, dmm in (("", -1024, 5), ("-b", -82944, 13), ("-c", -(14112**2), 37)):
        add(CongruenceSpec(
            f"T1.11{suffix}", "proven", S.CB4, mm, False, "full", 3, _jc((-dmm, 1)),
            (
                Branch(_jc((-1, 1)), FormSpec(1, dmm, 1), QF4),
                Branch(_jc((-1, -1)), FormSpec(1, dmm, 2), QF_M2),
            ),
            "Thm 1.11",
        ))
    for suffix, mm, dmm, unit in (
        ("", 48**2, 3, 2), ("-b", 12**4, 5, -2), ("-c", 1584**2, 11, 2),
        ("-d", 396**4, 29, -2),
    ):
        add(CongruenceSpec(
            f"T1.12{suffix}", "proven", S.CB4, mm, False, "full", 3, _jc((-2 * dmm, 1)),
            (
                Branch(_jc((unit, 1)), FormSpec(1, 2 * dmm, 1), QF4),
                Branch(_jc((unit, -1)), FormSpec(2, dmm, 1), QF_M8),
            ),
            "Thm 1.12",
        ))

    # C(2k,k) C(3k,k) C(6k,3k), full sums; bases stored uncubed
    def cb6(spec_id, base, pred, form, char_u, rhs=QF4, source=""):
        return CongruenceSpec(
            spec_id, "proven", S.CB6, base, True, "full", 3, pred,
            (Branch(_ALWAYS, form, rhs, CharSpec(jacobi_factors=(char_u,))),),
            source,
        )

    add(cb6("T1.13", 12, p4, x4, -3, source="Thm 1.13"))
    add(cb6("T1.13-b", 66, p4, x4, 33, source="Thm 1.13"))
    add(CongruenceSpec(
        "T1.14", "proven", S.CB6, 54000, False, "full", 3, p3,
        (Branch(_ALWAYS, x3, QF4, CharSpec(jacobi_factors=(5,))),),
        "Thm 1.14",
    ))
    add(cb6("T1.15", 20, p8, x2, -5, source="Thm 1.15"))
    add(cb6("T1.16", -15, p7, x7, -15, source="Thm 1.16"))
    add(cb6("T1.16-b", 255, p7, x7, -255, source="Thm 1.16"))
    add(CongruenceSpec(
        "T1.17", "proven", S.CB6, -12288000, False, "full", 3, p3,
        (Branch(_ALWAYS, FormSpec(1, 27, 4), QF1, CharSpec(jacobi_factors=(10,))),),
        "Thm 1.17",
    ))
    add(cb6("T1.18", -32, _rc(11, 1, 3, 4, 5, 9), FormSpec(1, 11, 4), -2, rhs=QF1,
            source="Thm 1.18"))
    add(cb6("T1.19", -96, _jc((-19, 1)), FormSpec(1, 19, 4), -6, rhs=QF1,
            source="Thm 1.19"))
    add(cb6("T1.20", -960, _jc((-43, 1)), FormSpec(1, 43, 4), -15, rhs=QF1,
            source="Thm 1.20"))
    add(cb6("T1.21", -5280, _jc((-67, 1)), FormSpec(1, 67, 4), -330, rhs=QF1,
            source="Thm 1.21"))
    add(cb6("T1.22", -640320, _jc((-163, 1)), FormSpec(1, 163, 4), -10005, rhs=QF1,
            source="Thm 1.22"))

    # Apery-like families
    add(_simple("T1.23", "proven", S.V, 8, "full", p4, x4, source="Thm 1.23"))
    add(_simple("T1.23-b", "proven", S.V, -16, "full", p4, x4, source="Thm 1.23"))
    add(_simple("T1.24", "proven", S.T, -4, "full", p8, x2, source="Thm 1.24"))
    add(_simple("T1.25", "proven", S.T, 1, "full", p7, x7, source="Thm 1.25"))
    add(_simple("T1.25-b", "proven", S.T, 16, "full", p7, x7, source="Thm 1.25"))
    add(_simple("T1.26", "proven", S.D, 8, "full", _rc(8, 1), x2, source="Thm 1.26"))
    add(_simple("T1.27", "proven", S.D, -2, "full", _rc(12, 1), x3, source="Thm 1.27"))
    add(_simple("T1.27-b", "proven", S.D, -32, "full", _rc(24, 1), x3,
                source="Thm 1.27"))
    add(CongruenceSpec(
        "T1.28", "proven", S.D, -8, False, "full", 3, _rc(24, 1, 5),
        (
            Branch(_rc(24, 1), FormSpec(1, 6, 1), QF4),
            Branch(_rc(24, 5), FormSpec(2, 3, 1), QF8),
        ),
        "Thm 1.28",
    ))
    add(_simple("T1.29", "proven", S.A, -1, "full", p3, x3, source="Thm 1.29"))

    # cited rows: proved elsewhere, swept to validate the encoding
    add(CongruenceSpec(
        "I1.2", "cited", S.CB3, 64, False, "half", 3, _ALWAYS,
        (
            Branch(_rc(4, 1), x4, QF4),
            Branch(_rc(4, 3), None,
                   InvBinomSq(Fraction(-1), FloorExpr(1, -1, 2), FloorExpr(1, -3, 4))),
        ),
        "(1.2)",
    ))
    add(_simple("I1.3", "cited", S.CB3, -512, "half", p4, x4,
                char=CharSpec(parity_factors=(4,)), source="(1.3)"))
    add(CongruenceSpec(
        "R20.1", "cited", S.T, 4, False, "full", 3, _ALWAYS,
        (
            Branch(_rc(4, 1), x4, QF4),
            Branch(_rc(4, 3), None,
                   InvBinomSq(Fraction(-1, 4), FloorExpr(1, -3, 2), FloorExpr(1, -3, 4))),
        ),
        "[20]",
    ))
    add(CongruenceSpec(
        "R20.2", "cited", S.T, 1, False, "full", 2, _rc(7, 1, 2, 3, 4, 5, 6),
        (
            Branch(_rc(7, 1, 2, 4), x7, QF_P2),
            Branch(_rc(7, 3, 5, 6), None, ZeroRhs()),
        ),
        "[20]",
    ))
    add(_simple("R9.2", "cited", S.A, 1, "full", p8, x2, source="(9.4)"))

    # conjectural rows (explicit right-hand sides only)
    third7 = InvBinomSq(Fraction(-11), FloorExpr(3, 0, 7), FloorExpr(1, 0, 7))
    add(CongruenceSpec(
        "I1.1-b", "conjectural", S.CB3, 1, False, "full", 3, _rc(7, 3),
        (Branch(_ALWAYS, None, third7),), "(1.1)",
    ))
    add(CongruenceSpec(
        "I1.1-c", "conjectural", S.CB3, 1, False, "full", 3, _rc(7, 5),
        (Branch(_ALWAYS, None,
                InvBinomSq(Fraction(-11, 16), FloorExpr(3, 0, 7), FloorExpr(1, 0, 7))),),
        "(1.1)",
    ))
    add(CongruenceSpec(
        "I1.1-d", "conjectural", S.CB3, 1, False, "full", 3, _rc(7, 6),
        (Branch(_ALWAYS, None,
                InvBinomSq(Fraction(-11, 4), FloorExpr(3, 0, 7), FloorExpr(1, 0, 7))),),
        "(1.1)",
    ))
    add(CongruenceSpec(
        "I1.4-b", "conjectural", S.CB4, 256, False, "full", 3, _rc(8, 5),
        (Branch(_ALWAYS, None,
                InvBinomSq(Fraction(1, 3), FloorExpr(1, 0, 4), FloorExpr(1, 0, 8))),),
        "(1.4)",
    ))
    add(CongruenceSpec(
        "I1.4-c", "conjectural", S.CB4, 256, False, "full", 3, _rc(8, 7),
        (Branch(_ALWAYS, None,
                InvBinomSq(Fraction(-3, 2), FloorExpr(1, 0, 4), FloorExpr(1, 0, 8))),),
        "(1.4)",
    ))
    add(CongruenceSpec(
        "I1.5-b", "conjectural", S.CB6, 12, True, "full", 3, _rc(4, 3),
        (Branch(_ALWAYS, None,
                InvBinomSq(Fraction(5, 12), FloorExpr(1, -3, 2), FloorExpr(1, -3, 4)),
                CharSpec(jacobi_factors=(-3,))),),
        "(1.5)",
    ))
    p3mod4_not3 = _merge(_rc(4, 3), _rc(3, 1, 2))
    squares_rhs = InvBinomSq(Fraction(3, 4), FloorExpr(1, -3, 2), FloorExpr(1, -3, 4))
    add(CongruenceSpec(
        "C22.29", "conjectural", S.V, 8, False, "full", 3, p3mod4_not3,
        (Branch(_ALWAYS, None, squares_rhs),), "Conj 22.29",
    ))
    add(CongruenceSpec(
        "C22.29-b", "conjectural", S.V, -16, False, "full", 3, p3mod4_not3,
        (Branch(_ALWAYS, None, squares_rhs),), "Conj 22.29",
    ))
    return rows


_CATALOG: list[CongruenceSpec] | None = None


def catalog() -> list[CongruenceSpec]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
        ids = [s.id for s in _CATALOG]
        assert len(ids) == len(set(ids)), "duplicate catalog ids"
    return _CATALOG


def lookup(spec_id: str) -> CongruenceSpec:
    for spec in catalog():
        if spec.id == spec_id:
            return spec
    raise KeyError(f"unknown congruence id {spec_id!r}")


def catalog_ids(statuses: tuple[str, ...] = ("proven",)) -> list[str]:
    return [s.id for s in catalog() if s.status in statuses]


def catalog_forms() -> list[FormSpec]:
    """Every distinct quadratic form used by some branch."""
    seen = {}
    for spec in catalog():
        for branch in spec.branches:
            if branch.rep is not None:
                seen[(branch.rep.a, branch.rep.d, branch.rep.c)] = branch.rep
    return list(seen.values())


# -- per-prime evaluation ------------------------------------------------------


class PrimeContext:
    """Shared per-prime state: factorial table and family term cache."""

    def __init__(self, p: int):
        self.p = p
        self.m3 = Modulus.make(p, 3)
        self._table: FactorialTable | None = None
        self._terms: dict[SequenceId, list[int]] = {}

    @property
    def table(self) -> FactorialTable:
        if self._table is None:
            self._table = factorial_table(table_size_for(self.p), self.m3)
        return self._table

    def terms(self, seq: SequenceId) -> list[int]:
        if seq not in self._terms:
            self._terms[seq] = terms_mod(seq, self.p, self.m3, self.table)
        return self._terms[seq]


def lhs_sum(spec: CongruenceSpec, p: int, ctx: PrimeContext | None = None) -> int:
    """sum_{k<=limit} a_k m^-k mod p^mod_exp."""
    if ctx is None:
        ctx = PrimeContext(p)
    m3 = ctx.m3
    pk = m3.pk
    mm = spec.m % pk
    if mm % p == 0:
        raise ValueError(f"p={p} divides m for {spec.id}")
    terms = ctx.terms(spec.sequence)
    limit = (p - 1) // 2 if spec.limit == "half" else p - 1
    w = inv(mm, m3)
    acc = 0
    wk = 1
    for k in range(limit + 1):
        acc = (acc + terms[k] * wk) % pk
        wk = wk * w % pk
    return acc % p**spec.mod_exp


def rhs_value(
    spec: CongruenceSpec,
    branch: Branch,
    p: int,
    rep: QuadRep | None,
    ctx: PrimeContext | None = None,
) -> int:
    if ctx is None:
        ctx = PrimeContext(p)
    me = Modulus.make(p, spec.mod_exp)
    rhs = branch.rhs
    if isinstance(rhs, ZeroRhs):
        return 0
    sign = branch.character.value(p)
    if isinstance(rhs, QF):
        if rep is None:
            raise ValueError("quadratic template needs a representation")
        val = rhs_quadratic(rep, rhs.template(), me)
    else:
        top = rhs.top.eval(p)
        bottom = rhs.bottom.eval(p)
        if not (0 <= bottom <= top < p):
            raise ValueError(f"binomial arguments out of range at p={p}")
        b = ctx.table.binomial_residue(top, bottom) % me.pk
        rho = rhs.rho.numerator * inv(rhs.rho.denominator, me) % me.pk
        val = rho * p * p % me.pk * pow(inv(b, me), 2, me.pk) % me.pk
    return sign * val % me.pk


def verify(spec: CongruenceSpec, p: int, ctx: PrimeContext | None = None) -> Row:
    """Outcome of one (congruence, prime) check; every failure is data."""
    if spec.m % p == 0:
        return Row(spec.id, p, "skip", "divides-m")
    if not spec.qualifies(p):
        return Row(spec.id, p, "skip", "predicate")
    branch = spec.match_branch(p)
    if branch is None:
        return Row(spec.id, p, "skip", "branch-anomaly")
    rep = None
    if branch.rep is not None:
        rep = represent(p, branch.rep)
        if rep is None:
            return Row(spec.id, p, "skip", "representability-anomaly")
    if ctx is None:
        ctx = PrimeContext(p)
    lhs = lhs_sum(spec, p, ctx)
    rhs = rhs_value(spec, branch, p, rep, ctx)
    outcome = "pass" if lhs == rhs else "fail"
    detail = "" if outcome == "pass" else f"lhs-rhs={(lhs - rhs) % p ** spec.mod_exp}"
    return Row(
        spec.id, p, outcome, detail, lhs, rhs,
        rep.x if rep else None, rep.y if rep else None,
    )


def _sweep_chunk(args) -> list[Row]:
    spec_ids, primes = args
    specs = [lookup(sid) for sid in spec_ids]
    rows = []
    for p in primes:
        ctx = PrimeContext(p)
        for spec in specs:
            rows.append(verify(spec, p, ctx))
    return rows


def sweep(
    spec_ids: list[str],
    lo: int,
    hi: int,
    workers: int = 1,
) -> Report:
    """Verify the named congruences over every odd prime in [lo, hi].

    Work is split by prime; the report is sorted (spec id, then p), so output
    is identical for any worker count.
    """
    if lo > hi:
        raise ValueError("empty prime range")
    for sid in spec_ids:
        lookup(sid)
    primes = [p for p in primes_in(max(lo, 3), hi)]
    report = Report()
    if workers > 1 and len(primes) > 1:
        # interleave primes so chunks carry comparable work
        chunks = [primes[i::workers] for i in range(workers)]
        with multiprocessing.Pool(workers) as pool:
            for rows in pool.map(_sweep_chunk, [(spec_ids, ch) for ch in chunks]):
                report.extend(rows)
    else:
        report.extend(_sweep_chunk((spec_ids, primes)))
    report.sort()
    return report
