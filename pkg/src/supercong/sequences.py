"""The seven binomial / Apery-like sequence families.

Exact big-integer generators (used as oracles and by the q-series layer) and
fast mod-p^k generators built on valuation-tracked factorial tables (used by
the prime-sweep harness, where terms up to a_{p-1} are needed for every
qualifying prime).
"""

from __future__ import annotations

from enum import Enum
from math import comb

from .arith import FactorialTable, Modulus, factorial_table


class SequenceId(str, Enum):
    CB3 = "CB3"  # C(2k,k)^3
    CB4 = "CB4"  # C(2k,k)^2 C(4k,2k)
    CB6 = "CB6"  # C(2k,k) C(3k,k) C(6k,3k)
    V = "V"
    T = "T"
    D = "D"
    A = "A"


ALL_SEQUENCES = tuple(SequenceId)


def _v_central_squares(n: int) -> int:
    return sum(comb(2 * k, k) ** 2 * comb(2 * n - 2 * k, n - k) ** 2 for k in range(n + 1))


def _v_binom16(n: int) -> int:
    return sum(
        comb(n, k) * comb(n + k, k) * (-1) ** k * comb(2 * k, k) ** 2 * 16 ** (n - k)
        for k in range(n + 1)
    )


def _v_cube_binom(n: int) -> int:
    return sum(
        comb(2 * k, k) ** 3 * comb(k, n - k) * (-16) ** (n - k)
        for k in range(n + 1)
        if n - k <= k
    )


def _t_main(n: int) -> int:
    return sum(comb(n, k) ** 2 * comb(2 * k, n) ** 2 for k in range(n + 1))


def _t_quadruple(n: int) -> int:
    return sum(
        comb(2 * k, k) ** 2 * comb(4 * k, 2 * k) * comb(n + 2 * k, 4 * k) * 4 ** (n - 2 * k)
        for k in range(n // 2 + 1)
    )


def _d_main(n: int) -> int:
    return sum(
        comb(n, k) ** 2 * comb(2 * k, k) * comb(2 * n - 2 * k, n - k) for k in range(n + 1)
    )


def _a_main(n: int) -> int:
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


_CANONICAL = {
    SequenceId.CB3: lambda n: comb(2 * n, n) ** 3,
    SequenceId.CB4: lambda n: comb(2 * n, n) ** 2 * comb(4 * n, 2 * n),
    SequenceId.CB6: lambda n: comb(2 * n, n) * comb(3 * n, n) * comb(6 * n, 3 * n),
    SequenceId.V: _v_central_squares,
    SequenceId.T: _t_main,
    SequenceId.D: _d_main,
    SequenceId.A: _a_main,
}

# Every defining summation stated for the family; first entry is canonical
# for V/T, redundant expressions serve as cross-checks.
_ALL_FORMULAS = {
    SequenceId.V: (_v_binom16, _v_central_squares, _v_cube_binom),
    SequenceId.T: (_t_main, _t_quadruple),
}


def exact_term(seq: SequenceId, n: int) -> int:
    """a_n by the defining summation, exact big-integer arithmetic."""
    if n < 0:
        raise ValueError("sequence index must be >= 0")
    return _CANONICAL[SequenceId(seq)](n)


def exact_terms(seq: SequenceId, count: int) -> list[int]:
    return [exact_term(seq, n) for n in range(count)]


def alternate_formulas(seq: SequenceId, n: int) -> list[int]:
    """Value of every stated defining formula for the family at index n."""
    seq = SequenceId(seq)
    if seq in _ALL_FORMULAS:
        return [f(n) for f in _ALL_FORMULAS[seq]]
    return [exact_term(seq, n)]


def table_size_for(count: int) -> int:
    """Factorial-table size needed by terms_mod: C(6k,3k) reaches 6(count-1)."""
    return max(6 * count, 1)


def terms_mod(
    seq: SequenceId,
    count: int,
    m: Modulus,
    table: FactorialTable | None = None,
) -> list[int]:
    """a_0..a_{count-1} reduced mod p^k, via valuation-tracked binomials.

    Never touches exact big integers: every binomial is assembled from the
    factorial table as p^v * unit, so terms keep their correct residue even
    when individual factorials are divisible by p.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    seq = SequenceId(seq)
    if table is None:
        table = factorial_table(table_size_for(count), m)
    if len(table) < 6 * (count - 1) + 1 and seq is SequenceId.CB6:
        raise ValueError("factorial table too small for CB6 terms")
    pk = m.pk
    binres = table.binomial_residue

    if seq is SequenceId.CB3:
        return [pow(binres(2 * j, j), 3, pk) for j in range(count)]
    if seq is SequenceId.CB4:
        return [
            binres(2 * j, j) ** 2 % pk * binres(4 * j, 2 * j) % pk for j in range(count)
        ]
    if seq is SequenceId.CB6:
        return [
            binres(2 * j, j) * binres(3 * j, j) % pk * binres(6 * j, 3 * j) % pk
            for j in range(count)
        ]

    # double sums: work from local aliases of the table arrays; every binomial
    # is assembled as p^v * unit so rows with n >= p stay correct
    p, k_exp = m.p, m.k
    vf, uf, iu = table.vals, table.units, table.inv_units
    ppow = [p**e for e in range(k_exp)]
    c2 = [binres(2 * j, j) for j in range(count)]

    if seq is SequenceId.V:
        out = []
        for n in range(count):
            s = 0
            for k in range(n + 1):
                t = c2[k] * c2[n - k] % pk
                s += t * t % pk
            out.append(s % pk)
        return out

    if seq is SequenceId.T:
        out = []
        for n in range(count):
            s = 0
            vn = vf[n]
            iun = iu[n]
            for k in range((n + 1) // 2, n + 1):
                v = vf[n] - vf[k] - vf[n - k] + vf[2 * k] - vn - vf[2 * k - n]
                if v >= k_exp:
                    continue
                t = (
                    uf[n] * iu[k] % pk * iu[n - k] % pk
                    * uf[2 * k] % pk * iun % pk * iu[2 * k - n] % pk
                    * ppow[v] % pk
                )
                s += t * t % pk
            out.append(s % pk)
        return out

    if seq is SequenceId.D:
        out = []
        for n in range(count):
            s = 0
            ufn = uf[n]
            vfn = vf[n]
            for k in range(n + 1):
                v = vfn - vf[k] - vf[n - k]
                if v >= k_exp:
                    continue
                cnk = ufn * iu[k] % pk * iu[n - k] % pk * ppow[v] % pk
                s += cnk * cnk % pk * c2[k] % pk * c2[n - k] % pk
            out.append(s % pk)
        return out

    if seq is SequenceId.A:
        out = []
        for n in range(count):
            s = 0
            ufn = uf[n]
            vfn = vf[n]
            for k in range(n + 1):
                v = vf[n + k] - 2 * vf[k] - vf[n - k]
                if v >= k_exp:
                    continue
                t = (
                    ufn * iu[k] % pk * iu[n - k] % pk
                    * uf[n + k] % pk * iu[n] % pk * iu[k] % pk
                    * ppow[v] % pk
                )
                s += t * t % pk
            out.append(s % pk)
        return out

    raise AssertionError(f"unhandled sequence {seq}")
