import math
from fractions import Fraction

import pytest

from fockmix.errors import TableCoverageError
from fockmix.params import BeamSplitterParam, Device, PhotonConfig, SqueezerParam
from fockmix.probabilities import bs_prob_exact, tms_prob, tms_prob_exact
from fockmix.recurrences import (
    ClassicalTable,
    bs_recurrence_check,
    bs_table_convolution,
    bs_table_direct,
    bs_table_recurrence,
    bs_tilde,
    c_coeff,
    classical_gf,
    classical_prob,
    classical_recurrence_check,
    tms_recurrence_check,
    tms_table_direct,
    tms_table_recurrence,
    tms_tilde,
)


THIRD = BeamSplitterParam.from_value("1/3")


def test_c_coeff_piecewise():
    assert c_coeff(2, 3, 1) == 2
    assert c_coeff(0, 0, 0) == 1
    assert c_coeff(2, 2, 3) == 1 - 3 + 2 + 2
    assert c_coeff(4, 2, 2) == 3  # j >= k branch
    with pytest.raises(ValueError):
        c_coeff(2, 2, 5)
    with pytest.raises(ValueError):
        c_coeff(2, 2, -1)


def test_c_coeff_counts_terms():
    for i in range(11):
        for k in range(11):
            for j in range(i + k + 1):
                count = min(j, k) - max(0, j - i) + 1
                assert c_coeff(i, k, j) == count


def test_bs_tilde_base_cases():
    table = bs_table_direct(4, 4, THIRD, "rational")
    for i in range(4):
        for k in range(4):
            for n in range(i + k + 1):
                assert bs_tilde(i, k, 0, n, table) == table.value(i, k, n)
    assert bs_tilde(2, 2, 5, 1, table) == 0  # j beyond i+k
    assert bs_tilde(-1, 2, 0, 0, table) == 0


def test_bs_tilde_missing_rows_raise():
    table = bs_table_direct(1, 1, THIRD, "rational")
    with pytest.raises(TableCoverageError):
        bs_tilde(3, 3, 2, 1, table)


def test_theorem_identity_exact_small():
    table = bs_table_direct(6, 6, THIRD, "rational")
    for i in range(7):
        for k in range(7):
            for n in range(i + k + 1):
                for j in range(i + k + 1):
                    assert bs_recurrence_check(i, k, n, j, table) == 0
    with pytest.raises(ValueError):
        bs_recurrence_check(2, 2, 1, 5, table)


def test_theorem_identity_hom_entry():
    table = bs_table_direct(2, 2, BeamSplitterParam.from_value("1/2"), "rational")
    assert bs_recurrence_check(1, 1, 1, 1, table) == 0
    assert table.value(1, 1, 1) == 0
    # the two combination values behind that zero, at eta = 1/2: the j=1
    # combination sums two convolutions of 1/2 each, the shifted one is 1
    assert bs_tilde(1, 1, 1, 1, table) == 1
    assert bs_tilde(0, 0, 0, 0, table) == 1


def test_vacuum_row_two_term_reduction():
    # with one empty input the five-term form loses its interference term and
    # collapses to the two-term majorization recurrence
    eta = Fraction(1, 3)
    for i in range(1, 9):
        for n in range(i + 1):
            lhs = bs_prob_exact(PhotonConfig(i, 0, n), eta)
            rhs = eta * bs_prob_exact(PhotonConfig(i - 1, 0, n - 1), eta) if n else 0
            rhs += (1 - eta) * bs_prob_exact(PhotonConfig(i - 1, 0, n), eta) if n <= i - 1 else 0
            assert lhs == rhs


def test_bs_recurrence_table_values():
    t = bs_table_recurrence(1, 1, BeamSplitterParam(0.5))
    assert [float(v) for v in t.row(1, 1)] == [0.5, 0.0, 0.5]
    t0 = bs_table_recurrence(0, 0, BeamSplitterParam(0.9))
    assert list(t0.row(0, 0)) == [1.0]
    p = BeamSplitterParam(0.3)
    t = bs_table_recurrence(6, 6, p)
    for i in range(7):
        for n in range(i + 1):
            want = math.comb(i, n) * 0.3**n * 0.7 ** (i - n)
            assert math.isclose(float(t.value(i, 0, n)), want, rel_tol=1e-12)


def test_bs_recurrence_table_matches_direct():
    p = BeamSplitterParam(0.3)
    rec = bs_table_recurrence(12, 12, p)
    direct = bs_table_direct(12, 12, p)
    for key in rec.entries:
        for a, b in zip(rec.entries[key], direct.entries[key]):
            assert abs(float(a) - float(b)) <= 1e-12


def test_bs_tables_exact_routes_identical():
    eta = BeamSplitterParam.from_value("2/7")
    rec = bs_table_recurrence(8, 8, eta, "rational")
    direct = bs_table_direct(8, 8, eta, "rational")
    conv = bs_table_convolution(8, 8, eta, "rational")
    assert rec.entries == direct.entries == conv.entries


def test_bs_table_normalization_self_check():
    t = bs_table_recurrence(10, 10, BeamSplitterParam(0.77))
    assert t.normalization_max_residual() <= 1e-12


def test_tms_recurrence_table_values():
    t = tms_table_recurrence(2, 2, 12, SqueezerParam(0.5))
    assert abs(float(t.value(1, 1, 1))) <= 1e-15
    lam = 0.5
    for n in range(13):
        assert math.isclose(float(t.value(0, 0, n)), (1 - lam) * lam**n, rel_tol=1e-12)
    t2 = tms_table_recurrence(1, 1, 4, SqueezerParam(0.2))
    assert math.isclose(float(t2.value(1, 1, 1)), 0.288, rel_tol=1e-12)


def test_tms_recurrence_matches_reversal_route():
    sp = SqueezerParam(0.35)
    rec = tms_table_recurrence(7, 7, 14, sp)
    for i in range(8):
        for k in range(8):
            for n in range(15):
                want = tms_prob(PhotonConfig(i, k, n, Device.TMS), sp)
                assert abs(float(rec.value(i, k, n)) - want) <= 1e-12


def test_tms_recurrence_exact_matches_reversal():
    lam = Fraction(2, 5)
    sp = SqueezerParam.from_value(lam)
    rec = tms_table_recurrence(5, 5, 8, sp, "rational")
    for i in range(6):
        for k in range(6):
            for n in range(9):
                want = tms_prob_exact(PhotonConfig(i, k, n, Device.TMS), lam)
                assert rec.value(i, k, n) == want


def test_tms_structural_zeros():
    t = tms_table_recurrence(5, 2, 6, SqueezerParam(0.4))
    for i in range(6):
        for k in range(3):
            for n in range(7):
                if n + k - i < 0:
                    assert float(t.value(i, k, n)) == 0.0


def test_tms_tilde_base_case_and_coverage():
    lam = Fraction(1, 2)
    sp = SqueezerParam.from_value(lam)
    table = tms_table_direct(4, 8, 4, sp, "rational")
    # j=0 keeps only l=0: the plain i-convolution of the two column families
    for i in range(4):
        for k in range(4):
            for n in range(4):
                manual = sum(
                    table.value(m, 0, 0) * table.value(i - m, k, n) for m in range(i + 1)
                )
                assert tms_tilde(i, k, n, 0, table) == manual
    assert tms_tilde(2, 2, 2, 7, table) == 0  # j beyond n+k
    with pytest.raises(TableCoverageError):
        tms_tilde(2, 2, 6, 1, tms_table_direct(2, 2, 2, sp, "rational"))


def test_tms_theorem_identity_exact():
    for lam in (Fraction(0), Fraction(2, 5)):
        sp = SqueezerParam.from_value(lam)
        table = tms_table_direct(4, 8, 4, sp, "rational")
        for i in range(5):
            for k in range(5):
                for n in range(5):
                    for j in range(n + k + 1):
                        assert tms_recurrence_check(i, k, n, j, table) == 0
    with pytest.raises(ValueError):
        tms_recurrence_check(1, 1, 1, 9, table)


def test_tms_suppression_through_theorem():
    sp = SqueezerParam.from_value("1/2")
    table = tms_table_direct(2, 4, 2, sp, "rational")
    tilde_now = tms_tilde(1, 1, 1, 1, table)
    tilde_prev = tms_tilde(0, 0, 0, 0, table)
    assert tilde_now - tilde_prev == 0  # (1-lam) A(1,1->1) vanishes at lam=1/2


def test_classical_model_rows():
    p = BeamSplitterParam(0.5)
    assert math.isclose(classical_prob(1, 1, 1, p), 0.5, rel_tol=1e-14)
    assert classical_prob(0, 0, 0, p) == 1.0
    q = BeamSplitterParam(0.3)
    for n in range(6):
        want = math.comb(5, n) * 0.3**n * 0.7 ** (5 - n)
        assert math.isclose(classical_prob(5, 0, n, q), want, rel_tol=1e-13)
    table = ClassicalTable(q)
    for i in range(7):
        for k in range(7):
            assert abs(math.fsum(table.row(i, k)) - 1.0) <= 1e-12


def test_classical_recurrence_j1_and_general():
    p = BeamSplitterParam(0.5)
    assert classical_recurrence_check(1, 1, 1, 1, p) <= 1e-15
    q = BeamSplitterParam(0.7)
    assert classical_recurrence_check(3, 2, 2, 4, q) <= 1e-12
    assert c_coeff(3, 2, 4) == 2
    for i in range(7):
        for k in range(7):
            for j in range(i + k + 1):
                for n in range(i + k + 1):
                    assert classical_recurrence_check(i, k, n, j, q) <= 1e-12


def test_classical_quantum_gap_exact():
    half = BeamSplitterParam.from_value("1/2")
    table = ClassicalTable(half, "rational")
    classical = table.prob(1, 1, 1)
    quantum = bs_prob_exact(PhotonConfig(1, 1, 1), Fraction(1, 2))
    assert classical == Fraction(1, 2)
    assert classical - quantum == Fraction(1, 2)


def test_classical_gf_factorizes_and_sums_rows():
    p = BeamSplitterParam(0.4)
    from fockmix.genfun import GenFunPoint, eval_f_bs

    x, y, z = 0.3, 0.25, 0.2
    want = eval_f_bs(GenFunPoint(x, 0.0, z, 1.0), p) * eval_f_bs(GenFunPoint(0.0, y, z, 1.0), p)
    assert math.isclose(classical_gf(x, y, z, p), want, rel_tol=1e-13)
    table = ClassicalTable(p)
    series = math.fsum(
        table.prob(i, k, n) * x**i * y**k * z**n
        for i in range(30)
        for k in range(30 - i)
        for n in range(i + k + 1)
    )
    assert abs(series - classical_gf(x, y, z, p)) <= 1e-10
