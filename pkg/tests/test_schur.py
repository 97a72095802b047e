import math
import random
from fractions import Fraction

import pytest

from schurzeta.mzv import ConvergenceError, TruncationConfig, eval_ez_truncated
from schurzeta.partitions import Partition, SkewShape, enumerate_ssyt
from schurzeta.schur import (
    VariableTableau,
    antihook_tableau,
    check_W_lambda,
    eval_schur,
    eval_schur_truncated,
    eval_skew_antihook_rhs,
)


def brute_force_schur(vt: VariableTableau, M: int) -> Fraction:
    """Oracle: enumerate fillings and weight them cell by cell."""
    total = Fraction(0)
    for t in enumerate_ssyt(vt.shape, M):
        term = Fraction(1)
        for cell, m in t.entries.items():
            term *= Fraction(1, m ** vt.value(*cell))
        total += term
    return total


def test_variable_tableau_construction():
    vt = VariableTableau.from_content(Partition((2, 1)), {0: 1, 1: 2, -1: 2})
    assert vt.value(1, 1) == 1 and vt.value(1, 2) == 2 and vt.value(2, 1) == 2
    with pytest.raises(KeyError):
        VariableTableau.from_content(Partition((2, 1)), {0: 1, 1: 2})
    with pytest.raises(ValueError):
        VariableTableau.from_cells(Partition((2,)), {(1, 1): 2})


def test_variable_tableau_json():
    vt = VariableTableau.from_content(Partition((2, 1)), {0: 3, 1: 2, -1: 2})
    assert VariableTableau.from_json(vt.to_json()) == vt
    content_form = {"shape": {"outer": [2, 1], "inner": []}, "content": {"0": 3, "1": 2, "-1": 2}}
    assert VariableTableau.from_json(content_form) == vt
    bare_shape = {"shape": [2, 1], "content": {"0": 3, "1": 2, "-1": 2}}
    assert VariableTableau.from_json(bare_shape) == vt


def test_check_W_lambda_examples():
    # corner (2,2) has content 0; z_0 = 1 fails the strict condition there
    vt = VariableTableau.from_content(Partition((2, 2)), {0: 1, 1: 1, -1: 1})
    assert not check_W_lambda(vt)
    assert check_W_lambda(VariableTableau.from_content(Partition((1,)), {0: 2}))
    assert check_W_lambda(
        VariableTableau.from_content(Partition((2, 1)), {0: 1, 1: 2, -1: 2})
    )
    assert check_W_lambda(
        VariableTableau.from_content(Partition((2, 2)), {0: 2, 1: 1, -1: 1})
    )


def test_truncated_examples():
    assert eval_schur_truncated(
        VariableTableau.from_content(Partition((1,)), {0: 2}), 2
    ) == Fraction(5, 4)
    assert eval_schur_truncated(
        VariableTableau.from_content(Partition((1, 1)), {0: 2, -1: 2}), 3
    ) == Fraction(7, 18)
    assert eval_schur_truncated(
        VariableTableau.from_content(Partition((2,)), {0: 2, 1: 2}), 2
    ) == Fraction(21, 16)


def test_empty_shape_is_one():
    vt = VariableTableau.from_content(Partition(()), {})
    assert eval_schur_truncated(vt, 5) == 1


def test_row_column_degeneration():
    z = {0: 2, 1: 1, 2: 2, -1: 1, -2: 3}
    for n in (1, 2, 3):
        row = VariableTableau.from_content(Partition((n,)), z)
        col = VariableTableau.from_content(Partition((1,) * n), z)
        row_args = [z[j] for j in range(n)]
        col_args = [z[-j] for j in range(n)]
        for M in (1, 2, 3, 5, 9):
            assert eval_schur_truncated(row, M) == eval_ez_truncated(row_args, M, star=True)
            assert eval_schur_truncated(col, M) == eval_ez_truncated(col_args, M)


def test_recurrence_matches_enumeration_randomized():
    rng = random.Random(20240)
    shapes = [
        ((2, 1), ()),
        ((2, 2), ()),
        ((3, 2, 1), ()),
        ((3, 3), (1,)),
        ((2, 2, 2), (1, 1)),
        ((4, 2), (2,)),
        ((3, 3, 3), (2, 2)),
    ]
    for outer, inner in shapes:
        shape = SkewShape(Partition(outer), Partition(inner))
        vals = {c: rng.choice([1, 2, 3]) for c in shape.cells()}
        vt = VariableTableau.from_cells(shape, vals)
        for M in (1, 3, 6):
            exact = eval_schur_truncated(vt, M, exact=True)
            floating = eval_schur_truncated(vt, M, exact=False)
            assert floating == pytest.approx(float(exact), rel=1e-12, abs=1e-300)


def test_recurrence_handles_complex():
    s = 2 + 0.5j
    vt = VariableTableau.from_cells(Partition((2,)), {(1, 1): s, (1, 2): 2})
    M = 15
    direct = sum(
        m1 ** (-s) * float(m2) ** (-2.0)
        for m1 in range(1, M + 1)
        for m2 in range(m1, M + 1)
    )
    assert eval_schur_truncated(vt, M) == pytest.approx(direct, rel=1e-12)


def test_hook_identities_exact_small():
    # hook1 / hook2 right-hand sides assembled directly from the formula
    z = {0: 2, 1: 1, 2: 2, -1: 1, -2: 2}
    for p, q in [(0, 0), (1, 1), (2, 1), (1, 2)]:
        vt = VariableTableau.from_content(Partition.hook(p, q), z)
        for M in (2, 5):
            lhs = eval_schur_truncated(vt, M)
            rhs1 = Fraction(0)
            for j in range(q + 1):
                star = eval_ez_truncated([z[t] for t in range(-j, p + 1)], M, star=True)
                rest = eval_ez_truncated([z[-t] for t in range(j + 1, q + 1)], M)
                rhs1 += (-1) ** j * star * rest
            rhs2 = Fraction(0)
            for j in range(p + 1):
                strict = eval_ez_truncated([z[t] for t in range(j, -q - 1, -1)], M)
                rest = eval_ez_truncated([z[t] for t in range(j + 1, p + 1)], M, star=True)
                rhs2 += (-1) ** j * strict * rest
            assert lhs == rhs1
            assert lhs == rhs2


def test_eval_schur_golden_values():
    # these tails decay like 1/M, the boundary case of the doubling estimate,
    # hence the small slack on the heuristic interval
    cfg = TruncationConfig(M=4000)
    cases = [
        (Partition((1,)), {0: 2}, math.pi**2 / 6),
        (Partition((1, 1)), {0: 2, -1: 2}, math.pi**4 / 120),
        (Partition((2,)), {0: 2, 1: 2}, 7 * math.pi**4 / 360),
    ]
    for lam, z, target in cases:
        res = eval_schur(VariableTableau.from_content(lam, z), cfg)
        assert res.heuristic
        assert abs(res.value - target) <= 1.05 * res.tail_bound


def test_eval_schur_exact_mode():
    vt = VariableTableau.from_content(Partition((2,)), {0: 2, 1: 2})
    res = eval_schur(vt, TruncationConfig(M=2, mode="exact"))
    assert res.value == Fraction(21, 16) and res.tail_bound is None


def test_eval_schur_convergence_error():
    vt = VariableTableau.from_content(Partition((1,)), {0: 1})
    with pytest.raises(ConvergenceError):
        eval_schur(vt, TruncationConfig(M=10))


def test_eval_schur_skew_note():
    vt = antihook_tableau([2, 2], [2])
    res = eval_schur(vt, TruncationConfig(M=50))
    assert "heuristic" in res.note


# --- reversed-hook (antihook) identity ---


def test_antihook_layout():
    vt = antihook_tableau([10, 20, 30], [40, 50])
    # bottom row (s00, s10, s20), right column (s21, s22) bottom to top
    assert vt.shape.outer == Partition((3, 3, 3))
    assert vt.shape.inner == Partition((2, 2))
    assert vt.value(3, 1) == 10 and vt.value(3, 2) == 20 and vt.value(3, 3) == 30
    assert vt.value(2, 3) == 40 and vt.value(1, 3) == 50


def test_antihook_rhs_expansion_k1_l1():
    # RHS = -zeta(s11, s10, s00) + zeta*(s00) zeta(s11, s10)
    s00, s10, s11 = 2, 3, 4
    cfg = TruncationConfig(M=7, mode="exact")
    res = eval_skew_antihook_rhs([s00, s10], [s11], cfg)
    expected = -eval_ez_truncated([s11, s10, s00], 7) + eval_ez_truncated(
        [s00], 7, star=True
    ) * eval_ez_truncated([s11, s10], 7)
    assert res.value == expected


def test_antihook_exact_matches_brute_force():
    rng = random.Random(9)
    for k in (1, 2):
        for l in (1, 2):
            bottom = [rng.choice([1, 2, 3]) for _ in range(k + 1)]
            column = [rng.choice([1, 2, 3]) for _ in range(l)]
            vt = antihook_tableau(bottom, column)
            for M in (2, 5, 8):
                lhs = brute_force_schur(vt, M)
                rhs = eval_skew_antihook_rhs(bottom, column, TruncationConfig(M=M, mode="exact"))
                assert lhs == rhs.value


def test_antihook_truncation_one_is_zero():
    # a column of two cells cannot be filled with entries <= 1
    vt = antihook_tableau([2, 2], [2])
    assert eval_schur_truncated(vt, 1) == 0
    rhs = eval_skew_antihook_rhs([2, 2], [2], TruncationConfig(M=1, mode="exact"))
    assert rhs.value == 0


def test_antihook_float_with_bounds():
    cfg = TruncationConfig(M=400)
    res = eval_skew_antihook_rhs([2, 2], [3], cfg)
    exact = eval_skew_antihook_rhs([2, 2], [3], TruncationConfig(M=400, mode="exact"))
    assert res.value == pytest.approx(float(exact.value), rel=1e-12)
    assert res.tail_bound > 0


def test_antihook_convergence_error_names_factor():
    with pytest.raises(ConvergenceError, match="zeta"):
        eval_skew_antihook_rhs([1, 1], [1], TruncationConfig(M=10))


def test_antihook_input_validation():
    with pytest.raises(ValueError):
        eval_skew_antihook_rhs([2], [2], TruncationConfig(M=5))
    with pytest.raises(ValueError):
        antihook_tableau([2, 2], [])
