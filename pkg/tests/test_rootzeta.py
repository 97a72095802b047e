import math
from fractions import Fraction
from itertools import product

import pytest

from schurzeta.mzv import ConvergenceError, eval_ez_truncated
from schurzeta.partitions import Partition
from schurzeta.rootzeta import (
    RootZetaArgs,
    canonical_pairs,
    check_root_domain,
    eval_zeta_A,
    eval_zeta_H,
    eval_zeta_bullet,
    eval_zeta_bullet_H,
    hook_series_truncated,
    shifted_chain_table,
)
from schurzeta.schur import VariableTableau, eval_schur_truncated


def brute_force_root(args, M, d=0, x=None):
    """Direct product over the box, the oracle for the DFS evaluator."""
    r = args.r
    total = Fraction(0)
    ranges = [range(0 if k <= d else 1, M + 1) for k in range(1, r + 1)]
    for ms in product(*ranges):
        term = Fraction(1)
        for i in range(1, r + 2):
            for j in range(i + 1, r + 2):
                s = args.value(i, j)
                if s == 0:
                    continue
                base = sum(ms[i - 1 : j - 1]) + (x or 0)
                if base == 0:
                    continue  # prime rule
                term *= Fraction(1, Fraction(base) ** s)
        total += term
    return total


def test_canonical_pairs():
    assert canonical_pairs(1) == [(1, 2)]
    assert canonical_pairs(3) == [(1, 2), (2, 3), (3, 4), (1, 3), (2, 4), (1, 4)]


def test_args_validation():
    with pytest.raises(ValueError):
        RootZetaArgs.full(2, [2, 2])  # rank 2 needs 3 variables
    with pytest.raises(ValueError):
        RootZetaArgs(1, {(2, 3): 2})
    args = RootZetaArgs.first_row([2, 3])
    assert args.r == 2 and args.value(1, 2) == 2 and args.value(1, 3) == 3
    assert args.value(2, 3) == 0


def test_check_root_domain():
    assert check_root_domain(RootZetaArgs.first_row([2, 2]))
    assert not check_root_domain(RootZetaArgs.first_row([2, 1]))  # position 2 covered by 1
    assert not check_root_domain(RootZetaArgs(1, {(1, 2): -1}))


def test_rank_one_is_riemann():
    args = RootZetaArgs.full(1, [2])
    res = eval_zeta_A(args, 4000)
    assert res.heuristic and res.tail_bound is not None
    # the doubling estimate is a heuristic; a pure 1/M tail sits exactly at
    # its boundary, hence the few-percent slack
    assert abs(float(res.value) - math.pi**2 / 6) <= 1.05 * res.tail_bound
    assert res.value == eval_ez_truncated([2], 4000)


def test_rank_two_against_brute_force():
    args = RootZetaArgs.full(2, [2, 2, 2])
    for M in (1, 2, 4):
        assert eval_zeta_A(args, M).value == brute_force_root(args, M)


def test_rank_two_doubling_consistency():
    args = RootZetaArgs.full(2, [2, 2, 2])
    v1 = eval_zeta_A(args, 30)
    v2 = eval_zeta_A(args, 60)
    assert abs(float(v2.value) - float(v1.value)) <= v1.tail_bound


def test_first_row_reduces_to_mzv():
    # substituting n = m1 + m2 turns the sum over m1^-2 (m1+m2)^-2 into the
    # strict double zeta; the box truncation agrees with the direct box sum
    # exactly and tends to zeta(2,2) as M grows
    args = RootZetaArgs.first_row([2, 2])
    for M in (2, 3, 5):
        value = eval_zeta_A(args, M).value
        direct = sum(
            Fraction(1, m1**2 * (m1 + m2) ** 2)
            for m1 in range(1, M + 1)
            for m2 in range(1, M + 1)
        )
        assert value == direct
    limit = math.pi**4 / 120
    assert abs(float(eval_zeta_A(args, 60).value) - limit) < 0.05


def test_bullet_prime_rule():
    # the prime omits vanishing-base factors from the product, so the m=0
    # summand of the rank-1 series is an empty product contributing 1
    args = RootZetaArgs.full(1, [2])
    res = eval_zeta_bullet(args, d=1, M=50)
    assert res.value == 1 + eval_ez_truncated([2], 50)


def test_bullet_d_zero_collapse():
    args = RootZetaArgs.full(2, [2, 2, 2])
    assert eval_zeta_bullet(args, 0, 6).value == eval_zeta_A(args, 6).value


def test_bullet_d_range():
    args = RootZetaArgs.full(1, [2])
    with pytest.raises(ValueError):
        eval_zeta_bullet(args, 2, 5)
    with pytest.raises(ValueError):
        eval_zeta_bullet(args, -1, 5)


def test_bullet_first_row_example():
    args = RootZetaArgs.first_row([2, 3])
    assert eval_zeta_bullet(args, d=1, M=2).value == brute_force_root(args, 2, d=1)


def test_H_shift():
    args = RootZetaArgs.full(1, [2])
    res = eval_zeta_H(args, 1, 50)
    assert res.value == eval_ez_truncated([2], 51) - 1
    half = eval_zeta_H(args, Fraction(1, 2), 20)
    direct = sum(Fraction(1, (Fraction(1, 2) + m) ** 2) for m in range(1, 21))
    assert half.value == direct
    with pytest.raises(ValueError):
        eval_zeta_H(args, 0, 5)
    with pytest.raises(ValueError):
        eval_zeta_H(args, -1.0, 5)


def test_H_single_term():
    args = RootZetaArgs.first_row([2, 3])
    res = eval_zeta_H(args, 2, 1)
    assert res.value == Fraction(1, 3**2 * 4**3)


def test_bullet_H():
    args = RootZetaArgs.full(1, [2])
    res = eval_zeta_bullet_H(args, d=1, x=1, M=50)
    assert res.value == eval_ez_truncated([2], 51)  # index shift onto 1..M+1
    assert eval_zeta_bullet_H(args, 0, 1, 20).value == eval_zeta_H(args, 1, 20).value
    args2 = RootZetaArgs.first_row([2, 2])
    assert eval_zeta_bullet_H(args2, 2, 1, 2).value == brute_force_root(args2, 2, d=2, x=1)


def test_first_row_agrees_with_full_zeros():
    fr = RootZetaArgs.first_row([2, 3])
    full = RootZetaArgs.full(2, [2, 0, 3])  # canonical order: (1,2), (2,3), (1,3)
    for M in (2, 4):
        assert eval_zeta_A(fr, M).value == eval_zeta_A(full, M).value
        assert eval_zeta_bullet(fr, 1, M).value == eval_zeta_bullet(full, 1, M).value
        assert eval_zeta_H(fr, 1, M).value == eval_zeta_H(full, 1, M).value


def test_convergence_heuristic_enforced():
    with pytest.raises(ConvergenceError):
        eval_zeta_A(RootZetaArgs.first_row([2, 1]), 5)


# --- coupled-truncation chains and the hook rewrite ---


def test_chain_tables_against_brute_force():
    M = 9
    weak = shifted_chain_table([2, 3], M, weak=True)
    strict = shifted_chain_table([2, 3], M, weak=False)
    for x in range(0, M + 1):
        lo = max(x, 1)
        w = sum(
            Fraction(1, n1**2 * n2**3)
            for n1 in range(lo, M + 1)
            for n2 in range(n1, M + 1)
        )
        s = sum(
            Fraction(1, n1**2 * n2**3)
            for n1 in range(x + 1, M + 1)
            for n2 in range(n1 + 1, M + 1)
        )
        assert weak[x] == w
        assert strict[x] == s


def test_chain_tables_float_matches_exact():
    M = 30
    for weak in (True, False):
        exact = shifted_chain_table([2, 2], M, weak=weak)
        floating = shifted_chain_table([2.0, 2.0], M, weak=weak)
        for x in (0, 1, 5, M):
            assert float(exact[x]) == pytest.approx(floating[x], rel=1e-12)


def test_empty_chain_is_one():
    assert all(v == 1 for v in shifted_chain_table([], 5, weak=True))


def test_hook_rewrite_matches_tableau_sum():
    # the coupled truncation keeps every running value <= M, so the rewrite
    # agrees exactly with the tableau sum of the hook shape
    cases = [
        (1, 1, {0: 2, 1: 2, -1: 2}),
        (2, 1, {0: 3, 1: 2, 2: 2, -1: 2}),
        (1, 2, {0: 2, 1: 3, -1: 2, -2: 2}),
        (3, 2, {0: 2, 1: 1, 2: 1, 3: 2, -1: 1, -2: 2}),
        (0, 3, {0: 2, -1: 1, -2: 1, -3: 2}),
    ]
    for p, q, z in cases:
        for M in (3, 6):
            plus = [z[t] for t in range(1, p + 1)]
            minus = [z[-t] for t in range(1, q + 1)]
            bridge = hook_series_truncated(z[0], plus, minus, M)
            vt = VariableTableau.from_content(Partition.hook(p, q), z)
            assert bridge == eval_schur_truncated(vt, M)


def test_hook_rewrite_float():
    z = {0: 3.0, 1: 2.0, -1: 2.0}
    v = hook_series_truncated(z[0], [z[1]], [z[-1]], 40)
    vt = VariableTableau.from_content(Partition.hook(1, 1), {0: 3, 1: 2, -1: 2})
    assert v == pytest.approx(float(eval_schur_truncated(vt, 40)), rel=1e-12)
