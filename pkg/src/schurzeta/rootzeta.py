"""Zeta-functions of the type-A root system and their modified variants.

The rank-r series runs over m_1, ..., m_r with one factor
(m_i + ... + m_{j-1})^(-s(i,j)) per pair 1 <= i < j <= r+1. Variants:

* bullet (d): the first d indices run from 0, and factors whose base would
  vanish (all contributing indices zero) are omitted from the product.
* H (x): every base is shifted by a fixed x > 0, all indices from 1.
* bullet-H (d, x): both; the shift keeps every base positive, so nothing
  needs omitting.

Public evaluators truncate each index at M (a box truncation). The chain
tables at the bottom implement the coupled truncation used by the hook
rewrite of Schur sums, where the bound applies to the running values
x + m_1 + ... + m_k themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .mzv import (
    ConvergenceError,
    EvalResult,
    Number,
    exact_exponent,
)


def canonical_pairs(r: int) -> list[tuple[int, int]]:
    """Pair order (1,2),(2,3),...,(r,r+1),(1,3),...,(1,r+1): by gap, then start."""
    return [(i, i + g) for g in range(1, r + 1) for i in range(1, r + 2 - g)]


@dataclass(frozen=True)
class RootZetaArgs:
    """Rank and the variable attached to each positive root (i, j).

    Pairs absent from the mapping count as exponent 0, which is how the
    first-row-only shorthand (only s(1,j) set) is represented.
    """

    r: int
    s: dict[tuple[int, int], Number]
    first_row_only: bool = False

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("rank must be >= 1")
        valid = set(canonical_pairs(self.r))
        for pair in self.s:
            if pair not in valid:
                raise ValueError(f"pair {pair} is not a root of rank {self.r}")
        object.__setattr__(self, "s", dict(self.s))

    @classmethod
    def full(cls, r: int, values: Sequence[Number]) -> "RootZetaArgs":
        pairs = canonical_pairs(r)
        if len(values) != len(pairs):
            raise ValueError(f"rank {r} needs {len(pairs)} variables, got {len(values)}")
        return cls(r, dict(zip(pairs, values)))

    @classmethod
    def first_row(cls, values: Sequence[Number]) -> "RootZetaArgs":
        """s(1, j) = values[j-2] for j = 2..r+1, everything else 0."""
        r = len(values)
        if r < 1:
            raise ValueError("need at least one variable")
        return cls(r, {(1, j): values[j - 2] for j in range(2, r + 2)}, first_row_only=True)

    def value(self, i: int, j: int) -> Number:
        return self.s.get((i, j), 0)

    def is_exact(self) -> bool:
        return all(exact_exponent(v) is not None for v in self.s.values())

    def to_json(self) -> dict:
        return {
            "rank": self.r,
            "s": {f"{i},{j}": v for (i, j), v in sorted(self.s.items())},
            "first_row_only": self.first_row_only,
        }


def check_root_domain(args: RootZetaArgs) -> bool:
    """Sufficient-for-first-row-only convergence heuristic: all real parts
    >= 0, and the roots covering each position k sum to real part > 1."""
    if any(complex(v).real < 0 for v in args.s.values()):
        return False
    for k in range(1, args.r + 1):
        cover = sum(
            complex(args.value(i, j)).real
            for (i, j) in canonical_pairs(args.r)
            if i <= k < j
        )
        if not cover > 1:
            return False
    return True


def _box_sum(args: RootZetaArgs, M: int, d: int, x) -> Number:
    """Sum over the box 0-or-1 <= m_k <= M, depth-first.

    With x None and d > 0 the prime rule applies: a zero base can only occur
    for a factor entirely inside the zero-based block, and it is skipped.
    """
    r = args.r
    exact = args.is_exact() and (
        x is None or isinstance(x, (int, Fraction)) and not isinstance(x, bool)
    )
    one = Fraction(1) if exact else 1.0
    shift = (Fraction(x) if exact else x) if x is not None else None
    svals = {pair: (exact_exponent(v) if exact else v) for pair, v in args.s.items()}

    total = one * 0
    psums = [one * 0] * (r + 2)  # psums[i] = m_i + ... + m_k at depth k

    def descend(k: int, weight):
        nonlocal total
        lo = 0 if k <= d else 1
        for m in range(lo, M + 1):
            for i in range(1, k + 1):
                psums[i] += m
            w = weight
            for i in range(1, k + 1):
                s = svals.get((i, k + 1))
                if s is None or s == 0:
                    continue
                base = psums[i] if shift is None else shift + psums[i]
                if base == 0:
                    continue  # prime rule, only reachable inside the zero block
                if exact:
                    w = w / base**s
                elif isinstance(s, complex) and s.imag:
                    w = w * np.exp(-s * np.log(float(base)))
                else:
                    w = w * float(base) ** (-float(complex(s).real))
            if k == r:
                total += w
            else:
                descend(k + 1, w)
            for i in range(1, k + 1):
                psums[i] -= m
        psums[k] = one * 0

    descend(1, one)
    if not exact and isinstance(total, complex) and total.imag == 0:
        return total.real
    return total


def _doubling_result(evaluate, M: int) -> EvalResult:
    v1 = evaluate(M)
    v2 = evaluate(2 * M)
    estimate = 2.0 * abs(complex(v2) - complex(v1))
    return EvalResult(v1, estimate, M, heuristic=True)


def eval_zeta_A(args: RootZetaArgs, M: int) -> EvalResult:
    """Truncated type-A root-system zeta with a doubling-consistency estimate."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if not check_root_domain(args):
        raise ConvergenceError("root-system variables fail the convergence heuristic")
    return _doubling_result(lambda m: _box_sum(args, m, d=0, x=None), M)


def eval_zeta_bullet(args: RootZetaArgs, d: int, M: int) -> EvalResult:
    """First d indices run from 0 with vanishing-base factors omitted."""
    if not 0 <= d <= args.r:
        raise ValueError(f"d must satisfy 0 <= d <= {args.r}, got {d}")
    if M < 1:
        raise ValueError("M must be >= 1")
    if not check_root_domain(args):
        raise ConvergenceError("root-system variables fail the convergence heuristic")
    return _doubling_result(lambda m: _box_sum(args, m, d=d, x=None), M)


def eval_zeta_H(args: RootZetaArgs, x, M: int) -> EvalResult:
    """Every base shifted by x > 0."""
    if not complex(x).real > 0 or complex(x).imag:
        raise ValueError("shift x must be a positive real")
    if M < 1:
        raise ValueError("M must be >= 1")
    if not check_root_domain(args):
        raise ConvergenceError("root-system variables fail the convergence heuristic")
    return _doubling_result(lambda m: _box_sum(args, m, d=0, x=x), M)


def eval_zeta_bullet_H(args: RootZetaArgs, d: int, x, M: int) -> EvalResult:
    """Zero-based first d indices and shift x > 0; no omission is needed."""
    if not 0 <= d <= args.r:
        raise ValueError(f"d must satisfy 0 <= d <= {args.r}, got {d}")
    if not complex(x).real > 0 or complex(x).imag:
        raise ValueError("shift x must be a positive real")
    if M < 1:
        raise ValueError("M must be >= 1")
    if not check_root_domain(args):
        raise ConvergenceError("root-system variables fail the convergence heuristic")
    return _doubling_result(lambda m: _box_sum(args, m, d=d, x=x), M)


# ---------------------------------------------------------------------------
# Coupled truncation. For first-row-only variables the series collapse to a
# single chain of running values n_k = x + m_1 + ... + m_k, so the first-row
# zeta-bullet-H is a weak chain x <= n_1 <= ... <= n_p and the first-row
# zeta-H is a strict chain x < n_1 < ... < n_q. Truncating the chain at M is
# what keeps every Schur tableau entry <= M in the hook rewrite.
# ---------------------------------------------------------------------------


def shifted_chain_table(svals: Sequence[Number], M: int, weak: bool, exact: bool | None = None):
    """Table T with T[v] = sum over v <=/< n_1 <=/< ... <= M of prod n_t^(-s_t),
    for v = 0..M+1 (T[0] clamps the lower bound to 1).

    Returns a list of Fractions in exact mode, else a numpy array.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    svals = tuple(svals)
    if exact is None:
        exact = all(exact_exponent(v) is not None for v in svals)
    if exact:
        ints = [exact_exponent(v) for v in svals]
        if any(v is None for v in ints):
            raise ValueError("exact chain tables need non-negative integer exponents")
        T = [Fraction(1)] * (M + 2)
        for s in reversed(ints):
            G = [Fraction(0)] * (M + 2)
            acc = Fraction(0)
            for u in range(M, 0, -1):
                acc += T[u] / u**s
                G[u] = acc
            G[0] = acc
            T = G if weak else [G[min(v + 1, M + 1)] for v in range(M + 2)]
        return T
    cplx = any(isinstance(v, complex) and v.imag for v in svals)
    dtype = complex if cplx else float
    n = np.arange(1.0, M + 1.0)
    T = np.ones(M + 2, dtype=dtype)
    for s in reversed(svals):
        w = (np.exp(-s * np.log(n)) if cplx else n ** (-float(complex(s).real))) * T[1 : M + 1]
        G = np.zeros(M + 2, dtype=dtype)
        G[1 : M + 1] = np.cumsum(w[::-1])[::-1]
        G[0] = G[1]
        if weak:
            T = G
        else:
            T = np.concatenate((G[1:], np.zeros(1, dtype=dtype)))
    return T


def hook_series_truncated(z0: Number, plus: Sequence[Number], minus: Sequence[Number], M: int) -> Number:
    """The hook rewrite at coupled truncation M:
    sum over m <= M of m^(-z0) * weak chain from m over `plus`
    * strict chain above m over `minus`.
    """
    exact = (
        exact_exponent(z0) is not None
        and all(exact_exponent(v) is not None for v in plus)
        and all(exact_exponent(v) is not None for v in minus)
    )
    W = shifted_chain_table(plus, M, weak=True, exact=exact)
    S = shifted_chain_table(minus, M, weak=False, exact=exact)
    if exact:
        return sum(
            (W[m] * S[m] / m ** exact_exponent(z0) for m in range(1, M + 1)), Fraction(0)
        )
    m = np.arange(1.0, M + 1.0)
    z = complex(z0)
    w = np.exp(-z * np.log(m)) if z.imag else m ** (-z.real)
    total = (w * np.asarray(W)[1 : M + 1] * np.asarray(S)[1 : M + 1]).sum()
    return complex(total) if np.iscomplexobj(total) else float(total)
