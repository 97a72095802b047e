"""Integer-coefficient algebra over zeta / zeta-star symbols in the z variables.

A symbol is a strict or star Euler-Zagier sum whose arguments are content
indices (the integer k stands for z_k), outermost index last. Expressions
expand the hook identities, the Giambelli determinant and its fully expanded
permutation sum, and evaluate numerically through the mzv module. The
constant 1 is an empty product of symbols, never a symbol with empty
arguments, so degenerate trailing factors are simply omitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .mzv import (
    ConvergenceError,
    ContentAssignment,
    EvalResult,
    Number,
    TruncationConfig,
    check_ez_domain,
    eval_ez,
    eval_ez_truncated,
    exact_exponent,
)
from .partitions import Partition
from .rootzeta import shifted_chain_table


@dataclass(frozen=True)
class ZetaSymbol:
    """kind 'strict' for zeta, 'star' for zeta-star; args are z indices."""

    kind: str
    args: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("strict", "star"):
            raise ValueError(f"kind must be 'strict' or 'star', got {self.kind!r}")
        args = tuple(int(a) for a in self.args)
        if not args:
            raise ValueError("a symbol needs at least one argument; 1 is the empty product")
        object.__setattr__(self, "args", args)

    @property
    def sort_key(self):
        return (self.kind, self.args)

    def latex(self) -> str:
        head = r"\zeta^{\star}" if self.kind == "star" else r"\zeta"
        body = ", ".join(f"z_{{{k}}}" for k in self.args)
        return f"{head}({body})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "args": list(self.args)}


@dataclass(frozen=True)
class FormalTerm:
    coefficient: int
    factors: tuple[ZetaSymbol, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "factors", tuple(sorted(self.factors, key=lambda f: f.sort_key))
        )

    @property
    def sort_key(self):
        return (len(self.factors), tuple(f.sort_key for f in self.factors))


@dataclass(frozen=True)
class FormalExpr:
    terms: tuple[FormalTerm, ...] = ()

    @classmethod
    def zero(cls) -> "FormalExpr":
        return cls(())

    @classmethod
    def one(cls) -> "FormalExpr":
        return cls((FormalTerm(1, ()),))

    def __add__(self, other: "FormalExpr") -> "FormalExpr":
        return normalize(FormalExpr(self.terms + other.terms))

    def __sub__(self, other: "FormalExpr") -> "FormalExpr":
        return self + (-other)

    def __neg__(self) -> "FormalExpr":
        return FormalExpr(tuple(FormalTerm(-t.coefficient, t.factors) for t in self.terms))

    def __mul__(self, other: "FormalExpr") -> "FormalExpr":
        out = [
            FormalTerm(a.coefficient * b.coefficient, a.factors + b.factors)
            for a in self.terms
            for b in other.terms
        ]
        return normalize(FormalExpr(tuple(out)))

    def scaled(self, c: int) -> "FormalExpr":
        if c == 0:
            return FormalExpr.zero()
        return FormalExpr(tuple(FormalTerm(c * t.coefficient, t.factors) for t in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> list:
        return [
            {"coeff": t.coefficient, "factors": [f.to_json() for f in t.factors]}
            for t in self.terms
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "FormalExpr":
        return cls(
            tuple(
                FormalTerm(
                    int(t["coeff"]),
                    tuple(ZetaSymbol(f["kind"], tuple(f["args"])) for f in t["factors"]),
                )
                for t in data
            )
        )

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            body = r"\,".join(f.latex() for f in t.factors)
            mag = abs(t.coefficient)
            if not body:
                piece = str(mag)
            else:
                piece = (f"{mag} " if mag != 1 else "") + body
            if not parts:
                parts.append(("-" if t.coefficient < 0 else "") + piece)
            else:
                parts.append(("- " if t.coefficient < 0 else "+ ") + piece)
        return " ".join(parts)


def normalize(expr: FormalExpr) -> FormalExpr:
    """Collect like terms, drop zero coefficients, sort canonically; idempotent."""
    collected: dict[tuple, int] = {}
    factors_of: dict[tuple, tuple[ZetaSymbol, ...]] = {}
    for t in expr.terms:
        key = tuple(f.sort_key for f in t.factors)
        collected[key] = collected.get(key, 0) + t.coefficient
        factors_of[key] = t.factors
    terms = [
        FormalTerm(c, factors_of[key]) for key, c in collected.items() if c != 0
    ]
    terms.sort(key=lambda t: t.sort_key)
    return FormalExpr(tuple(terms))


# ---------------------------------------------------------------------------
# hook expansions
# ---------------------------------------------------------------------------


def expand_hook(p: int, q: int, variant: str = "hook1") -> FormalExpr:
    """The alternating star-times-strict expansion of the hook (p+1, 1^q).

    hook1 sums over the leg (q+1 terms), hook2 over the arm (p+1 terms); the
    empty trailing factor at the boundary index is omitted.
    """
    if p < 0 or q < 0:
        raise ValueError("hook arm and leg must be >= 0")
    terms = []
    if variant == "hook1":
        for j in range(q + 1):
            factors = [ZetaSymbol("star", tuple(range(-j, p + 1)))]
            if j < q:
                factors.append(ZetaSymbol("strict", tuple(range(-j - 1, -q - 1, -1))))
            terms.append(FormalTerm((-1) ** j, tuple(factors)))
    elif variant == "hook2":
        for j in range(p + 1):
            factors = [ZetaSymbol("strict", tuple(range(j, -q - 1, -1)))]
            if j < p:
                factors.append(ZetaSymbol("star", tuple(range(j + 1, p + 1))))
            terms.append(FormalTerm((-1) ** j, tuple(factors)))
    else:
        raise ValueError(f"variant must be 'hook1' or 'hook2', got {variant!r}")
    return normalize(FormalExpr(tuple(terms)))


# ---------------------------------------------------------------------------
# Giambelli determinant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HookEntry:
    """One determinant slot: the hook with arm p and leg q, content variables
    z_0..z_p along the row and z_{-1}..z_{-q} down the column."""

    p: int
    q: int

    @property
    def shape(self) -> Partition:
        return Partition.hook(self.p, self.q)

    @property
    def contents(self) -> tuple[int, ...]:
        return tuple(range(-self.q, self.p + 1))


def giambelli_det_expr(lam: Partition) -> list[list[HookEntry]]:
    """The N x N grid whose (i, j) slot is the hook with arm p_i and leg q_j."""
    f = lam.frobenius()
    return [[HookEntry(f.p[i], f.q[j]) for j in range(f.n)] for i in range(f.n)]


def expand_grid_determinant(grid: Sequence[Sequence[HookEntry]], variant: str = "hook1") -> FormalExpr:
    """Cofactor expansion along the last column, entries expanded per hook."""
    mat = [[expand_hook(e.p, e.q, variant) for e in row] for row in grid]

    def det(m: list[list[FormalExpr]]) -> FormalExpr:
        n = len(m)
        if n == 1:
            return m[0][0]
        total = FormalExpr.zero()
        for h in range(n):
            minor = [row[:-1] for r, row in enumerate(m) if r != h]
            total = total + (m[h][n - 1] * det(minor)).scaled((-1) ** (h + 1 + n))
        return total

    return normalize(det(mat))


def expand_giambelli_terms(lam: Partition, variant: str = "standard") -> Iterator[FormalTerm]:
    """Raw terms of the permutation-sum expansion, before collection.

    standard: one star factor per slot k over z_{-j_k}..z_{p_sigma(k)} and one
    strict factor over z_{-j_k-1}..z_{-q_k} (omitted at j_k = q_k), signs
    sgn(sigma) * (-1)^(j_1+...+j_N). reversed swaps the roles: strict factors
    carry z_{j_k}..z_{-q_k} and star factors z_{j_k+1}..z_{p_sigma(k)}.
    """
    if variant not in ("standard", "reversed"):
        raise ValueError(f"variant must be 'standard' or 'reversed', got {variant!r}")
    f = lam.frobenius()
    n = f.n
    for sigma in permutations(range(n)):
        sgn = _perm_sign(sigma)
        if variant == "standard":
            ranges = [range(f.q[k] + 1) for k in range(n)]
        else:
            ranges = [range(f.p[sigma[k]] + 1) for k in range(n)]
        for js in product(*ranges):
            coeff = sgn * (-1) ** sum(js)
            factors = []
            for k in range(n):
                j = js[k]
                if variant == "standard":
                    factors.append(ZetaSymbol("star", tuple(range(-j, f.p[sigma[k]] + 1))))
                    if j < f.q[k]:
                        factors.append(
                            ZetaSymbol("strict", tuple(range(-j - 1, -f.q[k] - 1, -1)))
                        )
                else:
                    factors.append(ZetaSymbol("strict", tuple(range(j, -f.q[k] - 1, -1))))
                    if j < f.p[sigma[k]]:
                        factors.append(
                            ZetaSymbol("star", tuple(range(j + 1, f.p[sigma[k]] + 1)))
                        )
            yield FormalTerm(coeff, tuple(factors))


def expand_giambelli(lam: Partition, variant: str = "standard") -> FormalExpr:
    """The collected permutation-sum expansion of the Giambelli determinant."""
    return normalize(FormalExpr(tuple(expand_giambelli_terms(lam, variant))))


def _perm_sign(sigma: Sequence[int]) -> int:
    sgn = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                sgn = -sgn
    return sgn


# ---------------------------------------------------------------------------
# numerical evaluation
# ---------------------------------------------------------------------------


def evaluate_expr(
    expr: FormalExpr, assignment: ContentAssignment | Mapping[int, Number], cfg: TruncationConfig
) -> EvalResult:
    """Sum of coefficient times product of factor values.

    Exact mode returns the exact rational combination of truncated factor
    sums; floating mode propagates the factor tail bounds first order through
    each product and adds them with absolute coefficients.
    """
    if not isinstance(assignment, ContentAssignment):
        assignment = ContentAssignment(assignment)
    note = ""
    if cfg.is_exact:
        if all(
            exact_exponent(v) is not None
            for t in expr.terms
            for f in t.factors
            for v in assignment.sequence(f.args)
        ):
            cache: dict[ZetaSymbol, Fraction] = {}
            total = Fraction(0)
            for t in expr.terms:
                val = Fraction(t.coefficient)
                for f in t.factors:
                    if f not in cache:
                        cache[f] = eval_ez_truncated(
                            assignment.sequence(f.args), cfg.M, star=f.kind == "star"
                        )
                    val *= cache[f]
                total += val
            return EvalResult(total, None, cfg.M)
        note = "exact mode requires non-negative integer exponents; fell back to floating"
    results: dict[ZetaSymbol, EvalResult] = {}
    for t in expr.terms:
        for f in t.factors:
            if f in results:
                continue
            values = assignment.sequence(f.args)
            if not check_ez_domain(values, star=f.kind == "star"):
                raise ConvergenceError(
                    f"factor {f.kind}{f.args} diverges under the given assignment"
                )
            results[f] = eval_ez(values, cfg, star=f.kind == "star")
    total = 0.0 + 0.0j
    bound = 0.0
    for t in expr.terms:
        vals = [complex(results[f].value) for f in t.factors]
        prod_val = 1.0 + 0.0j
        for v in vals:
            prod_val *= v
        total += t.coefficient * prod_val
        term_bound = 0.0
        for idx, f in enumerate(t.factors):
            others = 1.0
            for j, v in enumerate(vals):
                if j != idx:
                    others *= abs(v)
            term_bound += (results[f].tail_bound or 0.0) * others
        bound += abs(t.coefficient) * term_bound
    value = total.real if total.imag == 0 else total
    return EvalResult(value, bound, cfg.M, note=note)


def eval_thm42(
    lam: Partition, assignment: ContentAssignment | Mapping[int, Number], M: int
) -> EvalResult:
    """The root-system series form of the Schur sum: an N-fold sum over the
    diagonal entries m_kk <= M weighted by m^(-z_0), with one weak shifted
    chain (arm) and one strict shifted chain (leg) per slot, signed over
    permutations. Chains share the bound M with the outer sum, so every
    running value stays <= M.
    """
    if not isinstance(assignment, ContentAssignment):
        assignment = ContentAssignment(assignment)
    if M < 1:
        raise ValueError("M must be >= 1")
    f = lam.frobenius()
    z0 = assignment[0]
    if not complex(z0).real > 1:
        raise ConvergenceError("need Re(z_0) > 1 for the diagonal sum")
    plus = {pk: assignment.sequence(range(1, pk + 1)) for pk in set(f.p)}
    minus = {qj: assignment.sequence(tuple(-t for t in range(1, qj + 1))) for qj in set(f.q)}
    for pk, vals in plus.items():
        if vals and not check_ez_domain(vals, star=True):
            raise ConvergenceError(f"arm chain z_1..z_{pk} diverges")
    for qj, vals in minus.items():
        if vals and not check_ez_domain(vals):
            raise ConvergenceError(f"leg chain z_-1..z_-{qj} diverges")
    exact = exact_exponent(z0) is not None and all(
        exact_exponent(v) is not None for vals in (*plus.values(), *minus.values()) for v in vals
    )

    def value_at(bound: int):
        btab = {pk: shifted_chain_table(vals, bound, weak=True, exact=exact) for pk, vals in plus.items()}
        htab = {qj: shifted_chain_table(vals, bound, weak=False, exact=exact) for qj, vals in minus.items()}
        # the summand splits per diagonal slot j, pairing the leg chain q_j
        # with the arm chain p_k for the k that sigma sends to j
        pair: dict[tuple[int, int], Number] = {}

        def paired(qj: int, pk: int):
            if (qj, pk) not in pair:
                if exact:
                    e = exact_exponent(z0)
                    pair[(qj, pk)] = sum(
                        (htab[qj][m] * btab[pk][m] / m**e for m in range(1, bound + 1)),
                        Fraction(0),
                    )
                else:
                    m = np.arange(1.0, bound + 1.0)
                    zc = complex(z0)
                    w = np.exp(-zc * np.log(m)) if zc.imag else m ** (-zc.real)
                    pair[(qj, pk)] = (
                        w * np.asarray(htab[qj])[1 : bound + 1] * np.asarray(btab[pk])[1 : bound + 1]
                    ).sum()
            return pair[(qj, pk)]

        total = Fraction(0) if exact else 0.0
        for sigma in permutations(range(f.n)):
            term = Fraction(_perm_sign(sigma)) if exact else float(_perm_sign(sigma))
            for j in range(f.n):
                k = sigma.index(j)
                term = term * paired(f.q[j], f.p[k])
            total = total + term
        return total

    v1 = value_at(M)
    v2 = value_at(2 * M)
    estimate = 2.0 * abs(complex(v2) - complex(v1))
    value = v1
    if not exact and isinstance(value, complex) and value.imag == 0:
        value = value.real
    return EvalResult(value, estimate, M, heuristic=True)
