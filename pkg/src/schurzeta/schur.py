"""(Skew) Schur multiple zeta-functions by direct tableau summation.

The sum runs over semi-standard fillings of the shape with every entry at
most M, weighting a filling by prod m_ij^(-s_ij). Exact mode enumerates
fillings in rational arithmetic. Floating mode uses a row-window recurrence
(below) whose cost is M ** w with w the widest overlap between consecutive
rows, which keeps shapes like (3,2,1) tractable at M in the thousands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .mzv import (
    ConvergenceError,
    ContentAssignment,
    EvalResult,
    Number,
    TruncationConfig,
    eval_ez,
    eval_ez_truncated,
    exact_exponent,
)
from .partitions import Partition, SkewShape


@dataclass(frozen=True)
class VariableTableau:
    """A complex exponent per cell of a (skew) shape."""

    shape: SkewShape
    cell_values: Mapping[tuple[int, int], Number]

    def __post_init__(self):
        cells = set(self.shape.cells())
        given = set(self.cell_values)
        if given != cells:
            missing = sorted(cells - given)
            extra = sorted(given - cells)
            raise ValueError(f"cell values mismatch shape (missing {missing}, extra {extra})")
        object.__setattr__(self, "cell_values", dict(self.cell_values))

    @classmethod
    def from_content(
        cls, shape: SkewShape | Partition, assignment: ContentAssignment | Mapping[int, Number]
    ) -> "VariableTableau":
        """Content-parametrized variables: the cell (i, j) carries z_{j-i}."""
        if isinstance(shape, Partition):
            shape = shape.as_skew()
        if not isinstance(assignment, ContentAssignment):
            assignment = ContentAssignment(assignment)
        return cls(shape, {(i, j): assignment[j - i] for (i, j) in shape.cells()})

    @classmethod
    def from_cells(
        cls, shape: SkewShape | Partition, values: Mapping[tuple[int, int], Number]
    ) -> "VariableTableau":
        if isinstance(shape, Partition):
            shape = shape.as_skew()
        return cls(shape, values)

    def value(self, i: int, j: int) -> Number:
        return self.cell_values[(i, j)]

    def is_exact(self) -> bool:
        return all(exact_exponent(v) is not None for v in self.cell_values.values())

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "cells": {f"{i},{j}": v if not isinstance(v, complex) else [v.real, v.imag]
                      for (i, j), v in sorted(self.cell_values.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "VariableTableau":
        """Accepts the content form {"shape": ..., "content": {...}} and the
        per-cell form {"shape": ..., "cells": {"i,j": value}}."""
        raw_shape = data["shape"]
        if isinstance(raw_shape, Mapping):
            shape = SkewShape.from_json(raw_shape)
        else:
            shape = SkewShape(Partition.from_json(raw_shape))
        if "content" in data:
            return cls.from_content(shape, ContentAssignment.from_json(data["content"]))
        cells = {}
        for key, v in data["cells"].items():
            i, j = (int(t) for t in str(key).split(","))
            cells[(i, j)] = complex(*v) if isinstance(v, (list, tuple)) else v
        return cls(shape, cells)


def check_W_lambda(vt: VariableTableau) -> bool:
    """Convergence region: real part >= 1 everywhere, > 1 at every corner."""
    corners = set(vt.shape.corners())
    for cell, v in vt.cell_values.items():
        re = complex(v).real
        if cell in corners:
            if not re > 1:
                return False
        elif not re >= 1:
            return False
    return True


# ---------------------------------------------------------------------------
# exact path: depth-first enumeration with running products
# ---------------------------------------------------------------------------


def _sum_by_enumeration(vt: VariableTableau, M: int) -> Fraction:
    shape = vt.shape
    cells = shape.cells()
    if not cells:
        return Fraction(1)
    expo = {c: exact_exponent(vt.cell_values[c]) for c in cells}
    if any(e is None for e in expo.values()):
        raise ValueError("exact evaluation needs non-negative integer exponents")
    pow_cache: dict[int, list[Fraction]] = {}
    for e in set(expo.values()):
        pow_cache[e] = [Fraction(0)] + [Fraction(1, v**e) for v in range(1, M + 1)]
    below = {
        (i, j): sum(1 for r in range(i + 1, shape.n_rows + 1) if shape.contains(r, j))
        for (i, j) in cells
    }
    entries: dict[tuple[int, int], int] = {}
    total = Fraction(0)

    def fill(k: int, weight: Fraction):
        nonlocal total
        if k == len(cells):
            total += weight
            return
        i, j = cells[k]
        lo = 1
        if shape.contains(i, j - 1):
            lo = max(lo, entries[(i, j - 1)])
        if shape.contains(i - 1, j):
            lo = max(lo, entries[(i - 1, j)] + 1)
        hi = M - below[(i, j)]
        w = pow_cache[expo[(i, j)]]
        for v in range(lo, hi + 1):
            entries[(i, j)] = v
            fill(k + 1, weight * w[v])
        entries.pop((i, j), None)

    fill(0, Fraction(1))
    return total


# ---------------------------------------------------------------------------
# floating path: row-window recurrence
#
# Rows are processed top to bottom. The state is a joint array over the
# entries of the previous row that still constrain something below; placing a
# cell turns the "sum over values below a bound" steps into cumulative sums,
# so each row costs a handful of cumsum/gather passes over the state. Cells
# at the right end of a row with no neighbour above or below are folded into
# a one-dimensional suffix chain before the row is processed.
# ---------------------------------------------------------------------------


def _weight_vector(s: Number, M: int, dtype) -> np.ndarray:
    n = np.arange(1.0, M + 1.0)
    if dtype is complex and isinstance(s, complex) and s.imag:
        return np.exp(-s * np.log(n))
    return (n ** (-float(complex(s).real))).astype(dtype)


def _suffix_chain(svals: Sequence[Number], M: int, dtype) -> np.ndarray:
    """T[v-1] = sum over v <= u_1 <= ... <= u_t <= M of prod u^(-s)."""
    T = np.ones(M, dtype=dtype)
    for s in reversed(svals):
        w = _weight_vector(s, M, dtype) * T
        T = np.cumsum(w[::-1])[::-1]
    return T


class _RowWindow:
    """State array plus the labels of its live axes."""

    def __init__(self, M: int, dtype):
        self.M = M
        self.dtype = dtype
        self.state = np.ones((), dtype=dtype)
        self.live: list[tuple[str, int]] = []

    def _axis(self, label) -> int:
        return self.live.index(label)

    def place(self, label, weight: np.ndarray, consume_strict=None, consume_weak=None, mask_weak=None):
        """Add one cell's axis; bounds come from existing axes.

        consume_* axes are summed into the new axis (strict: value < new,
        weak: value <= new) and disappear. mask_weak stays live, contributing
        the constraint new >= its value.
        """
        M, state = self.M, self.state
        consumed = []
        for lab, strict in ((consume_strict, True), (consume_weak, False)):
            if lab is None:
                continue
            t = self._axis(lab)
            cs = np.cumsum(state, axis=t)
            if strict:
                cs = np.roll(cs, 1, axis=t)
                sl = [slice(None)] * cs.ndim
                sl[t] = 0
                cs[tuple(sl)] = 0
            state = cs
            consumed.append(lab)
        if consumed:
            ts = [self._axis(lab) for lab in consumed]
            moved = np.moveaxis(state, ts, range(len(ts)))
            idx = (np.arange(M),) * len(ts)
            state = np.moveaxis(moved[idx], 0, -1)
            self.live = [lab for lab in self.live if lab not in consumed] + [label]
        else:
            state = state[..., None] * np.ones(M, dtype=self.dtype)
            self.live = self.live + [label]
        if mask_weak is not None:
            t = self._axis(mask_weak)
            shape_u = [1] * len(self.live)
            shape_u[t] = M
            shape_m = [1] * len(self.live)
            shape_m[-1] = M
            u = np.arange(M).reshape(shape_u)
            m = np.arange(M).reshape(shape_m)
            state = state * (m >= u)
        self.state = state * weight
        if self.state.size > 2**28:
            raise ValueError(
                "row-window state too large; lower M or use exact enumeration for this shape"
            )

    def scale_axis(self, label, vec: np.ndarray):
        t = self._axis(label)
        shape = [1] * self.state.ndim
        shape[t] = self.M
        self.state = self.state * vec.reshape(shape)

    def drop(self, label):
        t = self._axis(label)
        self.state = self.state.sum(axis=t)
        self.live.pop(t)

    def total(self):
        return self.state.sum()


def _sum_by_recurrence(vt: VariableTableau, M: int):
    shape = vt.shape
    if not shape.cells():
        return 1.0
    dtype = complex if any(
        isinstance(v, complex) and v.imag for v in vt.cell_values.values()
    ) else float
    win = _RowWindow(M, dtype)
    spans = [shape.row_span(i) for i in range(1, shape.n_rows + 1)]
    b_prev = 0  # right end of the adjacent nonempty row above
    for i, (a, b) in enumerate(spans, 1):
        if a >= b:
            # empty row: nothing below can see past it
            for lab in list(win.live):
                win.drop(lab)
            b_prev = 0
            continue
        win.live = [("p", c) for (_, c) in win.live]
        b_next = 0
        if i < len(spans):
            an, bn = spans[i]
            b_next = bn if an < bn else 0
        # columns with neighbours neither above nor below fold into a chain
        c0 = max(max(b_prev, b_next) + 1, a + 1)
        for c in range(a + 1, min(c0 - 1, b) + 1):
            w = _weight_vector(vt.value(i, c), M, dtype)
            above = ("p", c) if ("p", c) in win.live else None
            left = ("u", c - 1) if c - 1 > a else None
            # a left neighbour still wanted by the next row stays live under a
            # mask; otherwise it is summed into the new axis and disappears
            left_needed = left is not None and c - 1 <= b_next
            win.place(
                ("u", c),
                w,
                consume_strict=above,
                consume_weak=left if (left is not None and not left_needed) else None,
                mask_weak=left if left_needed else None,
            )
        if c0 <= b:
            chain = _suffix_chain([vt.value(i, c) for c in range(c0, b + 1)], M, dtype)
            if c0 == a + 1:
                win.state = win.state * chain[0]
            else:
                win.scale_axis(("u", c0 - 1), chain)
        for lab in list(win.live):
            kind, c = lab
            if kind == "u" and c > b_next:
                win.drop(lab)
        b_prev = b
    total = win.total()
    return complex(total) if dtype is complex else float(total)


def eval_schur_truncated(vt: VariableTableau, M: int, exact: bool | None = None) -> Number:
    """Sum over all semi-standard fillings with entries <= M.

    exact=None picks rational arithmetic when every exponent is a
    non-negative integer; exact=False forces the floating recurrence.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    if exact is None:
        exact = vt.is_exact()
    if exact:
        return _sum_by_enumeration(vt, M)
    return _sum_by_recurrence(vt, M)


def eval_schur(vt: VariableTableau, cfg: TruncationConfig) -> EvalResult:
    """Truncated Schur sum with a doubling-consistency tail estimate."""
    note = ""
    if not vt.shape.is_straight():
        note = "skew shape: convergence checked with the same corner rule, heuristically"
    if not check_W_lambda(vt):
        raise ConvergenceError(
            "exponents violate the convergence region (need Re >= 1, > 1 at corners)"
        )
    if cfg.is_exact:
        if vt.is_exact():
            return EvalResult(_sum_by_enumeration(vt, cfg.M), None, cfg.M, note=note)
        note = (note + "; " if note else "") + (
            "exact mode requires non-negative integer exponents; fell back to floating"
        )
    v1 = _sum_by_recurrence(vt, cfg.M)
    v2 = _sum_by_recurrence(vt, 2 * cfg.M)
    estimate = 2.0 * abs(complex(v2) - complex(v1))
    return EvalResult(v1, estimate, cfg.M, heuristic=True, note=note)


# ---------------------------------------------------------------------------
# reversed-hook skew shapes: one long bottom row under a single right column
# ---------------------------------------------------------------------------


def antihook_tableau(bottom: Sequence[Number], column: Sequence[Number]) -> VariableTableau:
    """The skew shape (k+1)^(l+1) / k^l with the bottom row carrying `bottom`
    left to right and the right column carrying `column` bottom to top."""
    k = len(bottom) - 1
    l = len(column)
    if k < 1 or l < 1:
        raise ValueError("need at least two bottom values and one column value")
    outer = Partition((k + 1,) * (l + 1))
    inner = Partition((k,) * l)
    cells: dict[tuple[int, int], Number] = {}
    for r in range(1, l + 1):
        cells[(r, k + 1)] = column[l - r]
    for j in range(1, k + 2):
        cells[(l + 1, j)] = bottom[j - 1]
    return VariableTableau(SkewShape(outer, inner), cells)


def _antihook_terms(bottom: Sequence[Number], column: Sequence[Number]):
    k = len(bottom) - 1
    for i in range(k + 1):
        sign = (-1) ** (k - i)
        star_args = tuple(bottom[:i])
        strict_args = tuple(reversed(column)) + tuple(reversed(bottom[i:]))
        yield sign, star_args, strict_args


def eval_skew_antihook_rhs(
    bottom: Sequence[Number], column: Sequence[Number], cfg: TruncationConfig
) -> EvalResult:
    """The alternating sum of zeta-star times zeta products equal to the
    reversed-hook skew sum; the empty star factor counts as 1."""
    if len(bottom) < 2 or len(column) < 1:
        raise ValueError("need at least two bottom values and one column value")
    exact = cfg.is_exact and all(
        exact_exponent(v) is not None for v in (*bottom, *column)
    )
    if exact:
        total = Fraction(0)
        for sign, star_args, strict_args in _antihook_terms(bottom, column):
            term = Fraction(sign)
            if star_args:
                term *= eval_ez_truncated(star_args, cfg.M, star=True)
            term *= eval_ez_truncated(strict_args, cfg.M, star=False)
            total += term
        return EvalResult(total, None, cfg.M)
    note = "" if not cfg.is_exact else (
        "exact mode requires non-negative integer exponents; fell back to floating"
    )
    total = 0.0
    bound = 0.0
    for sign, star_args, strict_args in _antihook_terms(bottom, column):
        factors = []
        for args, star in ((star_args, True), (strict_args, False)):
            if not args:
                continue
            try:
                factors.append(eval_ez(args, cfg, star=star))
            except ConvergenceError as err:
                name = ("zeta-star" if star else "zeta") + str(tuple(args))
                raise ConvergenceError(f"factor {name}: {err}") from None
        term = 1.0 + 0.0j
        for f in factors:
            term *= complex(f.value)
        total = total + sign * term
        # first-order propagation through the product
        for f in factors:
            others = 1.0
            for g in factors:
                if g is not f:
                    others *= abs(complex(g.value))
            bound += (f.tail_bound or 0.0) * others
    if isinstance(total, complex) and total.imag == 0:
        total = total.real
    return EvalResult(total, bound, cfg.M, note=note)
