"""Euler-Zagier multiple zeta and zeta-star sums with explicit truncation.

Argument order follows zeta(s_1, ..., s_r) = sum over m_1 < ... < m_r of
prod m_t^(-s_t): the last exponent belongs to the largest (outermost) index.
The star variant replaces every strict inequality by a weak one.

Truncation at M keeps exactly the tuples with m_r <= M, which is the
repository-wide convention: every running value stays <= M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Mapping, Sequence

import numpy as np

Number = int | float | complex | Fraction


class ConvergenceError(ValueError):
    """A series was requested outside its convergence domain."""


@dataclass(frozen=True)
class TruncationConfig:
    """How a series is truncated and compared.

    mode "exact" sums in rational arithmetic (integer exponents only);
    "floating" uses double precision. tolerance is the comparison width
    used by verification commands in floating mode.
    """

    M: int = 1000
    mode: str = "floating"
    tolerance: float = 1e-8

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("truncation M must be >= 1")
        if self.mode not in ("exact", "floating"):
            raise ValueError(f"mode must be 'exact' or 'floating', got {self.mode!r}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"


@dataclass
class EvalResult:
    """A computed value with the truncation used and a tail error estimate.

    tail_bound is None in exact mode (the value is exact for the truncated
    sum). heuristic marks estimates that are consistency checks rather than
    proved bounds.
    """

    value: Number
    tail_bound: float | None
    truncation: int
    heuristic: bool = False
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "value": value_to_json(self.value),
            "tail_bound": self.tail_bound,
            "truncation": self.truncation,
            "heuristic": self.heuristic,
            "note": self.note,
        }


def value_to_json(v: Number):
    """Fractions render as 'p/q' strings, complex values as [re, im]."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def exact_exponent(v) -> int | None:
    """The value as a non-negative int if it qualifies for exact mode, else None."""
    if isinstance(v, bool):
        return None
    if isinstance(v, Integral):
        return int(v) if v >= 0 else None
    if isinstance(v, Fraction) and v.denominator == 1 and v >= 0:
        return int(v)
    return None


@dataclass(frozen=True)
class ContentAssignment:
    """Values for the content-indexed variables z_k, k in Z."""

    values: Mapping[int, Number]

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))

    def __getitem__(self, k: int) -> Number:
        try:
            return self.values[k]
        except KeyError:
            raise KeyError(f"no value assigned to z_{k}") from None

    def __contains__(self, k: int) -> bool:
        return k in self.values

    def sequence(self, indices: Sequence[int]) -> tuple[Number, ...]:
        return tuple(self[k] for k in indices)

    def is_exact(self) -> bool:
        return all(exact_exponent(v) is not None for v in self.values.values())

    def to_json(self) -> dict:
        return {str(k): value_to_json(v) for k, v in sorted(self.values.items())}

    @classmethod
    def from_json(cls, data: Mapping) -> "ContentAssignment":
        vals: dict[int, Number] = {}
        for k, v in data.items():
            if isinstance(v, (list, tuple)):
                re, im = v
                vals[int(k)] = complex(re, im) if im else float(re)
            else:
                vals[int(k)] = v
        return cls(vals)


def check_ez_domain(s: Sequence[Number], star: bool = False) -> bool:
    """Whether the series converges: every suffix of length i has real part sum > i.

    The domain is the same for the strict and the star variant; the flag is
    accepted so call sites can stay symmetric.
    """
    s = tuple(s)
    if not s:
        return True
    acc = 0.0
    for i, v in enumerate(reversed(s), 1):
        acc += complex(v).real
        if not acc > i:
            return False
    return True


def _truncated_exact(s: Sequence[int], M: int, star: bool) -> Fraction:
    # prefix-sum recurrence: A_t[m] holds the sum over chains ending at m_t = m,
    # so the whole depth-r sum costs O(M * r) instead of O(M ** r)
    A = [Fraction(0)] * (M + 1)
    for m in range(1, M + 1):
        A[m] = Fraction(1, m ** s[0])
    for sj in s[1:]:
        nxt = [Fraction(0)] * (M + 1)
        acc = Fraction(0)
        for m in range(1, M + 1):
            if star:
                acc += A[m]
                prev = acc
            else:
                prev = acc
                acc += A[m]
            if prev:
                nxt[m] = prev / m ** sj
        A = nxt
    return sum(A, Fraction(0))


def _pow_vector(m: np.ndarray, s: Number) -> np.ndarray:
    if isinstance(s, complex) and s.imag != 0:
        return np.exp(-s * np.log(m))  # principal branch m^(-s)
    return m ** (-float(complex(s).real))


def _truncated_float(s: Sequence[Number], M: int, star: bool) -> float | complex:
    m = np.arange(1.0, M + 1.0)
    A = _pow_vector(m, s[0])
    for sj in s[1:]:
        cs = np.cumsum(A)
        if not star:
            cs = np.concatenate((np.zeros(1, dtype=cs.dtype), cs[:-1]))
        A = _pow_vector(m, sj) * cs
    total = A.sum()
    return complex(total) if np.iscomplexobj(A) else float(total)


def eval_ez_truncated(s: Sequence[Number], M: int, star: bool = False) -> Number:
    """The finite sum with m_r <= M; exact Fraction when all exponents are
    non-negative integers, double precision otherwise."""
    s = tuple(s)
    if M < 1:
        raise ValueError("M must be >= 1")
    if not s:
        return Fraction(1)
    ints = [exact_exponent(v) for v in s]
    if all(v is not None for v in ints):
        return _truncated_exact(ints, M, star)
    return _truncated_float(s, M, star)


def _tail_bound(s: Sequence[Number], M: int, star: bool) -> float:
    # integral comparison on the outermost index, times the truncated value of
    # the remaining sum; a log inflation covers inner exponents sitting at
    # real part exactly 1
    sr = complex(s[-1]).real
    tail = M ** (1.0 - sr) / (sr - 1.0)
    if len(s) > 1:
        rest = abs(_truncated_float([complex(v) for v in s[:-1]], M, star))
        if any(complex(v).real == 1.0 for v in s[:-1]):
            tail *= (1.0 + math.log(M)) ** (len(s) - 1)
    else:
        rest = 1.0
    return tail * rest


def eval_ez(s: Sequence[Number], cfg: TruncationConfig, star: bool = False) -> EvalResult:
    """Truncated Euler-Zagier value with a tail bound.

    The interval value +- tail_bound contains the limit whenever all real
    parts are >= 1 and the convergence condition holds.
    """
    s = tuple(s)
    if not s:
        raise ValueError("empty exponent sequence")
    if not check_ez_domain(s, star):
        raise ConvergenceError(
            f"exponents {s} violate the convergence condition (suffix sums must exceed the depth)"
        )
    note = ""
    if cfg.is_exact:
        ints = [exact_exponent(v) for v in s]
        if all(v is not None for v in ints):
            value = _truncated_exact(ints, cfg.M, star)
            return EvalResult(value, None, cfg.M)
        note = "exact mode requires non-negative integer exponents; fell back to floating"
    value = _truncated_float(s, cfg.M, star)
    return EvalResult(value, _tail_bound(s, cfg.M, star), cfg.M, note=note)
