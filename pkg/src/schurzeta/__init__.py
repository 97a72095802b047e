"""Schur multiple zeta-functions: combinatorics, series evaluators, and
formal identity expansion / verification."""

from .expressions import (
    FormalExpr,
    FormalTerm,
    HookEntry,
    ZetaSymbol,
    eval_thm42,
    evaluate_expr,
    expand_giambelli,
    expand_giambelli_terms,
    expand_grid_determinant,
    expand_hook,
    giambelli_det_expr,
    normalize,
)
from .mzv import (
    ContentAssignment,
    ConvergenceError,
    EvalResult,
    TruncationConfig,
    check_ez_domain,
    eval_ez,
    eval_ez_truncated,
)
from .partitions import FrobeniusForm, Partition, SkewShape, Tableau, enumerate_ssyt
from .rootzeta import (
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
from .schur import (
    VariableTableau,
    antihook_tableau,
    check_W_lambda,
    eval_schur,
    eval_schur_truncated,
    eval_skew_antihook_rhs,
)

__version__ = "0.1.0"

__all__ = [
    "ContentAssignment",
    "ConvergenceError",
    "EvalResult",
    "FormalExpr",
    "FormalTerm",
    "FrobeniusForm",
    "HookEntry",
    "Partition",
    "RootZetaArgs",
    "SkewShape",
    "Tableau",
    "TruncationConfig",
    "VariableTableau",
    "ZetaSymbol",
    "antihook_tableau",
    "canonical_pairs",
    "check_W_lambda",
    "check_ez_domain",
    "check_root_domain",
    "enumerate_ssyt",
    "eval_ez",
    "eval_ez_truncated",
    "eval_schur",
    "eval_schur_truncated",
    "eval_skew_antihook_rhs",
    "eval_thm42",
    "eval_zeta_A",
    "eval_zeta_H",
    "eval_zeta_bullet",
    "eval_zeta_bullet_H",
    "evaluate_expr",
    "expand_giambelli",
    "expand_giambelli_terms",
    "expand_grid_determinant",
    "expand_hook",
    "giambelli_det_expr",
    "hook_series_truncated",
    "normalize",
    "shifted_chain_table",
]
