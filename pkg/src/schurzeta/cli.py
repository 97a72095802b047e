"""Command-line front end: evaluation, expansion, and identity verification.

Every run prints a machine-readable report (JSON by default) echoing the
parsed job, and exits 0 on success, 2 when a verification fails, 1 on input
or convergence errors. Configuration precedence: flags, then SCHURZETA_*
environment variables, then built-in defaults (M=1000, tolerance=1e-8,
floating mode).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .expressions import (
    FormalExpr,
    eval_thm42,
    evaluate_expr,
    expand_giambelli,
    expand_giambelli_terms,
    expand_hook,
    giambelli_det_expr,
)
from .mzv import (
    ConvergenceError,
    EvalResult,
    TruncationConfig,
    eval_ez,
    value_to_json,
)
from .partitions import Partition, SkewShape
from .rootzeta import (
    RootZetaArgs,
    eval_zeta_A,
    eval_zeta_H,
    eval_zeta_bullet,
    eval_zeta_bullet_H,
)
from .schur import (
    VariableTableau,
    antihook_tableau,
    eval_schur,
    eval_schur_truncated,
    eval_skew_antihook_rhs,
)

SCHEMA_VERSION = 1
DEFAULTS = {"M": 1000, "tolerance": 1e-8, "mode": "floating", "threads": 1, "format": "json"}

VERIFY_IDENTITIES = ("hook1", "hook2", "giambelli", "thm41", "thm41-reversed", "thm42", "antihook")


class UsageError(ValueError):
    """Bad flags, malformed JSON, or missing/unknown job fields."""


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def _parse_number(tok: str):
    tok = tok.strip()
    try:
        return int(tok)
    except ValueError:
        pass
    if "/" in tok:
        try:
            return Fraction(tok)
        except ValueError:
            pass
    try:
        return float(tok)
    except ValueError:
        pass
    try:
        return complex(tok)
    except ValueError:
        raise UsageError(f"cannot parse number {tok!r}") from None


def _parse_number_list(text: str) -> list:
    return [_parse_number(t) for t in text.split(",") if t.strip()]


def _parse_partition(text: str) -> Partition:
    try:
        return Partition(tuple(int(t) for t in str(text).split(",") if t.strip()))
    except ValueError as err:
        raise UsageError(f"bad partition {text!r}: {err}") from None


def _parse_content(text) -> dict:
    """'0=3,1=2,-1=2' or a JSON-style mapping into {index: value}."""
    if isinstance(text, dict):
        return {int(k): v if not isinstance(v, list) else complex(*v) for k, v in text.items()}
    out = {}
    for item in str(text).split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise UsageError(f"content entries look like k=value, got {item!r}")
        k, v = item.split("=", 1)
        out[int(k)] = _parse_number(v)
    return out


def _env(name: str, default, cast):
    raw = os.environ.get(f"SCHURZETA_{name}")
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad SCHURZETA_{name} value {raw!r}") from None


# ---------------------------------------------------------------------------
# job specification
# ---------------------------------------------------------------------------

_COMMAND_PARAMS = {
    "eval-mzv": {"args", "star"},
    "eval-schur": {"shape", "inner", "content", "cells"},
    "eval-rootzeta": {"rank", "variant", "svars", "first_row", "d", "x"},
    "expand": {"target", "p", "q", "shape", "variant", "collected"},
    "verify": {"identity", "p", "q", "shape", "content", "bottom", "column"},
}


@dataclass
class JobSpec:
    """One CLI job: what to run, its parameters, truncation config, output."""

    command: str
    params: dict = field(default_factory=dict)
    cfg: TruncationConfig = TruncationConfig()
    output: str = "json"
    threads: int = 1

    def __post_init__(self):
        if self.command not in _COMMAND_PARAMS:
            raise UsageError(f"unknown command {self.command!r}")
        allowed = _COMMAND_PARAMS[self.command]
        unknown = set(self.params) - allowed
        if unknown:
            raise UsageError(
                f"unknown field(s) for {self.command}: {', '.join(sorted(unknown))}"
            )
        if self.output not in ("json", "plain", "latex"):
            raise UsageError(f"output must be json, plain or latex, got {self.output!r}")

    def to_json(self) -> dict:
        params = {}
        for k, v in self.params.items():
            if isinstance(v, (int, float, str, bool)) or v is None:
                params[k] = v
            elif isinstance(v, (list, tuple)):
                params[k] = [value_to_json(x) for x in v]
            elif isinstance(v, dict):
                params[k] = {str(kk): value_to_json(vv) for kk, vv in v.items()}
            else:
                params[k] = value_to_json(v)
        return {
            "command": self.command,
            "params": params,
            "cfg": {"M": self.cfg.M, "mode": self.cfg.mode, "tolerance": self.cfg.tolerance},
            "output": self.output,
            "threads": self.threads,
        }

    @classmethod
    def from_json(cls, data: dict) -> "JobSpec":
        if not isinstance(data, dict):
            raise UsageError("job spec must be a JSON object")
        known = {"command", "params", "cfg", "output", "threads"}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown job field(s): {', '.join(sorted(unknown))}")
        if "command" not in data:
            raise UsageError("job spec is missing the 'command' field")
        cfg_data = data.get("cfg", {})
        extra = set(cfg_data) - {"M", "mode", "tolerance"}
        if extra:
            raise UsageError(f"unknown cfg field(s): {', '.join(sorted(extra))}")
        try:
            cfg = TruncationConfig(
                M=int(cfg_data.get("M", DEFAULTS["M"])),
                mode=cfg_data.get("mode", DEFAULTS["mode"]),
                tolerance=float(cfg_data.get("tolerance", DEFAULTS["tolerance"])),
            )
        except ValueError as err:
            raise UsageError(f"bad cfg: {err}") from None
        return cls(
            command=data["command"],
            params=dict(data.get("params", {})),
            cfg=cfg,
            output=data.get("output", "json"),
            threads=int(data.get("threads", 1)),
        )


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------


def _result_payload(res: EvalResult) -> dict:
    payload = res.as_dict()
    if isinstance(res.value, Fraction):
        payload["value_float"] = float(res.value)
    return payload


def _require(params: dict, key: str, command: str):
    if params.get(key) is None:
        raise UsageError(f"{command} requires --{key.replace('_', '-')}")
    return params[key]


def _run_eval_mzv(spec: JobSpec) -> dict:
    args = [_parse_number(str(a)) for a in _require(spec.params, "args", "eval-mzv")]
    star = bool(spec.params.get("star", False))
    res = eval_ez(args, spec.cfg, star=star)
    return {"results": _result_payload(res)}


def _schur_tableau(params: dict) -> VariableTableau:
    shape = _parse_partition(_require(params, "shape", "eval-schur"))
    inner = params.get("inner")
    skew = SkewShape(shape, _parse_partition(inner) if inner else Partition(()))
    if params.get("cells") is not None:
        cells = {}
        for key, v in params["cells"].items():
            i, j = (int(t) for t in str(key).split(","))
            cells[(i, j)] = v if not isinstance(v, list) else complex(*v)
        return VariableTableau.from_cells(skew, cells)
    content = _parse_content(_require(params, "content", "eval-schur"))
    return VariableTableau.from_content(skew, content)


def _run_eval_schur(spec: JobSpec) -> dict:
    vt = _schur_tableau(spec.params)
    res = eval_schur(vt, spec.cfg)
    return {"results": _result_payload(res)}


def _run_eval_rootzeta(spec: JobSpec) -> dict:
    params = spec.params
    variant = params.get("variant", "plain")
    if params.get("first_row") is not None:
        args = RootZetaArgs.first_row([_parse_number(str(v)) for v in params["first_row"]])
    else:
        rank = int(_require(params, "rank", "eval-rootzeta"))
        args = RootZetaArgs.full(rank, [_parse_number(str(v)) for v in _require(params, "svars", "eval-rootzeta")])
    M = spec.cfg.M
    if variant == "plain":
        res = eval_zeta_A(args, M)
    elif variant == "bullet":
        res = eval_zeta_bullet(args, int(_require(params, "d", "eval-rootzeta")), M)
    elif variant == "H":
        res = eval_zeta_H(args, _parse_number(str(_require(params, "x", "eval-rootzeta"))), M)
    elif variant == "bulletH":
        res = eval_zeta_bullet_H(
            args,
            int(_require(params, "d", "eval-rootzeta")),
            _parse_number(str(_require(params, "x", "eval-rootzeta"))),
            M,
        )
    else:
        raise UsageError(f"variant must be plain, bullet, H or bulletH, got {variant!r}")
    return {"results": _result_payload(res)}


def _expr_plain(expr: FormalExpr) -> str:
    if not expr.terms:
        return "0"
    parts = []
    for t in expr.terms:
        body = "*".join(
            ("zeta*" if f.kind == "star" else "zeta") + "(" + ",".join(f"z{k}" for k in f.args) + ")"
            for f in t.factors
        )
        mag = abs(t.coefficient)
        if not body:
            piece = str(mag)
        else:
            piece = (f"{mag}*" if mag != 1 else "") + body
        if not parts:
            parts.append(("-" if t.coefficient < 0 else "") + piece)
        else:
            parts.append(("- " if t.coefficient < 0 else "+ ") + piece)
    return " ".join(parts)


def _run_expand(spec: JobSpec) -> dict:
    params = spec.params
    target = _require(params, "target", "expand")
    if target in ("hook1", "hook2"):
        p = int(_require(params, "p", "expand"))
        q = int(_require(params, "q", "expand"))
        expr = expand_hook(p, q, target)
    elif target == "giambelli":
        lam = _parse_partition(_require(params, "shape", "expand"))
        variant = params.get("variant", "standard")
        if params.get("collected"):
            expr = expand_giambelli(lam, variant)
        else:
            # uncollected permutation-sum terms, as the identity is stated
            expr = FormalExpr(tuple(expand_giambelli_terms(lam, variant)))
    else:
        raise UsageError(f"expand target must be hook1, hook2 or giambelli, got {target!r}")
    return {
        "results": {
            "terms": expr.to_json(),
            "term_count": len(expr),
            "latex": expr.latex(),
            "plain": _expr_plain(expr),
        }
    }


def _giambelli_matrix_value(lam: Partition, content: dict, cfg: TruncationConfig):
    """Determinant of the hook-shape Schur values, by direct tableau sums."""
    grid = giambelli_det_expr(lam)
    n = len(grid)
    exact = cfg.is_exact
    vals = [
        [
            eval_schur_truncated(
                VariableTableau.from_content(entry.shape, content), cfg.M, exact=exact or None
            )
            for entry in row
        ]
        for row in grid
    ]

    def det(mat):
        if len(mat) == 1:
            return mat[0][0]
        total = 0
        for h in range(len(mat)):
            minor = [row[:-1] for r, row in enumerate(mat) if r != h]
            total += (-1) ** (h + 1 + len(mat)) * mat[h][-1] * det(minor)
        return total

    return det(vals)


def _run_verify(spec: JobSpec) -> dict:
    params = spec.params
    cfg = spec.cfg
    identity = _require(params, "identity", "verify")
    if identity not in VERIFY_IDENTITIES:
        raise UsageError(f"identity must be one of {', '.join(VERIFY_IDENTITIES)}")
    content = _parse_content(params.get("content") or {})

    def schur_value(vt: VariableTableau):
        if cfg.is_exact:
            return eval_schur_truncated(vt, cfg.M), 0.0
        res = eval_schur(vt, cfg)
        return res.value, res.tail_bound or 0.0

    def make_sides():
        if identity in ("hook1", "hook2"):
            p = int(_require(params, "p", "verify"))
            q = int(_require(params, "q", "verify"))
            vt = VariableTableau.from_content(Partition.hook(p, q), content)
            rhs = evaluate_expr(expand_hook(p, q, identity), content, cfg)
            return (lambda: schur_value(vt)), (lambda: (rhs.value, rhs.tail_bound or 0.0))
        if identity == "antihook":
            bottom = [_parse_number(str(v)) for v in _require(params, "bottom", "verify")]
            column = [_parse_number(str(v)) for v in _require(params, "column", "verify")]
            vt = antihook_tableau(bottom, column)
            return (
                lambda: schur_value(vt),
                lambda: (
                    (r := eval_skew_antihook_rhs(bottom, column, cfg)).value,
                    r.tail_bound or 0.0,
                ),
            )
        lam = _parse_partition(_require(params, "shape", "verify"))
        vt = VariableTableau.from_content(lam, content)
        if identity == "giambelli":
            return (
                lambda: schur_value(vt),
                lambda: (_giambelli_matrix_value(lam, content, cfg), 0.0),
            )
        if identity in ("thm41", "thm41-reversed"):
            variant = "standard" if identity == "thm41" else "reversed"
            expr = expand_giambelli(lam, variant)
            return (
                lambda: schur_value(vt),
                lambda: ((r := evaluate_expr(expr, content, cfg)).value, r.tail_bound or 0.0),
            )
        # thm42
        return (
            lambda: schur_value(vt),
            lambda: ((r := eval_thm42(lam, content, cfg.M)).value, r.tail_bound or 0.0),
        )

    lhs_f, rhs_f = make_sides()
    if spec.threads > 1:
        with ThreadPoolExecutor(max_workers=2) as pool:
            lhs_fut, rhs_fut = pool.submit(lhs_f), pool.submit(rhs_f)
            (lhs, lhs_bound), (rhs, rhs_bound) = lhs_fut.result(), rhs_fut.result()
    else:
        (lhs, lhs_bound), (rhs, rhs_bound) = lhs_f(), rhs_f()

    exact_compare = isinstance(lhs, Fraction) and isinstance(rhs, Fraction)
    difference = lhs - rhs if exact_compare else complex(lhs) - complex(rhs)
    if isinstance(difference, complex) and difference.imag == 0:
        difference = difference.real
    if exact_compare:
        equal = lhs == rhs
        threshold = 0.0
    else:
        threshold = lhs_bound + rhs_bound + cfg.tolerance
        equal = abs(difference) <= threshold
    return {
        "results": {
            "identity": identity,
            "lhs": value_to_json(lhs),
            "rhs": value_to_json(rhs),
            "difference": value_to_json(difference),
            "comparison": "exact" if exact_compare else "tolerance",
            "threshold": threshold,
            "equal": bool(equal),
        },
        "verified": bool(equal),
    }


_RUNNERS = {
    "eval-mzv": _run_eval_mzv,
    "eval-schur": _run_eval_schur,
    "eval-rootzeta": _run_eval_rootzeta,
    "expand": _run_expand,
    "verify": _run_verify,
}


def run(spec: JobSpec) -> tuple[int, dict]:
    """Execute one job; returns (exit_code, report)."""
    started = time.perf_counter()
    report = {"schema": SCHEMA_VERSION, "command": spec.command, "inputs": spec.to_json()}
    try:
        outcome = _RUNNERS[spec.command](spec)
    except (UsageError, ConvergenceError, ValueError, KeyError) as err:
        report["status"] = "error"
        report["error"] = str(err)
        report["wall_time_s"] = time.perf_counter() - started
        return 1, report
    report.update(outcome)
    verified = outcome.get("verified", True)
    report["status"] = "ok" if verified else "verification-failed"
    report["wall_time_s"] = time.perf_counter() - started
    return (0 if verified else 2), report


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage problems, not argparse's 2
        raise UsageError(message)


def _add_common(parser: _Parser):
    parser.add_argument("--M", type=int, default=None, help="truncation bound")
    parser.add_argument("--mode", choices=["exact", "floating"], default=None)
    parser.add_argument("--exact", action="store_true", help="shorthand for --mode exact")
    parser.add_argument("--tolerance", type=float, default=None)
    parser.add_argument("--threads", type=int, default=None, help="worker threads (default 1)")
    parser.add_argument("--format", choices=["json", "plain", "latex"], default=None)


def _content_flags(parser: _Parser):
    parser.add_argument("--content", default=None, help="content values, e.g. '0=3,1=2,-1=2'")
    for k in range(0, 7):
        parser.add_argument(f"--z{k}", default=None, help=argparse.SUPPRESS)
    for k in range(1, 7):
        parser.add_argument(f"--zm{k}", default=None, help=argparse.SUPPRESS)


def _collect_content(ns) -> dict | None:
    content = _parse_content(ns.content) if ns.content else {}
    for k in range(0, 7):
        v = getattr(ns, f"z{k}", None)
        if v is not None:
            content[k] = _parse_number(v)
    for k in range(1, 7):
        v = getattr(ns, f"zm{k}", None)
        if v is not None:
            content[-k] = _parse_number(v)
    return content or None


def build_parser() -> _Parser:
    parser = _Parser(prog="schurzeta", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-mzv", help="Euler-Zagier multiple zeta (or star) value")
    p.add_argument("--args", required=True, help="comma-separated exponents, e.g. 2,3")
    p.add_argument("--star", action="store_true")
    _add_common(p)

    p = sub.add_parser("eval-schur", help="Schur multiple zeta value by tableau summation")
    p.add_argument("--shape", required=True, help="outer partition, e.g. 2,2")
    p.add_argument("--inner", default=None, help="inner partition for skew shapes")
    _content_flags(p)
    _add_common(p)

    p = sub.add_parser("eval-rootzeta", help="type-A root-system zeta and variants")
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--svars", default=None, help="all variables in canonical root order")
    p.add_argument("--first-row", dest="first_row", default=None, help="first-row-only variables")
    p.add_argument("--variant", choices=["plain", "bullet", "H", "bulletH"], default="plain")
    p.add_argument("--d", type=int, default=None, help="number of zero-based indices")
    p.add_argument("--x", default=None, help="positive shift")
    _add_common(p)

    p = sub.add_parser("expand", help="formal expansion of an identity's right-hand side")
    p.add_argument("target", choices=["hook1", "hook2", "giambelli"])
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--shape", default=None)
    p.add_argument("--reversed", dest="reversed_", action="store_true",
                   help="swap the roles of zeta and zeta-star")
    p.add_argument("--collected", action="store_true", help="normalize (collect like terms)")
    _add_common(p)

    p = sub.add_parser("verify", help="check one identity numerically or exactly")
    p.add_argument("identity", choices=list(VERIFY_IDENTITIES))
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--shape", default=None)
    p.add_argument("--bottom", default=None, help="bottom-row values for antihook")
    p.add_argument("--column", default=None, help="right-column values for antihook")
    _content_flags(p)
    _add_common(p)

    p = sub.add_parser("job", help="run a JSON job specification")
    p.add_argument("file", help="path to a JSON job file, or - for stdin")

    return parser


def _spec_from_namespace(ns) -> JobSpec:
    cfg = TruncationConfig(
        M=ns.M if ns.M is not None else _env("M", DEFAULTS["M"], int),
        mode=(
            "exact"
            if getattr(ns, "exact", False)
            else ns.mode if ns.mode is not None else _env("MODE", DEFAULTS["mode"], str)
        ),
        tolerance=(
            ns.tolerance if ns.tolerance is not None else _env("TOLERANCE", DEFAULTS["tolerance"], float)
        ),
    )
    output = ns.format if ns.format is not None else _env("FORMAT", DEFAULTS["format"], str)
    threads = ns.threads if ns.threads is not None else _env("THREADS", DEFAULTS["threads"], int)
    params: dict = {}
    if ns.command == "eval-mzv":
        params = {"args": _parse_number_list(ns.args), "star": ns.star}
    elif ns.command == "eval-schur":
        params = {"shape": ns.shape, "inner": ns.inner, "content": _collect_content(ns)}
    elif ns.command == "eval-rootzeta":
        params = {
            "rank": ns.rank,
            "variant": ns.variant,
            "svars": _parse_number_list(ns.svars) if ns.svars else None,
            "first_row": _parse_number_list(ns.first_row) if ns.first_row else None,
            "d": ns.d,
            "x": ns.x,
        }
    elif ns.command == "expand":
        params = {
            "target": ns.target,
            "p": ns.p,
            "q": ns.q,
            "shape": ns.shape,
            "variant": "reversed" if ns.reversed_ else "standard",
            "collected": ns.collected,
        }
    elif ns.command == "verify":
        params = {
            "identity": ns.identity,
            "p": ns.p,
            "q": ns.q,
            "shape": ns.shape,
            "content": _collect_content(ns),
            "bottom": _parse_number_list(ns.bottom) if ns.bottom else None,
            "column": _parse_number_list(ns.column) if ns.column else None,
        }
    params = {k: v for k, v in params.items() if v is not None}
    return JobSpec(ns.command, params, cfg, output, threads)


def _render(report: dict, output: str) -> str:
    if output == "latex" and "results" in report and "latex" in report.get("results", {}):
        return report["results"]["latex"]
    if output == "plain":
        lines = [f"command: {report['command']}", f"status: {report['status']}"]
        if "error" in report:
            lines.append(f"error: {report['error']}")
        for k, v in sorted(report.get("results", {}).items()):
            if k == "terms":
                continue
            lines.append(f"{k}: {v}")
        lines.append(f"wall_time_s: {report['wall_time_s']:.6f}")
        return "\n".join(lines)
    return json.dumps(report, indent=2, sort_keys=True)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command == "job":
            text = sys.stdin.read() if ns.file == "-" else open(ns.file).read()
            try:
                data = json.loads(text)
            except json.JSONDecodeError as err:
                raise UsageError(f"malformed JSON job: {err}") from None
            spec = JobSpec.from_json(data)
        else:
            spec = _spec_from_namespace(ns)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    code, report = run(spec)
    print(_render(report, spec.output))
    return code


if __name__ == "__main__":
    sys.exit(main())
