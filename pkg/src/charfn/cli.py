"""``charfn`` command line: ``check`` decides one function, ``validate`` self-tests.

Exit codes: 0 PASS, 1 FAIL, 2 INCONCLUSIVE, 3 bad input, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field

from . import __version__, catalog
from .func_model import CandidateFunction, DecayClass, classify_decay, char_function_from_measure, load_measure, load_samples
from .monotonicity import (
    TOL_SIGN,
    Decision,
    NotApplicable,
    Verdict,
    VerdictConfig,
    Warning_,
    verdict_theorem1,
    verdict_theorem2,
    verdict_theorem3,
)
from .oracle import GramSpec, bochner_test, validate_kernel_ft
from .quadrature import QuadratureConfig
from .transforms import ImaginaryAxisGrid, TransformKind, derivative_consistency, poisson_cauchy_identity_check

SCHEMA = "charfn.report/1"
EXIT = {Decision.PASS: 0, Decision.FAIL: 1, Decision.INCONCLUSIVE: 2}
EXIT_INPUT = 3
EXIT_INTERNAL = 4

KERNEL_FT_THRESHOLD = 1e-6
IDENTITY_THRESHOLD = 1e-8
IDENTITY_PAIRS = ((0.0, 0.5), (0.3, 1.0), (-1.0, 0.2), (2.0, 2.0), (-0.7, 5.0))
IDENTITY_CATALOG = ("gaussian", "laplace-distribution", "cauchy-distribution")

log = logging.getLogger("charfn")


class InputError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    theorem_path: str = "auto"
    y_min: float = 1e-2
    y_max: float = 1e2
    points_per_side: int = 64
    max_order: int = 10
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    tol_sign: float = TOL_SIGN
    seed: int | None = None
    output_format: str = "json"
    workers: int = field(default=1, compare=False)

    def __post_init__(self):
        if self.theorem_path not in ("auto", "t1", "t2", "t3"):
            raise ValueError("theorem_path must be auto, t1, t2 or t3")
        if self.output_format not in ("json", "text"):
            raise ValueError("format must be json or text")

    def verdict_config(self) -> VerdictConfig:
        return VerdictConfig(
            grid=ImaginaryAxisGrid(self.y_min, self.y_max, self.points_per_side),
            max_order=self.max_order,
            quad=QuadratureConfig(abs_tol=self.abs_tol, rel_tol=self.rel_tol),
            tol_sign=self.tol_sign,
            workers=self.workers,
        )

    def gram_spec(self) -> GramSpec:
        return GramSpec.default(self.seed)

    def to_dict(self) -> dict:
        return {
            "theorem_path": self.theorem_path,
            "y_min": self.y_min,
            "y_max": self.y_max,
            "points_per_side": self.points_per_side,
            "max_order": self.max_order,
            "abs_tol": self.abs_tol,
            "rel_tol": self.rel_tol,
            "tol_sign": self.tol_sign,
            "seed": self.seed,
        }


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------


def parse_params(items: list[str] | None) -> dict[str, float]:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise InputError("PARSE_ERROR", f"--param expects key=value, got {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise InputError("PARSE_ERROR", f"--param {key}: {value!r} is not a number") from None
    return out


def load_function(args) -> CandidateFunction:
    given = [s for s in (args.catalog, args.measure, args.samples) if s]
    if len(given) != 1:
        raise InputError("PARSE_ERROR", "give exactly one of --catalog, --measure, --samples")
    try:
        if args.catalog:
            return catalog.build(args.catalog, parse_params(args.param))
        if args.param:
            raise InputError("PARSE_ERROR", "--param only applies to --catalog")
        if args.measure:
            return char_function_from_measure(load_measure(args.measure), label=os.path.basename(args.measure))
        return load_samples(args.samples, tail=args.tail)
    except InputError:
        raise
    except catalog.UnknownCatalogEntry as exc:
        raise InputError("UNKNOWN_CATALOG", exc.args[0]) from None
    except FileNotFoundError as exc:
        raise InputError("FILE_NOT_FOUND", str(exc)) from None
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError("PARSE_ERROR", str(exc)) from None


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def select_path(f: CandidateFunction, requested: str) -> str:
    if requested != "auto":
        return requested
    return "t3" if classify_decay(f) is DecayClass.INTEGRABLE else "t2"


def run_verdict(f: CandidateFunction, path: str, vcfg: VerdictConfig) -> tuple[Verdict, list[Warning_]]:
    extra: list[Warning_] = []
    if path == "t3":
        try:
            return verdict_theorem3(f, vcfg), extra
        except NotApplicable as exc:
            extra.append(Warning_("FALLBACK_T2", f"T3 not applicable ({exc}); using T2"))
            path = "t2"
    if path == "t1":
        return verdict_theorem1(f, vcfg, strict=False), extra
    return verdict_theorem2(f, vcfg), extra


def _identity_block(f: CandidateFunction) -> list[dict]:
    if classify_decay(f) is not DecayClass.INTEGRABLE:
        return []
    return [poisson_cauchy_identity_check(f, x, y).to_dict() for x, y in IDENTITY_PAIRS[:3]]


def run(f: CandidateFunction, cfg: RunConfig) -> tuple[dict, int]:
    """Screen, verdict and oracle cross-check for one function."""
    t0 = time.perf_counter()
    vcfg = cfg.verdict_config()
    path = select_path(f, cfg.theorem_path)
    verdict, warnings = run_verdict(f, path, vcfg)
    t1 = time.perf_counter()

    gram = cfg.gram_spec()
    oracle = bochner_test(f, gram)
    decision = verdict.decision
    agrees = None
    if decision is not Decision.INCONCLUSIVE:
        agrees = (decision is Decision.PASS) == oracle.passed
    warnings = warnings + list(verdict.warnings)
    if oracle.flagged:
        warnings.append(Warning_("GRAM_NOT_HERMITIAN", f"Gram matrix symmetrised (defect {oracle.hermitian_defect:.3g})"))
    if agrees is False:
        warnings.append(
            Warning_("ORACLE_DISAGREES", f"Gram oracle min eigenvalue {oracle.min_eigenvalue:.6g} vs verdict {decision.value}")
        )
        if decision is Decision.PASS and not any(w.code == "NOT_APPLICABLE" for w in warnings):
            # a negative eigenvalue refutes positive definiteness outright
            decision = Decision.INCONCLUSIVE
    t2 = time.perf_counter()
    identity = _identity_block(f)
    t3 = time.perf_counter()

    reports = verdict.evidence.get("reports", {})
    report = {
        "schema": SCHEMA,
        "command": "check",
        "version": __version__,
        "function": f.describe(),
        "verdict": decision.value,
        "theorem_path": verdict.theorem_path,
        "theorem_requested": cfg.theorem_path,
        "af_interval": verdict.evidence.get("af_interval"),
        "per_order_min": {side: r["per_order_min"] for side, r in reports.items()},
        "evidence": verdict.evidence,
        "oracle": {
            "min_eigenvalue": oracle.min_eigenvalue,
            "passed": oracle.passed,
            "points": gram.n,
            "psd_tol": gram.tol,
            "agrees": agrees,
        },
        "identity_checks": identity,
        "warnings": [w.to_dict() for w in warnings],
        "config": cfg.to_dict(),
        "config_digest": verdict.config_digest,
        "timing": {"verdict_s": t1 - t0, "oracle_s": t2 - t1, "identity_s": t3 - t2, "total_s": t3 - t0},
    }
    return normalize(report), EXIT[decision]


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def validate(cfg: RunConfig) -> tuple[dict, int]:
    """Self-test battery: kernel transforms, Poisson/Cauchy identity, derivative columns."""
    t0 = time.perf_counter()
    ft_dev, ft_checks = validate_kernel_ft()
    identity = []
    for name in IDENTITY_CATALOG:
        f = catalog.build(name)
        for x, y in IDENTITY_PAIRS:
            d = poisson_cauchy_identity_check(f, x, y).to_dict()
            d["function"] = name
            identity.append(d)
    id_dev = max(d["deviation"] for d in identity)

    deriv = []
    ys_count = max(4, min(cfg.points_per_side, 8))
    grid = ImaginaryAxisGrid(cfg.y_min, cfg.y_max, ys_count)
    if cfg.max_order >= 1:
        f = catalog.build("gaussian")
        for kind in TransformKind:
            for side in ("upper",) if kind is TransformKind.POISSON else ("upper", "lower"):
                for method in ("spectral", "quadrature"):
                    d = derivative_consistency(f, kind, side, grid.points(side), cfg.max_order, method=method).to_dict()
                    d["function"] = "gaussian"
                    deriv.append(d)
    warnings = [Warning_("KERNEL_FT_QUAD", f"y={c.y}, x={c.x}: {w}") for c in ft_checks for w in c.warnings]
    ok_ft = ft_dev <= KERNEL_FT_THRESHOLD
    ok_id = id_dev <= IDENTITY_THRESHOLD
    ok_der = all(d["passed"] for d in deriv)
    for ok, code, msg in (
        (ok_ft, "KERNEL_FT_DEVIATION", f"max kernel transform deviation {ft_dev:.3g} > {KERNEL_FT_THRESHOLD:g}"),
        (ok_id, "IDENTITY_DEVIATION", f"max identity deviation {id_dev:.3g} > {IDENTITY_THRESHOLD:g}"),
        (ok_der, "DERIVATIVE_MISMATCH", "finite differences disagree with derivative columns"),
    ):
        if not ok:
            warnings.append(Warning_(code, msg))
    passed = ok_ft and ok_id and ok_der
    report = {
        "schema": SCHEMA,
        "command": "validate",
        "version": __version__,
        "verdict": "PASS" if passed else "FAIL",
        "kernel_ft": {"max_deviation": ft_dev, "threshold": KERNEL_FT_THRESHOLD, "checks": [c.to_dict() for c in ft_checks]},
        "identity_checks": {"max_deviation": id_dev, "threshold": IDENTITY_THRESHOLD, "checks": identity},
        "derivative_checks": deriv,
        "warnings": [w.to_dict() for w in warnings],
        "config": cfg.to_dict(),
        "timing": {"total_s": time.perf_counter() - t0},
    }
    return normalize(report), 0 if passed else 1


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def normalize(report: dict) -> dict:
    """Plain JSON types only, so that a dump/load round trip is the identity."""
    return json.loads(json.dumps(report, allow_nan=False))


def without_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def error_report(command: str, code: str, message: str) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "version": __version__,
        "verdict": "ERROR",
        "warnings": [{"code": code, "message": message}],
    }


def render_text(report: dict) -> str:
    lines = [f"verdict: {report['verdict']}"]
    if report["command"] == "check" and report["verdict"] != "ERROR":
        fn = report["function"]
        lines.append(f"function: {fn.get('label') or fn.get('name') or fn['kind']} ({fn['decay_class']})")
        lines.append(f"path: {report['theorem_path']} (requested {report['theorem_requested']})")
        if report["af_interval"]:
            iv = report["af_interval"]
            lines.append(f"a_f interval: [{iv['lower']}, {iv['upper']}] feasible={iv['feasible']}")
        for side, mins in report["per_order_min"].items():
            lines.append(f"{side:5s} minima: " + " ".join(f"{v:.3g}" for v in mins))
        o = report["oracle"]
        lines.append(f"gram oracle: min eigenvalue {o['min_eigenvalue']:.3g} on {o['points']} points (agrees: {o['agrees']})")
    elif report["command"] == "validate":
        lines.append(f"kernel FT max deviation: {report['kernel_ft']['max_deviation']:.3g}")
        lines.append(f"identity max deviation: {report['identity_checks']['max_deviation']:.3g}")
        bad = sum(not d["passed"] for d in report["derivative_checks"])
        lines.append(f"derivative checks: {len(report['derivative_checks']) - bad}/{len(report['derivative_checks'])} consistent")
    for w in report["warnings"]:
        lines.append(f"[{w['code']}] {w['message']}")
    return "\n".join(lines) + "\n"


def emit(report: dict, fmt: str, out: str | None) -> None:
    text = json.dumps(report, indent=2) + "\n" if fmt == "json" else render_text(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ymin", type=float, default=1e-2, help="smallest |y| of the grid")
    common.add_argument("--ymax", type=float, default=1e2, help="largest |y| of the grid")
    common.add_argument("--grid-points", type=int, default=64, help="grid points per half-plane")
    common.add_argument("--max-order", type=int, default=10, help="highest derivative order tested")
    common.add_argument("--tol-sign", type=float, default=TOL_SIGN, help="sign tolerance")
    common.add_argument("--abs-tol", type=float, default=1e-10, help="quadrature absolute tolerance")
    common.add_argument("--rel-tol", type=float, default=1e-8, help="quadrature relative tolerance")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, help="randomise the extra Gram points")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1, help="threads for table construction")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="charfn", description="Numerically test whether a function is a characteristic function.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    chk = sub.add_parser("check", parents=[common], help="decide one function")
    chk.add_argument("--catalog", help="catalog entry name (see `charfn list`)")
    chk.add_argument("--param", action="append", metavar="K=V", help="catalog parameter, repeatable")
    chk.add_argument("--measure", help="JSON spectral measure file")
    chk.add_argument("--samples", help="CSV file with columns t,re_f,im_f")
    chk.add_argument("--tail", choices=("zero", "hold"), default="zero", help="extension of samples beyond their range")
    chk.add_argument("--theorem", choices=("auto", "t1", "t2", "t3"), default="auto")
    sub.add_parser("validate", parents=[common], help="run the numerical self-tests")
    sub.add_parser("list", help="list catalog entries")
    return p


def config_from_args(args) -> RunConfig:
    return RunConfig(
        theorem_path=getattr(args, "theorem", "auto"),
        y_min=args.ymin,
        y_max=args.ymax,
        points_per_side=args.grid_points,
        max_order=args.max_order,
        abs_tol=args.abs_tol,
        rel_tol=args.rel_tol,
        tol_sign=args.tol_sign,
        seed=args.seed,
        output_format=args.format,
        workers=max(1, args.workers),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list":
        for name in sorted(catalog.CATALOG):
            spec = catalog.CATALOG[name]
            params = ", ".join(f"{k}={v:g}" for k, v in spec.defaults.items())
            print(f"{name:24s} {spec.summary}" + (f"  [{params}]" if params else ""))
        return 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    fmt = args.format
    try:
        try:
            cfg = config_from_args(args)
            cfg.verdict_config()
        except ValueError as exc:
            raise InputError("BAD_CONFIG", str(exc)) from None
        if args.command == "validate":
            report, code = validate(cfg)
        else:
            f = load_function(args)
            log.debug("loaded %s", f.describe())
            report, code = run(f, cfg)
    except InputError as exc:
        emit(error_report(args.command, exc.code, str(exc)), fmt, args.out)
        return EXIT_INPUT
    except Exception as exc:  # report instead of a traceback
        log.debug("internal error", exc_info=True)
        emit(error_report(args.command, "INTERNAL_ERROR", f"{type(exc).__name__}: {exc}"), fmt, args.out)
        return EXIT_INTERNAL
    emit(report, fmt, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
