"""Sign tests for complete/absolute monotonicity and the verdict pipelines.

A table entry ``q`` with error estimate ``e`` is judged against the sign
tolerance ``tol``:

* ``q >= -tol``                    fine
* ``-(tol + e) <= q < -tol``       violation inside the band (inconclusive)
* ``q < -(tol + e)``               violation beyond the band (fail)

Points whose error estimate exceeds both ``tol`` and ``|q|`` are counted as
unresolved: their sign is not certified either way.
"""

from __future__ import annotations

import dataclasses
import enum
import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .func_model import CandidateFunction, DecayClass, ScreenResult, classify_decay, hermitian_screen, is_real_even
from .quadrature import QuadratureConfig
from .transforms import ImaginaryAxisGrid, a_f_from_measure, TransformKind, TransformTable, build_table

TOL_SIGN = 1e-7


class NotApplicable(Exception):
    """The requested criterion does not apply to this function."""


class Decision(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Warning_:
    code: str
    message: str

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message}


@dataclass(frozen=True)
class MonotonicityReport:
    kind: str  # "complete" | "absolute"
    per_order_min: tuple[float, ...]
    worst_violation: tuple[int, float, float]  # (order, y, value)
    imag_max: float
    tol: float
    beyond_band: int = 0
    within_band: int = 0
    unresolved: int = 0
    nonreal_beyond: int = 0
    nonreal_within: int = 0
    worst_nonreal: tuple[int, float, float] | None = None
    # violation with the largest margin beyond its error band, if any
    worst_certified: tuple[int, float, float] | None = None

    @property
    def passed(self) -> bool:
        return self.worst_violation[2] >= -self.tol and self.imag_max <= self.tol

    @property
    def status(self) -> str:
        if self.beyond_band or self.nonreal_beyond:
            return "fail"
        if self.within_band or self.nonreal_within or self.unresolved:
            return "inconclusive"
        return "pass"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "per_order_min": list(self.per_order_min),
            "worst_violation": {"order": self.worst_violation[0], "y": self.worst_violation[1], "value": self.worst_violation[2]},
            "imag_max": self.imag_max,
            "tol": self.tol,
            "beyond_band": self.beyond_band,
            "within_band": self.within_band,
            "unresolved": self.unresolved,
            "nonreal_beyond": self.nonreal_beyond,
            "nonreal_within": self.nonreal_within,
            "worst_nonreal": None if self.worst_nonreal is None else list(self.worst_nonreal),
            "worst_certified": None if self.worst_certified is None else list(self.worst_certified),
            "passed": self.passed,
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MonotonicityReport":
        wv = d["worst_violation"]
        return cls(
            d["kind"],
            tuple(d["per_order_min"]),
            (wv["order"], wv["y"], wv["value"]),
            d["imag_max"],
            d["tol"],
            d["beyond_band"],
            d["within_band"],
            d["unresolved"],
            d["nonreal_beyond"],
            d["nonreal_within"],
            None if d["worst_nonreal"] is None else tuple(d["worst_nonreal"]),
            None if d.get("worst_certified") is None else tuple(d["worst_certified"]),
        )


def _judge(kind: str, g: np.ndarray, errors: np.ndarray, grid: np.ndarray, signs: np.ndarray, tol: float) -> MonotonicityReport:
    q = signs[:, None] * g.real
    imag = np.abs(g.imag)
    per_order_min = q.min(axis=1)
    n, j = np.unravel_index(np.argmin(q), q.shape)
    beyond = q < -(tol + errors)
    within = (q < -tol) & ~beyond
    unresolved = (errors > tol) & (errors >= np.abs(q)) & ~(q < -tol)
    nr_beyond = imag > tol + errors
    nr_within = (imag > tol) & ~nr_beyond
    worst_nonreal = None
    if imag.size and imag.max() > tol:
        ni, nj = np.unravel_index(np.argmax(imag), imag.shape)
        worst_nonreal = (int(ni), float(grid[nj]), float(imag[ni, nj]))
    worst_certified = None
    if beyond.any():
        margin = np.where(beyond, -q - (tol + errors), -np.inf)
        ci, cj = np.unravel_index(np.argmax(margin), margin.shape)
        worst_certified = (int(ci), float(grid[cj]), float(q[ci, cj]))
    return MonotonicityReport(
        kind=kind,
        per_order_min=tuple(float(v) for v in per_order_min),
        worst_violation=(int(n), float(grid[j]), float(q[n, j])),
        imag_max=float(imag.max()),
        tol=tol,
        beyond_band=int(beyond.sum()),
        within_band=int(within.sum()),
        unresolved=int(unresolved.sum()),
        nonreal_beyond=int(nr_beyond.sum()),
        nonreal_within=int(nr_within.sum()),
        worst_nonreal=worst_nonreal,
        worst_certified=worst_certified,
    )


def check_complete_monotone(table: TransformTable, offset: float = 0.0, tol: float = TOL_SIGN) -> MonotonicityReport:
    """Signs of ``(-1)^n g^(n)(y)`` for ``g = offset + table`` on ``y > 0``."""
    if table.side != "upper":
        raise ValueError("complete monotonicity is tested on the upper side (y > 0)")
    g = table.values.copy()
    g[0] = g[0] + offset
    signs = (-1.0) ** np.arange(table.max_order + 1)
    return _judge("complete", g, table.errors, table.grid, signs, tol)


def check_absolute_monotone(table: TransformTable, offset: float = 0.0, tol: float = TOL_SIGN) -> MonotonicityReport:
    """Signs of ``g^(n)(y)`` for ``g = -(offset + table)`` on ``y < 0``."""
    if table.side != "lower":
        raise ValueError("absolute monotonicity is tested on the lower side (y < 0)")
    g = -table.values
    g[0] = g[0] - offset
    signs = np.ones(table.max_order + 1)
    return _judge("absolute", g, table.errors, table.grid, signs, tol)


@dataclass(frozen=True)
class AfInterval:
    """Range of constants compatible with the order-0 sign conditions."""

    lower: float
    upper: float
    feasible: bool
    lower_error: float = 0.0
    upper_error: float = 0.0

    def choose(self) -> float:
        """Midpoint when bounded, otherwise the finite end moved inward by 1."""
        lo, hi = self.lower, self.upper
        if math.isfinite(lo) and math.isfinite(hi):
            return 0.5 * (lo + hi)
        if math.isfinite(lo):
            return lo + 1.0
        if math.isfinite(hi):
            return hi - 1.0
        return 0.0

    def contains(self, a: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= a <= self.upper + tol

    def to_dict(self) -> dict:
        def enc(v):
            return v if math.isfinite(v) else None

        return {
            "lower": enc(self.lower),
            "upper": enc(self.upper),
            "feasible": self.feasible,
            "lower_error": self.lower_error,
            "upper_error": self.upper_error,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AfInterval":
        lo = -math.inf if d["lower"] is None else d["lower"]
        hi = math.inf if d["upper"] is None else d["upper"]
        return cls(lo, hi, d["feasible"], d["lower_error"], d["upper_error"])


def solve_af_interval(upper_table: TransformTable, lower_table: TransformTable, tol: float = TOL_SIGN) -> AfInterval:
    """``max_{y>0} -Re K(iy) <= a <= min_{y<0} -Re K(iy)`` over the grids.

    Adding a constant only moves order 0, so orders >= 1 never constrain it.
    """
    if upper_table.side != "upper" or lower_table.side != "lower":
        raise ValueError("need an upper-side and a lower-side table")
    up0 = -upper_table.values[0].real
    lo0 = -lower_table.values[0].real
    i = int(np.argmax(up0)) if up0.size else None
    j = int(np.argmin(lo0)) if lo0.size else None
    lower = float(up0[i]) if i is not None else -math.inf
    upper = float(lo0[j]) if j is not None else math.inf
    lower_err = float(upper_table.errors[0, i]) if i is not None else 0.0
    upper_err = float(lower_table.errors[0, j]) if j is not None else 0.0
    return AfInterval(lower, upper, lower <= upper + tol, lower_err, upper_err)


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerdictConfig:
    grid: ImaginaryAxisGrid = ImaginaryAxisGrid()
    max_order: int = 10
    quad: QuadratureConfig = QuadratureConfig()
    tol_sign: float = TOL_SIGN
    method: str = "auto"
    workers: int = 1

    def __post_init__(self):
        if self.max_order < 0:
            raise ValueError("max_order must be >= 0")
        if not self.tol_sign > 0:
            raise ValueError("tol_sign must be positive")

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d.pop("workers")  # does not affect results
        return d

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_dict(), sort_keys=True).encode()).hexdigest()[:16]


@dataclass(eq=False)
class Verdict:
    decision: Decision
    theorem_path: str
    evidence: dict
    config_digest: str
    warnings: list[Warning_] = field(default_factory=list)
    tables: dict[str, TransformTable] = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        return {
            "decision": self.decision.value,
            "theorem_path": self.theorem_path,
            "evidence": self.evidence,
            "config_digest": self.config_digest,
            "warnings": [w.to_dict() for w in self.warnings],
        }


def _table_warnings(tables: dict[str, TransformTable]) -> list[Warning_]:
    out = []
    codes = {"budget_exceeded": "BUDGET_EXCEEDED", "truncation": "TRUNCATION", "unknown_decay": "UNKNOWN_DECAY", "tolerance_not_met": "TOLERANCE_NOT_MET"}
    for name, t in tables.items():
        for w in t.warnings:
            out.append(Warning_(codes.get(w, w.upper()), f"{name} table ({t.method}): {w}"))
    return out


def _decide(reports: dict[str, MonotonicityReport], interval: AfInterval | None, tol: float, warnings: list[Warning_]) -> Decision:
    fail = any(w.code == "SCREEN_FAILED" for w in warnings)
    inconclusive = False
    for name, r in reports.items():
        if r.status == "fail":
            fail = True
            if r.beyond_band:
                o, y, v = r.worst_certified
                warnings.append(Warning_("VIOLATION", f"{name}: {r.kind} monotonicity violated at order {o}, y={y:.6g} (value {v:.6g})"))
            if r.nonreal_beyond:
                warnings.append(Warning_("NONREAL", f"{name}: transform has an imaginary part beyond tolerance at {r.worst_nonreal}"))
        elif r.status == "inconclusive":
            inconclusive = True
            if r.within_band or r.nonreal_within:
                warnings.append(Warning_("WITHIN_BAND", f"{name}: {r.within_band + r.nonreal_within} sign violations inside the error band"))
            if r.unresolved:
                warnings.append(Warning_("UNRESOLVED", f"{name}: {r.unresolved} grid entries have error estimates larger than their value"))
    if interval is not None and not interval.feasible:
        gap = interval.lower - interval.upper
        if gap > tol + interval.lower_error + interval.upper_error:
            fail = True
            warnings.append(Warning_("AF_INFEASIBLE", f"no constant satisfies both order-0 conditions (gap {gap:.6g})"))
        else:
            inconclusive = True
            warnings.append(Warning_("WITHIN_BAND", f"a_f interval empty only within error band (gap {gap:.6g})"))
    if fail:
        return Decision.FAIL
    if inconclusive or any(w.code == "UNKNOWN_DECAY" for w in warnings):
        return Decision.INCONCLUSIVE
    return Decision.PASS


def _screen(f: CandidateFunction, warnings: list[Warning_], advisory: bool = False) -> ScreenResult:
    screen = hermitian_screen(f)
    if not screen.passed:
        code = "SCREEN_IGNORED" if advisory else "SCREEN_FAILED"
        warnings.append(Warning_(code, "necessary conditions failed: " + ", ".join(screen.failures)))
    return screen


def _tables(f, kind, sides, cfg: VerdictConfig) -> dict[str, TransformTable]:
    return {
        side: build_table(f, kind, side, cfg.grid, cfg.max_order, cfg.quad, cfg.method, cfg.workers) for side in sides
    }


def _finish(path, f, kind, offset_fn, cfg, warnings, screen, drop=()):
    """Build tables, run the sign checks and assemble the verdict."""
    sides = ("upper",) if kind is TransformKind.POISSON else ("upper", "lower")
    tables = _tables(f, kind, sides, cfg)
    interval = solve_af_interval(tables["upper"], tables["lower"], cfg.tol_sign) if offset_fn else None
    offset = interval.choose() if interval is not None else 0.0
    reports = {"upper": check_complete_monotone(tables["upper"], offset, cfg.tol_sign)}
    if "lower" in tables:
        reports["lower"] = check_absolute_monotone(tables["lower"], offset, cfg.tol_sign)
    warnings += [w for w in _table_warnings(tables) if w.code not in drop]
    decision = _decide(reports, interval, cfg.tol_sign, warnings)
    evidence = {"screen": screen.to_dict()}
    if interval is not None:
        evidence["af_interval"] = interval.to_dict()
        evidence["offset"] = offset
    evidence["reports"] = {k: r.to_dict() for k, r in reports.items()}
    if interval is not None and f.spectrum is not None:
        # same tables judged with the constant computed from the known spectrum
        a_m = a_f_from_measure(f.spectrum)
        evidence["measure_af"] = {
            "value": a_m,
            "in_interval": interval.contains(a_m, cfg.tol_sign),
            "reports": {
                "upper": check_complete_monotone(tables["upper"], a_m, cfg.tol_sign).to_dict(),
                "lower": check_absolute_monotone(tables["lower"], a_m, cfg.tol_sign).to_dict(),
            },
        }
    evidence["methods"] = {k: t.method for k, t in tables.items()}
    return Verdict(decision, path, evidence, cfg.digest(), warnings, tables)


def verdict_theorem2(f: CandidateFunction, cfg: VerdictConfig = VerdictConfig()) -> Verdict:
    """Decide via the modified Cauchy transform and a feasible constant ``a_f``.

    ``a_f + K(iy)`` must be completely monotone on ``y > 0`` and
    ``-(a_f + K(iy))`` absolutely monotone on ``y < 0``.  A failed screen
    already makes the verdict FAIL; the tables are still built so the report
    shows where the sign conditions break.
    """
    warnings: list[Warning_] = []
    screen = _screen(f, warnings)
    return _finish("T2", f, TransformKind.MODIFIED, True, cfg, warnings, screen)


def verdict_theorem3(f: CandidateFunction, cfg: VerdictConfig = VerdictConfig()) -> Verdict:
    """Decide via the plain Cauchy transform; needs the integrability condition."""
    decay = classify_decay(f)
    if decay is DecayClass.NOT_INTEGRABLE:
        raise NotApplicable("the plain Cauchy transform criterion needs ∫|f|/(1+|t|) < ∞; use the modified transform")
    warnings: list[Warning_] = []
    if decay is DecayClass.UNKNOWN:
        warnings.append(Warning_("UNKNOWN_DECAY", "integrability of f could not be established; order-0 values are best effort"))
    screen = _screen(f, warnings)
    return _finish("T3", f, TransformKind.CAUCHY, False, cfg, warnings, screen, drop=("UNKNOWN_DECAY",))


def verdict_theorem1(f: CandidateFunction, cfg: VerdictConfig = VerdictConfig(), strict: bool = True) -> Verdict:
    """Complete monotonicity of ``y -> u_f(0, y)``, valid for real even ``f`` only.

    With ``strict=False`` the test also runs on other functions.  The verdict
    then reflects the Poisson test alone and carries a ``NOT_APPLICABLE``
    warning: ``u_f(0, y)`` only sees the symmetrised spectrum, so it cannot
    detect asymmetric negative mass.  Screen failures are reported but do
    not decide in that mode.
    """
    warnings: list[Warning_] = []
    applicable = is_real_even(f)
    if not applicable:
        if strict:
            raise NotApplicable("the Poisson-extension criterion only applies to real, even functions")
        warnings.append(
            Warning_("NOT_APPLICABLE", "f is not real and even; the Poisson-extension test is blind to its odd spectral part, use T2")
        )
    screen = _screen(f, warnings, advisory=not applicable)
    return _finish("T1", f, TransformKind.POISSON, False, cfg, warnings, screen)
