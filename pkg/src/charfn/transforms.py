"""Poisson, Cauchy and modified Cauchy transforms on the imaginary axis.

Three evaluation routes are available and chosen automatically:

``spectral``
    For functions with a known spectral representation.  The transforms are
    linear in ``f`` and the Fourier transform of each kernel is explicit, so
    atoms are summed exactly and densities are integrated against
    non-oscillatory half-line kernels.
``interpolant``
    For sampled functions with zero tails.  The piecewise-linear interpolant is
    integrated exactly against the kernel (product integration).
``quadrature``
    For black-box callables: adaptive Gauss-Legendre on the tangent-mapped
    line, with all derivative orders integrated in one vector-valued pass.

All y-derivatives use the closed-form kernel derivatives, never numerical
differentiation.
"""

from __future__ import annotations

import dataclasses

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .func_model import (
    CandidateFunction,
    DecayClass,
    Density,
    Sampled,
    SpectralMeasure,
    classify_decay,
)
from .quadrature import EPS, ROUNDING_FACTOR, QuadratureConfig, integrate

# Tolerances for the non-oscillatory half-line integrals of the spectral route.
SPECTRAL_CFG = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-12, max_panels=20000)


class OnRealAxis(ValueError):
    """A transform was requested at ``y = 0``."""


class NotIntegrable(ValueError):
    """The plain Cauchy transform diverges for this ``f``; use the modified one."""


class TransformKind(str, enum.Enum):
    POISSON = "Poisson_u"
    CAUCHY = "Cauchy_k"
    MODIFIED = "ModifiedCauchy_K"


@dataclass(frozen=True)
class TransformValue:
    value: complex
    error: float
    method: str
    warnings: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# Closed-form kernel pieces
# ---------------------------------------------------------------------------


def kernel_derivative(n: int, y: float, t):
    """``d^n/dy^n (iy - t)^{-1} = (-i)^n n! (iy - t)^{-(n+1)}``."""
    if n < 0:
        raise ValueError("derivative order must be >= 0")
    if y == 0:
        raise OnRealAxis("kernel is singular on the real axis")
    return (-1j) ** n * math.factorial(n) * (1j * y - np.asarray(t, dtype=float)) ** (-(n + 1))


def sign(x):
    """Sign with ``sign(0) = 0``."""
    return np.sign(x)


def kernel_ft_closed_form(y: float, x):
    """Fourier transform ``∫ γ(iy; t) e^{ixt} dt`` of the modified Cauchy kernel.

    ``γ(iy; t) = (i/π)(1/(iy - t) + t/(t² + 1))``.  For ``y > 0`` this is
    ``2·1[x >= 0]·e^{-yx} - sign(x) e^{-|x|}`` and ``1`` at ``x = 0``; for
    ``y < 0`` it is ``-2·1[x <= 0]·e^{-yx} - sign(x) e^{-|x|}`` and ``-1`` at
    ``x = 0``.
    """
    if y == 0:
        raise OnRealAxis("kernel Fourier transform needs y != 0")
    x = np.asarray(x, dtype=float)
    tail = sign(x) * np.exp(-np.abs(x))
    with np.errstate(over="ignore"):
        if y > 0:
            main = np.where(x > 0, 2.0 * np.exp(-y * np.where(x > 0, x, 0.0)), 0.0)
            out = np.where(x == 0, 1.0, main - tail)
        else:
            main = np.where(x < 0, -2.0 * np.exp(-y * np.where(x < 0, x, 0.0)), 0.0)
            out = np.where(x == 0, -1.0, main - tail)
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=256)
def _density_af(d: Density) -> tuple[float, float]:
    """``∫ sign(x) e^{-|x|} p(x) dx`` for a unit density, with error."""
    lo, hi = d.support()

    def g(x):
        return (np.exp(-x) * (d.pdf(x) - d.pdf(-x)))[None, :]

    a, b = 0.0, max(abs(lo), abs(hi))
    if b == 0.0:
        return 0.0, 0.0
    brk = [abs(p) for p in d.features()]
    r = integrate(g, a, b, scale=1.0, breakpoints=brk, cfg=SPECTRAL_CFG)
    return float(r.value[0].real), float(r.error[0])


def a_f_from_measure(m: SpectralMeasure) -> float:
    """``a_f = ∫ sign(x) e^{-|x|} dm(x)``."""
    total = math.fsum(w * float(np.sign(x)) * math.exp(-abs(x)) for x, w in m.atoms)
    for d in m.densities:
        total += d.mass * _density_af(d)[0]
    return total


def _af_error(m: SpectralMeasure) -> float:
    return sum(abs(d.mass) * _density_af(d)[1] for d in m.densities)


# ---------------------------------------------------------------------------
# Spectral route
# ---------------------------------------------------------------------------


def _powers(base: np.ndarray, n_max: int) -> np.ndarray:
    """Rows ``base**0 .. base**n_max``."""
    out = np.empty((n_max + 1,) + base.shape, dtype=base.dtype)
    out[0] = 1.0
    for n in range(1, n_max + 1):
        out[n] = out[n - 1] * base
    return out


def _density_laplace_moments(d: Density, y: float, n_max: int, side: str) -> tuple[np.ndarray, np.ndarray]:
    """``∫ (-x)^n e^{-yx} p(x) dx`` over the half-line matching ``side``."""
    lo, hi = d.support()
    if side == "upper":
        a, b = max(lo, 0.0), hi
    else:
        a, b = lo, min(hi, 0.0)
    if not b > a:
        return np.zeros(n_max + 1), np.zeros(n_max + 1)

    def g(x):
        return _powers(-x, n_max) * (np.exp(-y * x) * d.pdf(x))[None, :]

    brk = list(d.features()) + [0.0]
    for s in (1.0, max(n_max, 1)):
        brk += [s / y]
    scale = min(max(1.0 / abs(y), 1e-3), 1e3)
    r = integrate(g, a, b, scale=scale, breakpoints=brk, cfg=SPECTRAL_CFG)
    return r.value.real, r.error


def _density_poisson_moments(d: Density, x0: float, y: float, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """``∫ e^{i x0 s} (-|s|)^n e^{-y|s|} p(s) ds``."""
    lo, hi = d.support()

    def g(s):
        return _powers(-np.abs(s), n_max).astype(complex) * (np.exp(1j * x0 * s - y * np.abs(s)) * d.pdf(s))[None, :]

    brk = list(d.features()) + [0.0, 1.0 / y, -1.0 / y, n_max / y, -n_max / y]
    scale = min(max(1.0 / y, 1e-3), 1e3)
    r = integrate(g, lo, hi, scale=scale, breakpoints=brk, cfg=SPECTRAL_CFG)
    return r.value, r.error


def _spectral_orders(m: SpectralMeasure, kind: TransformKind, x0: float, y: float, n_max: int):
    vals = np.zeros(n_max + 1, dtype=complex)
    errs = np.zeros(n_max + 1)
    xs = np.array([x for x, _ in m.atoms], dtype=float)
    ws = np.array([w for _, w in m.atoms], dtype=float)
    orders = np.arange(n_max + 1)

    if kind is TransformKind.POISSON:
        if xs.size:
            pw = _powers(-np.abs(xs), n_max)
            vals += (pw * (ws * np.exp(1j * x0 * xs - y * np.abs(xs)))[None, :]).sum(axis=1)
            errs += ROUNDING_FACTOR * EPS * (np.abs(pw) * np.abs(ws)[None, :]).sum(axis=1)
        for d in m.densities:
            v, e = _density_poisson_moments(d, x0, y, n_max)
            vals += d.mass * v
            errs += abs(d.mass) * e
        return vals, errs

    if x0 != 0.0:
        raise ValueError("spectral Cauchy transforms are only available on the imaginary axis")
    upper = y > 0
    sgn = 1.0 if upper else -1.0
    side_mask = xs > 0 if upper else xs < 0
    w0 = float(ws[xs == 0.0].sum()) if xs.size else 0.0
    if xs.size:
        xa, wa = xs[side_mask], ws[side_mask]
        with np.errstate(over="ignore"):
            pw = _powers(-xa, n_max) * (wa * np.exp(-y * xa))[None, :]
        vals += 2.0 * sgn * pw.sum(axis=1)
        errs += 2.0 * ROUNDING_FACTOR * EPS * np.abs(pw).sum(axis=1)
        vals[0] += sgn * w0
    for d in m.densities:
        v, e = _density_laplace_moments(d, y, n_max, "upper" if upper else "lower")
        vals += 2.0 * sgn * d.mass * v
        errs += 2.0 * abs(d.mass) * e
    if kind is TransformKind.MODIFIED:
        # K = k - a_f: the correction only shifts order 0
        vals[0] -= a_f_from_measure(m)
        errs[0] += _af_error(m)
    del orders
    return vals, errs


def modified_transform_from_measure(m: SpectralMeasure, y: float) -> complex:
    """``K_f(iy) = ∫ γ̂(iy; -x) dm(x)`` for the characteristic function of ``m``."""
    if y == 0:
        raise OnRealAxis("K_f is only defined off the real axis")
    vals, _ = _spectral_orders(m, TransformKind.MODIFIED, 0.0, float(y), 0)
    return complex(vals[0])


# ---------------------------------------------------------------------------
# Interpolant route: exact integration of a piecewise-linear, zero-tailed f
# ---------------------------------------------------------------------------


def _interp_moments(t: np.ndarray, v: np.ndarray, w: complex, m_max: int) -> tuple[np.ndarray, np.ndarray]:
    """``R_m = ∫ f(t) (t - w)^{-m} dt`` for ``m = 1..m_max`` and the rounding bound.

    With ``A1``, ``A2`` the first and second antiderivatives of the kernel,
    integrating by parts on every linear piece gives
    ``R = A1(t_M) f_M - A1(t_0) f_0 + Σ_k A2(t_k) (s_k - s_{k-1})``
    with slopes ``s`` (zero outside the sample range).
    """
    d = t.astype(complex) - w
    slopes = np.diff(v) / np.diff(t)
    jumps = np.diff(np.concatenate([[0.0], slopes, [0.0]]))
    logd = np.log(d)
    out = np.empty(m_max, dtype=complex)
    bound = np.empty(m_max)
    for m in range(1, m_max + 1):
        if m == 1:
            a1_ends = logd[[0, -1]]
            a2 = d * logd - d
        elif m == 2:
            a1_ends = -1.0 / d[[0, -1]]
            a2 = -logd
        else:
            a1_ends = d[[0, -1]] ** (1 - m) / (1 - m)
            a2 = d ** (2 - m) / ((1 - m) * (2 - m))
        terms_end = np.array([a1_ends[1] * v[-1], -a1_ends[0] * v[0]])
        terms = a2 * jumps
        out[m - 1] = terms_end.sum() + terms.sum()
        bound[m - 1] = ROUNDING_FACTOR * EPS * (np.abs(terms_end).sum() + np.abs(terms).sum())
    return out, bound


def _interpolant_orders(s: Sampled, kind: TransformKind, w: complex, n_max: int):
    t, v = s.t, s.values
    fact = np.array([math.factorial(n) for n in range(n_max + 1)], dtype=float)
    ipow = 1j ** np.arange(n_max + 1)
    if kind is TransformKind.POISSON:
        r, rb = _interp_moments(t, v, w, n_max + 1)
        rc, rcb = _interp_moments(t, v, np.conj(w), n_max + 1)
        vals = fact / (2j * math.pi) * (ipow * r - np.conj(ipow) * rc)
        errs = fact / (2 * math.pi) * (rb + rcb)
        return vals, errs
    r, rb = _interp_moments(t, v, w, n_max + 1)
    vals = -(ipow * 1j) / math.pi * fact * r
    errs = fact / math.pi * rb
    if kind is TransformKind.MODIFIED:
        rp, rpb = _interp_moments(t, v, 1j, 1)
        rm, rmb = _interp_moments(t, v, -1j, 1)
        vals[0] = 1j / math.pi * (-r[0] + 0.5 * (rp[0] + rm[0]))
        errs[0] = (rb[0] + 0.5 * (rpb[0] + rmb[0])) / math.pi
    return vals, errs


# ---------------------------------------------------------------------------
# Quadrature route
# ---------------------------------------------------------------------------


def _kernel_rows(kind: TransformKind, w: complex, n_max: int, t: np.ndarray) -> np.ndarray:
    d = t - w
    inv = 1.0 / d
    pw = _powers(inv, n_max + 1)[1:]  # (t-w)^{-(n+1)}
    fact = np.array([math.factorial(n) for n in range(n_max + 1)], dtype=float)[:, None]
    ipow = (1j ** np.arange(n_max + 1))[:, None]
    if kind is TransformKind.POISSON:
        return (fact / math.pi) * np.imag(ipow * pw)
    rows = -(1j * ipow / math.pi) * fact * pw
    if kind is TransformKind.MODIFIED:
        rows[0] = (1j / math.pi) * (-1.0 - t * w) / (d * (t * t + 1.0))
    return rows


def _quadrature_orders(f: CandidateFunction, kind: TransformKind, w: complex, n_max: int, cfg: QuadratureConfig):
    y = w.imag
    x0 = w.real

    def h(t):
        return _kernel_rows(kind, w, n_max, t) * f(t)[None, :]

    brk = set(f.breakpoints) | {x0, x0 - abs(y), x0 + abs(y), -1.0, 1.0, 0.0}
    r = integrate(h, -math.inf, math.inf, center=x0, scale=abs(y), breakpoints=sorted(brk), cfg=cfg)
    return r.value, r.error, tuple(r.warnings)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def choose_method(f: CandidateFunction, kind: TransformKind, x0: float = 0.0) -> str:
    if f.spectrum is not None and (kind is TransformKind.POISSON or x0 == 0.0):
        return "spectral"
    if isinstance(f.source, Sampled) and f.source.tail == "zero":
        return "interpolant"
    return "quadrature"


def transform_orders(
    f: CandidateFunction,
    kind: TransformKind,
    w: complex,
    n_max: int,
    cfg: QuadratureConfig = QuadratureConfig(),
    method: str = "auto",
) -> tuple[np.ndarray, np.ndarray, tuple[str, ...], str]:
    """Values and error estimates of orders ``0..n_max`` of one transform at ``w``.

    For the Cauchy kind, order 0 needs the integrability condition; it is
    computed anyway (best effort) and flagged when decay is unknown.
    """
    w = complex(w)
    if w.imag == 0:
        raise OnRealAxis("transforms are evaluated off the real axis only")
    if kind is TransformKind.POISSON and w.imag < 0:
        raise ValueError("the Poisson extension is defined for y > 0")
    if method == "auto":
        method = choose_method(f, kind, w.real)
    warnings: tuple[str, ...] = ()
    if method == "spectral":
        if f.spectrum is None:
            raise ValueError("spectral route needs a spectral representation")
        vals, errs = _spectral_orders(f.spectrum, kind, w.real, w.imag, n_max)
    elif method == "interpolant":
        if not (isinstance(f.source, Sampled) and f.source.tail == "zero"):
            raise ValueError("interpolant route needs zero-tailed samples")
        vals, errs = _interpolant_orders(f.source, kind, w, n_max)
    elif method == "quadrature":
        vals, errs, warnings = _quadrature_orders(f, kind, w, n_max, cfg)
    else:
        raise ValueError(f"unknown method {method!r}")
    if kind is TransformKind.CAUCHY and classify_decay(f) is DecayClass.UNKNOWN:
        warnings = warnings + ("unknown_decay",)
    return np.asarray(vals, dtype=complex), np.asarray(errs, dtype=float), warnings, method


def _check_order0_cauchy(f: CandidateFunction) -> None:
    if classify_decay(f) is DecayClass.NOT_INTEGRABLE:
        raise NotIntegrable(
            "∫|f(t)|/(1+|t|) dt diverges, so the plain Cauchy transform does not exist; "
            "use modified_cauchy_transform"
        )


def cauchy_transform(
    f: CandidateFunction,
    y: float,
    n: int = 0,
    cfg: QuadratureConfig = QuadratureConfig(),
    method: str = "auto",
) -> TransformValue:
    """``d^n/dy^n k_f(iy)`` with ``k_f(z) = (i/π) ∫ f(t)/(z - t) dt``."""
    if y == 0:
        raise OnRealAxis("k_f is only defined off the real axis")
    if n < 0:
        raise ValueError("derivative order must be >= 0")
    if n == 0:
        _check_order0_cauchy(f)
    vals, errs, warns, used = transform_orders(f, TransformKind.CAUCHY, 1j * y, n, cfg, method)
    return TransformValue(complex(vals[n]), float(errs[n]), used, _tolerance_warnings(errs[n], vals[n], cfg, warns))


def cauchy_transform_at(
    f: CandidateFunction, z: complex, cfg: QuadratureConfig = QuadratureConfig(), method: str = "auto"
) -> TransformValue:
    """``k_f(z)`` at a general point off the real axis (used by the identity check)."""
    _check_order0_cauchy(f)
    z = complex(z)
    if method == "auto":
        method = "interpolant" if isinstance(f.source, Sampled) and f.source.tail == "zero" else "quadrature"
    vals, errs, warns, used = transform_orders(f, TransformKind.CAUCHY, z, 0, cfg, method)
    return TransformValue(complex(vals[0]), float(errs[0]), used, warns)


def modified_cauchy_transform(
    f: CandidateFunction, y: float, cfg: QuadratureConfig = QuadratureConfig(), method: str = "auto"
) -> TransformValue:
    """``K_f(iy) = (i/π) ∫ (1/(iy - t) + t/(t² + 1)) f(t) dt``.

    Budget exhaustion does not raise; the returned value carries the partial
    result, its (large) error estimate and a ``budget_exceeded`` warning.
    """
    if y == 0:
        raise OnRealAxis("K_f is only defined off the real axis")
    vals, errs, warns, used = transform_orders(f, TransformKind.MODIFIED, 1j * y, 0, cfg, method)
    return TransformValue(complex(vals[0]), float(errs[0]), used, _tolerance_warnings(errs[0], vals[0], cfg, warns))


def poisson_extension(
    f: CandidateFunction, x: float, y: float, cfg: QuadratureConfig = QuadratureConfig(), method: str = "auto"
) -> TransformValue:
    """``(P_y * f)(x)`` with the Poisson kernel ``P_y(x) = y / (π (x² + y²))``."""
    if not y > 0:
        raise ValueError("the Poisson extension needs y > 0")
    vals, errs, warns, used = transform_orders(f, TransformKind.POISSON, complex(x, y), 0, cfg, method)
    return TransformValue(complex(vals[0]), float(errs[0]), used, _tolerance_warnings(errs[0], vals[0], cfg, warns))


def _tolerance_warnings(err, val, cfg, warns):
    if err > max(cfg.abs_tol, cfg.rel_tol * abs(val)) and "budget_exceeded" not in warns and "truncation" not in warns:
        return tuple(warns) + ("tolerance_not_met",)
    return tuple(warns)


@dataclass(frozen=True)
class IdentityCheck:
    x: float
    y: float
    deviation: float
    error_bound: float
    skipped: bool = False
    notice: str = ""

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "deviation": None if self.skipped else self.deviation,
            "error_bound": None if self.skipped else self.error_bound,
            "skipped": self.skipped,
            "notice": self.notice,
        }


def poisson_cauchy_identity_check(
    f: CandidateFunction, x: float, y: float, cfg: QuadratureConfig = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-11)
) -> IdentityCheck:
    """Compare ``(P_y * f)(x)`` with ``(k_f(x+iy) - k_f(x-iy)) / 2``.

    Both sides are computed by direct quadrature (never the spectral route).
    The two kernels agree to the last bit on a shared node set, so the
    Poisson side uses a different panel order to make the comparison a
    genuine numerical one.
    """
    if not y > 0:
        raise ValueError("identity check needs y > 0")
    if classify_decay(f) is DecayClass.NOT_INTEGRABLE:
        return IdentityCheck(x, y, math.nan, math.nan, True, "skipped: f violates the integrability condition")
    method = "interpolant" if isinstance(f.source, Sampled) and f.source.tail == "zero" else "quadrature"
    lhs = poisson_extension(f, x, y, dataclasses.replace(cfg, panel_order=cfg.panel_order + 5), method=method)
    kp = cauchy_transform_at(f, complex(x, y), cfg, method=method)
    km = cauchy_transform_at(f, complex(x, -y), cfg, method=method)
    rhs = 0.5 * (kp.value - km.value)
    return IdentityCheck(x, y, abs(lhs.value - rhs), lhs.error + 0.5 * (kp.error + km.error))


# ---------------------------------------------------------------------------
# Tables on the imaginary axis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ImaginaryAxisGrid:
    """Geometric grid ``y_min .. y_max`` with ``count`` points on each side."""

    y_min: float = 1e-2
    y_max: float = 1e2
    count: int = 64

    def __post_init__(self):
        if not (self.y_min > 0 and self.y_max > self.y_min):
            raise ValueError("grid needs 0 < y_min < y_max")
        if self.count < 2:
            raise ValueError("grid needs at least two points per side")

    def points(self, side: str) -> np.ndarray:
        pos = np.geomspace(self.y_min, self.y_max, self.count)
        if side == "upper":
            return pos
        if side == "lower":
            return -pos[::-1]
        raise ValueError("side must be 'upper' or 'lower'")


@dataclass(frozen=True, eq=False)
class TransformTable:
    """Orders ``0..max_order`` of one transform over a one-sided grid."""

    grid: np.ndarray
    max_order: int
    values: np.ndarray  # (max_order + 1, len(grid)) complex
    errors: np.ndarray  # same shape, nonnegative
    kind: TransformKind
    side: str
    method: str = ""
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if self.values.shape != (self.max_order + 1, self.grid.size) or self.errors.shape != self.values.shape:
            raise ValueError("table shape does not match grid and order")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("table has non-finite values")
        if np.any(self.errors < 0):
            raise ValueError("error estimates must be nonnegative")
        expected = "upper" if np.all(self.grid > 0) else "lower" if np.all(self.grid < 0) else None
        if expected != self.side:
            raise ValueError("grid sign does not match table side")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "side": self.side,
            "method": self.method,
            "max_order": self.max_order,
            "grid": self.grid.tolist(),
            "values_re": self.values.real.tolist(),
            "values_im": self.values.imag.tolist(),
            "errors": self.errors.tolist(),
            "warnings": list(self.warnings),
        }


def build_table(
    f: CandidateFunction,
    kind: TransformKind,
    side: str,
    grid: ImaginaryAxisGrid = ImaginaryAxisGrid(),
    max_order: int = 10,
    cfg: QuadratureConfig = QuadratureConfig(),
    method: str = "auto",
    workers: int = 1,
) -> TransformTable:
    """Evaluate orders ``0..max_order`` at every grid point of one side.

    Grid points are independent, so they may be evaluated by a thread pool;
    results are collected in grid order.
    """
    if kind is TransformKind.POISSON and side != "upper":
        raise ValueError("the Poisson extension lives on the upper half-plane")
    ys = grid.points(side)
    if method == "auto":
        method = choose_method(f, kind)

    def one(y):
        return transform_orders(f, kind, 1j * y, max_order, cfg, method)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, ys))
    else:
        results = [one(y) for y in ys]
    values = np.stack([r[0] for r in results], axis=1)
    errors = np.stack([r[1] for r in results], axis=1)
    warns = sorted({w for r in results for w in r[2]})
    return TransformTable(ys, max_order, values, errors, kind, side, method, tuple(warns))


# ---------------------------------------------------------------------------
# Finite-difference consistency of derivative columns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DerivativeCheck:
    kind: str
    side: str
    method: str
    max_order: int
    checked: int
    failures: int
    unresolved: int
    worst_ratio: float  # max |diff| / allowed over resolved points
    worst: tuple[int, float, float] | None  # (order, y, |diff|)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "side": self.side,
            "method": self.method,
            "max_order": self.max_order,
            "checked": self.checked,
            "failures": self.failures,
            "unresolved": self.unresolved,
            "worst_ratio": self.worst_ratio,
            "worst": list(self.worst) if self.worst else None,
            "passed": self.passed,
        }


def derivative_consistency(
    f: CandidateFunction,
    kind: TransformKind,
    side: str,
    ys: Iterable[float],
    max_order: int,
    cfg: QuadratureConfig = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-11),
    method: str = "auto",
    rel_step: float = 3e-3,
    rel_tol: float = 1e-5,
    abs_tol: float = 1e-8,
) -> DerivativeCheck:
    """Compare order ``n`` with a 5-point central difference of order ``n-1``.

    A point whose propagated error estimate already exceeds the allowed
    deviation is counted as unresolved rather than judged.
    """
    if method == "auto":
        method = choose_method(f, kind)
    stencil = np.array([-2.0, -1.0, 1.0, 2.0])
    coef = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
    checked = failures = unresolved = 0
    worst_ratio = 0.0
    worst = None
    for y in ys:
        y = float(y)
        h = rel_step * abs(y)
        center_v, center_e, _, _ = transform_orders(f, kind, 1j * y, max_order, cfg, method)
        shifted = [transform_orders(f, kind, 1j * (y + s * h), max_order - 1, cfg, method) for s in stencil]
        sv = np.stack([r[0] for r in shifted])
        se = np.stack([r[1] for r in shifted])
        fd = (coef[:, None] * sv).sum(axis=0) / h
        fd_err = (np.abs(coef)[:, None] * se).sum(axis=0) / h
        for n in range(1, max_order + 1):
            ref = center_v[n]
            allowed = max(rel_tol * abs(ref), abs_tol)
            diff = abs(fd[n - 1] - ref)
            noise = fd_err[n - 1] + center_e[n]
            if noise > allowed:
                unresolved += 1
                continue
            checked += 1
            ratio = diff / allowed
            if ratio > worst_ratio:
                worst_ratio = ratio
                worst = (n, y, float(diff))
            if diff > allowed:
                failures += 1
    return DerivativeCheck(kind.value, side, method, max_order, checked, failures, unresolved, worst_ratio, worst)
