"""Independent reference computations.

Nothing here goes through the package's own quadrature engine: the Gram
matrix test only evaluates ``f``, and the integrals use ``scipy.integrate``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import integrate, linalg

from .func_model import CandidateFunction, SpectralMeasure, hermitian_screen, restrict_measure
from .transforms import kernel_ft_closed_form

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _default_points(seed: int | None = None) -> tuple[float, ...]:
    uniform = np.linspace(-10.0, 10.0, 32)
    if seed is None:
        # golden-ratio (Kronecker) sequence mapped to [-10, 10]
        extra = -10.0 + 20.0 * ((np.arange(1, 9) * GOLDEN) % 1.0)
    else:
        extra = np.random.default_rng(seed).uniform(-10.0, 10.0, 8)
    return tuple(float(x) for x in np.concatenate([uniform, extra]))


@dataclass(frozen=True)
class GramSpec:
    """Point set for the Gram matrix ``G[i, j] = f(x_i - x_j)``."""

    points: tuple[float, ...] = field(default_factory=_default_points)
    psd_tol: float | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("a Gram spec needs at least two points")
        if np.unique(pts).size != pts.size:
            raise ValueError("Gram points must be distinct")
        if not np.all(np.isfinite(pts)):
            raise ValueError("Gram points must be finite")

    @classmethod
    def default(cls, seed: int | None = None) -> "GramSpec":
        return cls(_default_points(seed))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def tol(self) -> float:
        return 1e-8 * self.n if self.psd_tol is None else self.psd_tol


@dataclass(frozen=True)
class BochnerResult:
    min_eigenvalue: float
    passed: bool
    hermitian_defect: float = 0.0
    flagged: bool = False  # G was not Hermitian and had to be symmetrised

    def __iter__(self):
        return iter((self.min_eigenvalue, self.passed))

    def to_dict(self) -> dict:
        return {
            "min_eigenvalue": self.min_eigenvalue,
            "passed": self.passed,
            "hermitian_defect": self.hermitian_defect,
            "flagged": self.flagged,
        }


def gram_matrix(f: CandidateFunction, points: Sequence[float]) -> np.ndarray:
    x = np.asarray(points, dtype=float)
    diff = np.subtract.outer(x, x)
    return f(diff.ravel()).reshape(diff.shape)


def bochner_test(f: CandidateFunction, spec: GramSpec | None = None) -> BochnerResult:
    """Smallest eigenvalue of the Hermitian part of the Gram matrix.

    A finite point set can only refute positive definiteness; ``passed``
    means that no violation was found.
    """
    spec = GramSpec() if spec is None else spec
    g = gram_matrix(f, spec.points)
    defect = float(np.max(np.abs(g - g.conj().T)))
    flagged = defect > f.mass_tol
    h = 0.5 * (g + g.conj().T)
    lam = float(linalg.eigvalsh(h)[0])
    return BochnerResult(lam, lam >= -spec.tol, defect, flagged)


# ---------------------------------------------------------------------------
# Kernel Fourier transforms
# ---------------------------------------------------------------------------

DEFAULT_FT_PAIRS: tuple[tuple[float, float], ...] = (
    (1.0, 0.0),
    (-1.0, 0.0),
    (2.0, 1.0),
    (0.5, 0.0),
    (-3.0, 0.0),
    (1.0, 1.0),
    (1.0, -1.0),
    (0.5, 2.0),
    (0.5, -0.5),
    (2.0, -3.0),
    (3.0, 0.25),
    (0.25, 4.0),
    (-1.0, 1.0),
    (-1.0, -1.0),
    (-0.5, 2.0),
    (-0.5, -2.0),
    (-2.0, 0.5),
    (-2.0, -5.0),
    (-0.25, 3.0),
    (1.5, 5.0),
)


def modified_kernel(y: float, t):
    """``(i/pi) (1/(iy - t) + t/(t^2 + 1))``, which is O(1/t^2) at infinity."""
    t = np.asarray(t, dtype=float)
    z = 1j * y
    return (1j / math.pi) * (1.0 / (z - t) + t / (t * t + 1.0))


@dataclass(frozen=True)
class KernelFTCheck:
    y: float
    x: float
    numeric: complex
    closed_form: float
    deviation: float
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "y": self.y,
            "x": self.x,
            "numeric": [self.numeric.real, self.numeric.imag],
            "closed_form": self.closed_form,
            "deviation": self.deviation,
            "warnings": list(self.warnings),
        }


def _quad(fun, weight, wvar, tol, caught):
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        if weight is None:
            val, _ = integrate.quad(fun, 0.0, np.inf, epsabs=tol, epsrel=tol, limit=500)
        else:
            val, _ = integrate.quad(fun, 0.0, np.inf, weight=weight, wvar=wvar, epsabs=tol, limlst=200, limit=500)
    caught.extend(str(x.message).splitlines()[0] for x in w)
    return val


def kernel_ft_numeric(y: float, x: float, quad_tol: float = 1e-10) -> tuple[complex, list[str]]:
    """``∫ gamma(iy; t) e^{ixt} dt`` via Fourier-weighted QUADPACK on ``[0, inf)``."""
    if y == 0:
        raise ValueError("y must be nonzero")
    caught: list[str] = []

    def even(t):
        return modified_kernel(y, t) + modified_kernel(y, -t)

    def odd(t):
        return modified_kernel(y, t) - modified_kernel(y, -t)

    if x == 0:
        re = _quad(lambda t: even(t).real, None, 0, quad_tol, caught)
        im = _quad(lambda t: even(t).imag, None, 0, quad_tol, caught)
        return complex(re, im), caught
    w = abs(x)
    s = math.copysign(1.0, x)
    c_re = _quad(lambda t: even(t).real, "cos", w, quad_tol, caught)
    c_im = _quad(lambda t: even(t).imag, "cos", w, quad_tol, caught)
    s_re = _quad(lambda t: odd(t).real, "sin", w, quad_tol, caught)
    s_im = _quad(lambda t: odd(t).imag, "sin", w, quad_tol, caught)
    # e^{ixt} = cos(|x| t) + i s sin(|x| t)
    return complex(c_re, c_im) + 1j * s * complex(s_re, s_im), caught


def validate_kernel_ft(
    pairs: Sequence[tuple[float, float]] = DEFAULT_FT_PAIRS, quad_tol: float = 1e-10
) -> tuple[float, list[KernelFTCheck]]:
    """Largest deviation between numeric and closed-form kernel transforms."""
    checks = []
    for y, x in pairs:
        if y == 0:
            raise ValueError("kernel transform pairs need y != 0")
        num, caught = kernel_ft_numeric(y, x, quad_tol)
        ref = float(kernel_ft_closed_form(y, x))
        checks.append(KernelFTCheck(y, x, num, ref, abs(num - ref), tuple(caught)))
    return max(c.deviation for c in checks), checks


# ---------------------------------------------------------------------------
# Half-line Laplace transforms
# ---------------------------------------------------------------------------


def laplace_reference(m: SpectralMeasure, side: str, y: float) -> float:
    """``∫ e^{-yx} dσ_s(x)`` for the restricted measure ``σ_s = restrict_measure(m, side)``."""
    if side == "nonneg" and not y > 0:
        raise ValueError("nonneg side needs y > 0")
    if side == "nonpos" and not y < 0:
        raise ValueError("nonpos side needs y < 0")
    r = restrict_measure(m, side)
    total = math.fsum(w * math.exp(-y * x) for x, w in r.atoms)
    for h in r.densities:
        d = h.density
        lo, hi = h.interval()
        if not lo < hi:
            continue

        def integrand(x, d=d):
            return float(d.pdf(np.array([x]))[0]) * math.exp(-y * x)

        p = d.p
        loc = p.get("mean", p.get("location", 0.5 * (p.get("a", 0.0) + p.get("b", 0.0))))
        pts = [v for v in (loc, 0.0) if lo < v < hi and math.isfinite(lo) and math.isfinite(hi)]
        if math.isfinite(lo) and math.isfinite(hi):
            val, _ = integrate.quad(integrand, lo, hi, points=pts or None, epsabs=1e-14, epsrel=1e-12, limit=500)
        else:
            # split at the bulk so QUADPACK sees the peak
            inner = min(max(loc, lo), hi)
            val = 0.0
            if lo < inner:
                val += integrate.quad(integrand, lo, inner, epsabs=1e-14, epsrel=1e-12, limit=500)[0]
            if inner < hi:
                val += integrate.quad(integrand, inner, hi, epsabs=1e-14, epsrel=1e-12, limit=500)[0]
        total += 2.0 * d.mass * val
    return total
