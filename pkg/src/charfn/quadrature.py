"""Adaptive Gauss-Legendre quadrature on (half-)infinite intervals.

Integrals over unbounded ranges are mapped with ``t = center + scale*tan(theta)``
onto a bounded theta interval, which is then covered by composite
Gauss-Legendre panels refined by bisection.  The integrand may be
vector-valued: one call returns every component (e.g. all derivative orders
of a transform at one point), and a panel is only accepted once every
component meets its tolerance.

Panels are processed level by level so that each refinement round costs a
single vectorised call of the integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

EPS = np.finfo(float).eps
# Multiple of eps * integral(|h|) used as the irreducible rounding floor.
ROUNDING_FACTOR = 64.0


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets for the black-box integrator.

    ``truncation`` is the initial half-width beyond which panels are parked
    rather than refined; it is doubled while parked panels dominate the
    error, up to ``max_truncation``.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    truncation: float = 1e4
    max_truncation: float = 1e8
    panel_order: int = 16
    max_panels: int = 6000
    max_levels: int = 60
    # sign changes of Re/Im among one child's nodes that force a split
    oscillation_crossings: int = 4

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("quadrature tolerances must be positive")
        if self.truncation <= 0 or self.max_truncation < self.truncation:
            raise ValueError("need 0 < truncation <= max_truncation")
        if self.panel_order < 2:
            raise ValueError("panel_order must be >= 2")

    def tightened(self, abs_tol: float, rel_tol: float) -> "QuadratureConfig":
        from dataclasses import replace

        return replace(self, abs_tol=abs_tol, rel_tol=rel_tol)


@dataclass
class QuadResult:
    value: np.ndarray
    error: np.ndarray
    panels: int = 0
    evaluations: int = 0
    warnings: list[str] = field(default_factory=list)


@lru_cache(maxsize=16)
def _gauss_legendre(m: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(m)
    return x, w


def _theta(t: float, center: float, scale: float) -> float:
    if t == math.inf:
        return math.pi / 2
    if t == -math.inf:
        return -math.pi / 2
    return math.atan((t - center) / scale)


def _sign_changes(v: np.ndarray) -> np.ndarray:
    """Sign changes along the last axis, ignoring exact zeros."""
    s = np.sign(v)
    return np.sum(s[..., 1:] * s[..., :-1] < 0, axis=-1)


def integrate(
    fun: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    *,
    center: float = 0.0,
    scale: float = 1.0,
    breakpoints: Sequence[float] = (),
    cfg: QuadratureConfig = QuadratureConfig(),
    n_initial: int = 4,
) -> QuadResult:
    """Integrate ``fun`` over ``[a, b]`` (either end may be infinite).

    ``fun`` maps a 1-D array of abscissae to an array of shape ``(K, P)``;
    the result has shape ``(K,)``.  Finite intervals use the same tangent map,
    so ``scale`` sets where resolution is concentrated.
    """
    if not b > a:
        raise ValueError("integration interval must satisfy a < b")
    if scale <= 0:
        raise ValueError("scale must be positive")
    xg, wg = _gauss_legendre(cfg.panel_order)

    th_a = _theta(a, center, scale)
    th_b = _theta(b, center, scale)
    cuts = {th_a, th_b}
    for p in breakpoints:
        if a < p < b and math.isfinite(p):
            cuts.add(_theta(p, center, scale))
    cuts = np.array(sorted(cuts))
    lo = []
    hi = []
    for c0, c1 in zip(cuts[:-1], cuts[1:]):
        if c1 - c0 <= 0:
            continue
        edges = np.linspace(c0, c1, n_initial + 1)
        lo.extend(edges[:-1])
        hi.extend(edges[1:])
    lo = np.array(lo)
    hi = np.array(hi)
    width_total = th_b - th_a

    def t_of(th):
        return center + scale * np.tan(th)

    def panel_rule(lo_, hi_):
        # returns (Q[K, P], L1[K, P], crossings[P], raw h for reuse)
        half = 0.5 * (hi_ - lo_)
        mid = 0.5 * (hi_ + lo_)
        th = mid[:, None] + half[:, None] * xg[None, :]
        t = t_of(th)
        jac = scale / np.cos(th) ** 2
        h = np.asarray(fun(t.ravel()), dtype=complex)
        if h.ndim == 1:
            h = h[None, :]
        h = h.reshape(h.shape[0], *t.shape)
        wj = (half[:, None] * wg[None, :]) * jac
        q = np.einsum("kpm,pm->kp", h, wj)
        l1 = np.einsum("kpm,pm->kp", np.abs(h), wj)
        cross = np.maximum(_sign_changes(h.real), _sign_changes(h.imag)).max(axis=0)
        return q, l1, cross

    evaluations = 0
    q_act, l1_act, _ = panel_rule(lo, hi)
    evaluations += lo.size * cfg.panel_order
    n_comp = q_act.shape[0]

    acc_value = np.zeros(n_comp, dtype=complex)
    acc_error = np.zeros(n_comp)
    acc_l1 = np.zeros(n_comp)
    parked: list[tuple] = []
    warnings: list[str] = []
    horizon = cfg.truncation
    n_panels = lo.size
    level = 0

    while True:
        if lo.size:
            mid = 0.5 * (lo + hi)
            qc, l1c, cross = panel_rule(np.concatenate([lo, mid]), np.concatenate([mid, hi]))
            evaluations += 2 * lo.size * cfg.panel_order
            n = lo.size
            q_left, q_right = qc[:, :n], qc[:, n:]
            q_new = q_left + q_right
            l1_new = l1c[:, :n] + l1c[:, n:]
            err = np.abs(q_act - q_new)
            oscillating = np.maximum(cross[:n], cross[n:]) >= cfg.oscillation_crossings

            estimate = acc_value + q_new.sum(axis=1)
            for p in parked:
                estimate = estimate + p[2]
            tol_c = np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(estimate))
            share = (hi - lo) / width_total
            floor = ROUNDING_FACTOR * EPS * l1_new
            ok = np.all(err <= np.maximum(tol_c[:, None] * share[None, :], floor), axis=0)
            ok &= ~oscillating
            ok |= (hi - lo) < 1e-13

            if ok.any():
                acc_value += q_new[:, ok].sum(axis=1)
                acc_error += err[:, ok].sum(axis=1)
                acc_l1 += l1_new[:, ok].sum(axis=1)

            keep = ~ok
            # children of panels that must be refined further
            t_inner = np.minimum(np.abs(t_of(lo)), np.abs(t_of(hi))) - abs(center)
            beyond = keep & (t_inner > horizon)
            for i in np.nonzero(beyond)[0]:
                parked.append((lo[i], hi[i], q_new[:, i], np.maximum(err[:, i], l1_new[:, i]), l1_new[:, i]))
            keep &= ~beyond
            idx = np.nonzero(keep)[0]
            lo = np.concatenate([lo[idx], mid[idx]])
            hi = np.concatenate([mid[idx], hi[idx]])
            q_act = np.concatenate([q_left[:, idx], q_right[:, idx]], axis=1)
            l1_act = np.concatenate([l1c[:, :n][:, idx], l1c[:, n:][:, idx]], axis=1)
            n_panels += idx.size
            level += 1

        if lo.size and (n_panels > cfg.max_panels or level >= cfg.max_levels):
            warnings.append("budget_exceeded")
            # remaining active panels: accept with their pessimistic bound
            acc_value += q_act.sum(axis=1)
            acc_error += l1_act.sum(axis=1)
            acc_l1 += l1_act.sum(axis=1)
            lo = hi = np.zeros(0)
            q_act = np.zeros((n_comp, 0), dtype=complex)
            l1_act = np.zeros((n_comp, 0))
        if lo.size:
            continue
        # active set is empty: decide what to do with parked tail panels
        if parked:
            parked_err = np.sum([p[3] for p in parked], axis=0)
            total = acc_value + np.sum([p[2] for p in parked], axis=0)
            tol_c = np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(total))
            if np.all(acc_error + parked_err <= tol_c) or horizon >= cfg.max_truncation or "budget_exceeded" in warnings:
                if not np.all(acc_error + parked_err <= tol_c):
                    warnings.append("truncation")
                for p in parked:
                    acc_value += p[2]
                    acc_error += p[3]
                    acc_l1 += p[4]
                parked = []
                break
            horizon = min(2.0 * horizon, cfg.max_truncation)
            # re-activate parked panels as fresh parents
            lo = np.array([p[0] for p in parked])
            hi = np.array([p[1] for p in parked])
            q_act = np.stack([p[2] for p in parked], axis=1)
            l1_act = np.stack([p[4] for p in parked], axis=1)
            parked = []
            continue
        break

    error = acc_error + ROUNDING_FACTOR * EPS * acc_l1
    return QuadResult(acc_value, error, n_panels, evaluations, warnings)


def integrate_real_line(fun, *, center=0.0, scale=1.0, breakpoints=(), cfg=QuadratureConfig()) -> QuadResult:
    return integrate(fun, -math.inf, math.inf, center=center, scale=scale, breakpoints=breakpoints, cfg=cfg)
