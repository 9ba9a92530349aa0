"""Named test functions with known ground truth."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .func_model import (
    CandidateFunction,
    DecayClass,
    Density,
    SpectralMeasure,
    TwoAtomFamily,
    black_box,
    char_function_from_measure,
    mixture,
    sampled_function,
)


class UnknownCatalogEntry(KeyError):
    pass


def _density(name: str, **params) -> CandidateFunction:
    d = Density.make(name, **params)
    return char_function_from_measure(SpectralMeasure((), (d,)), label=name)


def _point_mass(location: float) -> CandidateFunction:
    return char_function_from_measure(SpectralMeasure(((location, 1.0),)), label=f"point-mass({location:g})")


def _cosine(frequency: float) -> CandidateFunction:
    m = SpectralMeasure(((-frequency, 0.5), (frequency, 0.5)))
    return char_function_from_measure(m, label=f"cosine({frequency:g})")


def _triangular(width: float, points: float) -> CandidateFunction:
    # (1 - |t|/w)_+ is the characteristic function of the Fejer density
    n = int(points)
    t = np.linspace(-4.0 * width, 4.0 * width, n)
    v = np.clip(1.0 - np.abs(t) / width, 0.0, None)
    return sampled_function(t, v, tail="zero", label=f"triangular(w={width:g})")


def _power_exponential(p: float) -> CandidateFunction:
    bp = (0.0,) if p < 3 else ()
    return black_box(
        lambda t: np.exp(-np.abs(t) ** p),
        "power-exponential",
        {"p": p},
        decay_class=DecayClass.INTEGRABLE,
        breakpoints=bp,
        label=f"exp(-|t|^{p:g})",
    )


def _perturbed_gaussian(eps: float) -> CandidateFunction:
    return black_box(
        lambda t: (1.0 + eps * t * t) * np.exp(-0.5 * t * t),
        "perturbed-gaussian",
        {"eps": eps},
        decay_class=DecayClass.INTEGRABLE,
        bound=max(1.0, 2 * eps * math.exp(0.5 / eps - 1.0)) if eps > 0.5 else 1.0,
        label=f"(1+{eps:g}t^2)exp(-t^2/2)",
    )


def _mixture(lam: float) -> CandidateFunction:
    return mixture(_density("gaussian", mean=0.0, stddev=1.0), _density("cauchy", location=0.0, scale=1.0), lam)


def _atom_gaussian_mixture(lam: float, alpha: float) -> CandidateFunction:
    return mixture(TwoAtomFamily(alpha).function(), _density("gaussian", mean=0.0, stddev=1.0), lam)


@dataclass(frozen=True)
class CatalogSpec:
    build: Callable[..., CandidateFunction]
    defaults: Mapping[str, float]
    truth: Callable[..., bool]
    summary: str


def _always(**_):
    return True


CATALOG: dict[str, CatalogSpec] = {
    "point-mass": CatalogSpec(_point_mass, {"location": 0.0}, _always, "e^{i a t}; a = 0 gives f = 1"),
    "two-atom": CatalogSpec(
        lambda alpha: TwoAtomFamily(alpha).function(),
        {"alpha": 0.5},
        lambda alpha: 0.0 <= alpha <= 1.0,
        "(1-alpha) e^{-it} + alpha e^{it}",
    ),
    "cosine": CatalogSpec(_cosine, {"frequency": 1.0}, _always, "cos(w t)"),
    "gaussian": CatalogSpec(
        lambda mean, stddev: _density("gaussian", mean=mean, stddev=stddev), {"mean": 0.0, "stddev": 1.0}, _always, "normal law"
    ),
    "shifted-gaussian": CatalogSpec(
        lambda mean, stddev: _density("gaussian", mean=mean, stddev=stddev),
        {"mean": 1.0, "stddev": 0.5},
        _always,
        "normal law with nonzero mean (complex f)",
    ),
    "laplace-distribution": CatalogSpec(
        lambda location, scale: _density("laplace", location=location, scale=scale),
        {"location": 0.0, "scale": 1.0},
        _always,
        "1/(1+t^2)",
    ),
    "cauchy-distribution": CatalogSpec(
        lambda location, scale: _density("cauchy", location=location, scale=scale),
        {"location": 0.0, "scale": 1.0},
        _always,
        "exp(-|t|)",
    ),
    "uniform": CatalogSpec(lambda a, b: _density("uniform", a=a, b=b), {"a": -1.0, "b": 1.0}, _always, "sin(t)/t"),
    "triangular": CatalogSpec(_triangular, {"width": 1.0, "points": 33}, _always, "(1-|t|)_+ from samples"),
    "mixture": CatalogSpec(_mixture, {"lam": 0.5}, lambda lam: 0.0 <= lam <= 1.0, "lam*gaussian + (1-lam)*cauchy"),
    "atom-gaussian-mixture": CatalogSpec(
        _atom_gaussian_mixture,
        {"lam": 0.5, "alpha": 0.25},
        lambda lam, alpha: 0.0 <= alpha <= 1.0 or lam == 0.0,
        "lam*two-atom(alpha) + (1-lam)*gaussian",
    ),
    "power-exponential": CatalogSpec(_power_exponential, {"p": 4.0}, lambda p: 0.0 < p <= 2.0, "exp(-|t|^p)"),
    "quartic": CatalogSpec(lambda: _power_exponential(4.0), {}, lambda: False, "exp(-t^4)"),
    "perturbed-gaussian": CatalogSpec(
        _perturbed_gaussian, {"eps": 1.0}, lambda eps: eps == 0.0, "(1+eps t^2) exp(-t^2/2)"
    ),
}


def _resolve(name: str, params: Mapping[str, float] | None) -> dict[str, float]:
    if name not in CATALOG:
        raise UnknownCatalogEntry(f"unknown catalog entry {name!r}; available: {', '.join(sorted(CATALOG))}")
    spec = CATALOG[name]
    merged = dict(spec.defaults)
    for k, v in (params or {}).items():
        if k not in spec.defaults:
            raise ValueError(f"{name} takes parameters {sorted(spec.defaults)}, got {k!r}")
        merged[k] = float(v)
    return merged


def build(name: str, params: Mapping[str, float] | None = None) -> CandidateFunction:
    resolved = _resolve(name, params)
    return CATALOG[name].build(**resolved)


def truth(name: str, params: Mapping[str, float] | None = None) -> bool:
    """Whether the entry is a characteristic function."""
    resolved = _resolve(name, params)
    return CATALOG[name].truth(**resolved)


@dataclass(frozen=True)
class Entry:
    name: str
    params: tuple[tuple[str, float], ...]
    expected: bool

    def function(self) -> CandidateFunction:
        return build(self.name, dict(self.params))

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return self.name + "(" + ", ".join(f"{k}={v:g}" for k, v in self.params) + ")"


def _entry(name, **params) -> Entry:
    return Entry(name, tuple(sorted(params.items())), truth(name, params))


def standard_suite() -> list[Entry]:
    """Positives and negatives used for cross-checking against the Gram oracle."""
    out = [
        _entry("point-mass", location=0.0),
        _entry("point-mass", location=2.0),
        _entry("cosine", frequency=1.0),
        _entry("gaussian"),
        _entry("shifted-gaussian"),
        _entry("laplace-distribution"),
        _entry("cauchy-distribution"),
        _entry("uniform"),
        _entry("triangular"),
        _entry("mixture", lam=0.3),
        _entry("atom-gaussian-mixture", lam=0.5, alpha=0.25),
    ]
    out += [_entry("two-atom", alpha=a) for a in (0.0, 0.25, 0.5, 0.75, 1.0)]
    out += [_entry("two-atom", alpha=a) for a in (-0.1, 1.2, 2.0)]
    out += [
        _entry("quartic"),
        _entry("perturbed-gaussian", eps=1.0),
        _entry("perturbed-gaussian", eps=0.3),
        _entry("atom-gaussian-mixture", lam=0.5, alpha=1.5),
    ]
    return out
