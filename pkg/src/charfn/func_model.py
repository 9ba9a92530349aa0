"""Candidate functions, spectral measures and the cheap necessary-condition screens."""

from __future__ import annotations

import csv
import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

import numpy as np

MASS_TOL_ANALYTIC = 1e-12
MASS_TOL_SAMPLED = 1e-6


class InvalidMeasure(ValueError):
    """A measure with negative mass, bad parameters or an unknown density."""


class DecayClass(str, enum.Enum):
    """Whether ``∫ |f(t)| / (1 + |t|) dt`` is finite."""

    INTEGRABLE = "Integrable17"
    NOT_INTEGRABLE = "NotIntegrable17"
    UNKNOWN = "Unknown"


# ---------------------------------------------------------------------------
# Densities
# ---------------------------------------------------------------------------

_DENSITY_PARAMS = {
    "gaussian": ("mean", "stddev"),
    "cauchy": ("location", "scale"),
    "laplace": ("location", "scale"),
    "uniform": ("a", "b"),
}


@dataclass(frozen=True)
class Density:
    """A named absolutely continuous component ``mass * p(x) dx``.

    ``mass`` may only be negative for signed spectra built internally
    (see :class:`SpectralMeasure`).
    """

    name: str
    params: tuple[tuple[str, float], ...]
    mass: float = 1.0

    def __post_init__(self):
        if self.name not in _DENSITY_PARAMS:
            raise InvalidMeasure(f"unknown density {self.name!r}; expected one of {sorted(_DENSITY_PARAMS)}")
        keys = tuple(k for k, _ in self.params)
        if set(keys) != set(_DENSITY_PARAMS[self.name]):
            raise InvalidMeasure(f"{self.name} density needs parameters {_DENSITY_PARAMS[self.name]}, got {keys}")
        p = self.p
        if self.name in ("gaussian",) and not p["stddev"] > 0:
            raise InvalidMeasure("gaussian stddev must be > 0")
        if self.name in ("cauchy", "laplace") and not p["scale"] > 0:
            raise InvalidMeasure(f"{self.name} scale must be > 0")
        if self.name == "uniform" and not p["a"] < p["b"]:
            raise InvalidMeasure("uniform density needs a < b")
        if not math.isfinite(self.mass):
            raise InvalidMeasure("density mass must be finite")

    @classmethod
    def make(cls, name: str, mass: float = 1.0, **params: float) -> "Density":
        return cls(name, tuple(sorted((k, float(v)) for k, v in params.items())), float(mass))

    @property
    def p(self) -> dict[str, float]:
        return dict(self.params)

    def pdf(self, x: np.ndarray) -> np.ndarray:
        """Unit-mass probability density (the ``mass`` factor is not applied)."""
        x = np.asarray(x, dtype=float)
        p = self.p
        if self.name == "gaussian":
            z = (x - p["mean"]) / p["stddev"]
            return np.exp(-0.5 * z * z) / (p["stddev"] * math.sqrt(2 * math.pi))
        if self.name == "cauchy":
            z = (x - p["location"]) / p["scale"]
            return 1.0 / (math.pi * p["scale"] * (1.0 + z * z))
        if self.name == "laplace":
            return np.exp(-np.abs(x - p["location"]) / p["scale"]) / (2 * p["scale"])
        a, b = p["a"], p["b"]
        return np.where((x >= a) & (x <= b), 1.0 / (b - a), 0.0)

    def char(self, t: np.ndarray) -> np.ndarray:
        """Closed-form ``∫ e^{ixt} p(x) dx`` (unit mass)."""
        t = np.asarray(t, dtype=float)
        p = self.p
        if self.name == "gaussian":
            return np.exp(1j * p["mean"] * t - 0.5 * (p["stddev"] * t) ** 2)
        if self.name == "cauchy":
            return np.exp(1j * p["location"] * t - p["scale"] * np.abs(t))
        if self.name == "laplace":
            return np.exp(1j * p["location"] * t) / (1.0 + (p["scale"] * t) ** 2)
        a, b = p["a"], p["b"]
        half = 0.5 * (b - a) * t
        return np.exp(0.5j * (a + b) * t) * np.sinc(half / math.pi)

    def support(self) -> tuple[float, float]:
        if self.name == "uniform":
            return self.p["a"], self.p["b"]
        return -math.inf, math.inf

    def features(self) -> list[float]:
        """Abscissae where the density changes character (kinks, bulk, tails)."""
        p = self.p
        if self.name == "uniform":
            return [p["a"], p["b"], 0.5 * (p["a"] + p["b"])]
        loc = p.get("mean", p.get("location"))
        s = p.get("stddev", p.get("scale"))
        mults = {"gaussian": (1, 3, 8), "laplace": (1, 5, 25), "cauchy": (1, 10, 100, 1000)}[self.name]
        pts = [loc]
        for m in mults:
            pts += [loc - m * s, loc + m * s]
        return pts

    def scaled(self, factor: float) -> "Density":
        return Density(self.name, self.params, self.mass * factor)

    def to_dict(self) -> dict:
        return {"name": self.name, "params": dict(self.params), "mass": self.mass}


# ---------------------------------------------------------------------------
# Spectral measures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralMeasure:
    """Finite measure on the line: point masses plus named densities.

    Nonnegativity is enforced unless ``signed=True``.  Signed spectra never
    come from user input; they let the catalog express non-characteristic
    exponential sums such as the two-atom family outside ``[0, 1]`` so that
    their transforms can still be evaluated in closed form.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    densities: tuple[Density, ...] = ()
    signed: bool = False

    def __post_init__(self):
        atoms = tuple((float(x), float(w)) for x, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "densities", tuple(self.densities))
        for x, w in atoms:
            if not (math.isfinite(x) and math.isfinite(w)):
                raise InvalidMeasure("atom location and weight must be finite")
            if w < 0 and not self.signed:
                raise InvalidMeasure(f"negative atom weight {w} at x={x}")
        for d in self.densities:
            if d.mass < 0 and not self.signed:
                raise InvalidMeasure(f"negative density mass {d.mass}")

    @property
    def total_mass(self) -> float:
        return math.fsum(w for _, w in self.atoms) + math.fsum(d.mass for d in self.densities)

    def is_probability(self, tol: float = MASS_TOL_ANALYTIC) -> bool:
        return abs(self.total_mass - 1.0) <= tol and not self.is_signed

    @property
    def is_signed(self) -> bool:
        return any(w < 0 for _, w in self.atoms) or any(d.mass < 0 for d in self.densities)

    def atom_at_zero(self) -> float:
        return math.fsum(w for x, w in self.atoms if x == 0.0)

    def scaled(self, factor: float) -> "SpectralMeasure":
        return SpectralMeasure(
            tuple((x, w * factor) for x, w in self.atoms),
            tuple(d.scaled(factor) for d in self.densities),
            signed=self.signed or factor < 0,
        )

    def __add__(self, other: "SpectralMeasure") -> "SpectralMeasure":
        merged: dict[float, float] = {}
        for x, w in self.atoms + other.atoms:
            merged[x] = merged.get(x, 0.0) + w
        return SpectralMeasure(
            tuple(sorted(merged.items())),
            self.densities + other.densities,
            signed=self.signed or other.signed,
        )

    def to_dict(self) -> dict:
        return {
            "atoms": [{"x": x, "w": w} for x, w in self.atoms],
            "densities": [d.to_dict() for d in self.densities],
        }


def measure_from_dict(data: Mapping[str, Any]) -> SpectralMeasure:
    """Parse the measure file layout.

    ``{"atoms": [{"x": .., "w": ..}], "density": {"name": .., "params": {..}, "mass": ..}}``;
    a ``"densities"`` list is accepted as well.  Zero-mass densities are dropped.
    """
    try:
        atoms = tuple((float(a["x"]), float(a["w"])) for a in data.get("atoms", []))
        raw = list(data.get("densities", []))
        if data.get("density") is not None:
            raw.append(data["density"])
        densities = []
        for d in raw:
            dens = Density.make(d["name"], float(d.get("mass", 1.0)), **{k: float(v) for k, v in d.get("params", {}).items()})
            if dens.mass != 0.0:
                densities.append(dens)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidMeasure):
            raise
        raise InvalidMeasure(f"malformed measure specification: {exc}") from exc
    return SpectralMeasure(atoms, tuple(densities))


def load_measure(path: str | Path) -> SpectralMeasure:
    with open(path, encoding="utf-8") as fh:
        return measure_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# Candidate functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FromMeasure:
    measure: SpectralMeasure
    kind: str = "measure"


@dataclass(frozen=True)
class Catalog:
    name: str
    params: tuple[tuple[str, float], ...] = ()
    kind: str = "catalog"


@dataclass(frozen=True)
class Sampled:
    """Samples ``(t, f(t))`` with linear interpolation inside the range.

    ``tail`` is the model outside the range: ``"zero"`` (default) or ``"hold"``
    (constant continuation of the end values).
    """

    t: np.ndarray
    values: np.ndarray
    tail: str = "zero"
    kind: str = "sampled"

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise ValueError("samples need matching 1-D arrays with at least two points")
        if np.any(np.diff(t) <= 0):
            raise ValueError("sample abscissae must be strictly increasing")
        if self.tail not in ("zero", "hold"):
            raise ValueError(f"unknown tail model {self.tail!r}")
        t.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", v)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.tail == "zero":
            re = np.interp(x, self.t, self.values.real, left=0.0, right=0.0)
            im = np.interp(x, self.t, self.values.imag, left=0.0, right=0.0)
        else:
            re = np.interp(x, self.t, self.values.real)
            im = np.interp(x, self.t, self.values.imag)
        return re + 1j * im

    def __hash__(self):
        return hash((self.t.tobytes(), self.values.tobytes(), self.tail))

    def __eq__(self, other):
        return (
            isinstance(other, Sampled)
            and self.tail == other.tail
            and np.array_equal(self.t, other.t)
            and np.array_equal(self.values, other.values)
        )


Source = FromMeasure | Catalog | Sampled


@dataclass(frozen=True, eq=False)
class CandidateFunction:
    """A bounded function ``f: R -> C`` under test.

    ``evaluator`` is vectorised over numpy arrays.  ``spectrum`` holds an
    exact (possibly signed) spectral representation when one is known, which
    enables closed-form transform evaluation.  ``breakpoints`` lists kinks of
    ``f`` that quadrature should not straddle.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    source: Source
    decay_class: DecayClass = DecayClass.UNKNOWN
    bound: float = 1.0
    spectrum: SpectralMeasure | None = None
    breakpoints: tuple[float, ...] = ()
    label: str = ""

    def __call__(self, x) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(x, dtype=float)), dtype=complex)

    @property
    def is_sampled(self) -> bool:
        return isinstance(self.source, Sampled)

    @property
    def mass_tol(self) -> float:
        return MASS_TOL_SAMPLED if self.is_sampled else MASS_TOL_ANALYTIC

    def describe(self) -> dict:
        src = self.source
        if isinstance(src, FromMeasure):
            body = {"kind": "measure", "measure": src.measure.to_dict()}
        elif isinstance(src, Catalog):
            body = {"kind": "catalog", "name": src.name, "params": dict(src.params)}
        else:
            body = {"kind": "sampled", "points": int(src.t.size), "range": [float(src.t[0]), float(src.t[-1])], "tail": src.tail}
        body["decay_class"] = self.decay_class.value
        if self.label:
            body["label"] = self.label
        return body


def _spectrum_evaluator(m: SpectralMeasure) -> Callable[[np.ndarray], np.ndarray]:
    xs = np.array([x for x, _ in m.atoms], dtype=float)
    ws = np.array([w for _, w in m.atoms], dtype=float)
    dens = m.densities

    def evaluate(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        if xs.size:
            out += np.exp(1j * np.multiply.outer(t, xs)) @ ws
        for d in dens:
            out += d.mass * d.char(t)
        return out

    return evaluate


def _spectrum_breakpoints(m: SpectralMeasure) -> tuple[float, ...]:
    # Cauchy and Laplace characteristic functions have a kink at t = 0.
    if any(d.name in ("cauchy",) for d in m.densities):
        return (0.0,)
    return ()


def _spectrum_bound(m: SpectralMeasure) -> float:
    return math.fsum(abs(w) for _, w in m.atoms) + math.fsum(abs(d.mass) for d in m.densities)


def char_function_from_measure(m: SpectralMeasure, label: str = "") -> CandidateFunction:
    """Characteristic function ``t -> ∫ e^{ixt} dm(x)`` of a finite measure."""
    if m.is_signed and not m.signed:
        raise InvalidMeasure("measure has negative mass")
    f = CandidateFunction(
        evaluator=_spectrum_evaluator(m),
        source=FromMeasure(m),
        spectrum=m,
        bound=_spectrum_bound(m),
        breakpoints=_spectrum_breakpoints(m),
        label=label,
    )
    return _with_decay(f)


def exponential_sum(terms: Sequence[tuple[float, float]], name: str, params: Mapping[str, float], label: str = "") -> CandidateFunction:
    """``t -> Σ c_j e^{i x_j t}`` with real coefficients of either sign."""
    spec = SpectralMeasure(tuple(terms), (), signed=True)
    f = CandidateFunction(
        evaluator=_spectrum_evaluator(spec),
        source=Catalog(name, tuple(sorted((k, float(v)) for k, v in params.items()))),
        spectrum=spec,
        bound=_spectrum_bound(spec),
        label=label,
    )
    return _with_decay(f)


@dataclass(frozen=True)
class TwoAtomFamily:
    """``f(x) = (1 - alpha) e^{-ix} + alpha e^{ix}``; characteristic iff ``0 <= alpha <= 1``."""

    alpha: float

    def measure(self) -> SpectralMeasure:
        a = float(self.alpha)
        return SpectralMeasure(((-1.0, 1.0 - a), (1.0, a)), (), signed=not 0.0 <= a <= 1.0)

    def function(self) -> CandidateFunction:
        a = float(self.alpha)
        return exponential_sum([(-1.0, 1.0 - a), (1.0, a)], "two-atom", {"alpha": a}, label=f"two-atom(alpha={a:g})")


def black_box(
    fn: Callable[[np.ndarray], np.ndarray],
    name: str,
    params: Mapping[str, float] | None = None,
    *,
    decay_class: DecayClass = DecayClass.UNKNOWN,
    bound: float = 1.0,
    breakpoints: Sequence[float] = (),
    label: str = "",
) -> CandidateFunction:
    """Wrap an arbitrary vectorised callable."""
    return CandidateFunction(
        evaluator=fn,
        source=Catalog(name, tuple(sorted((k, float(v)) for k, v in (params or {}).items()))),
        decay_class=decay_class,
        bound=bound,
        breakpoints=tuple(breakpoints),
        label=label or name,
    )


def sampled_function(t, values, tail: str = "zero", label: str = "") -> CandidateFunction:
    src = Sampled(np.asarray(t, dtype=float), np.asarray(values, dtype=complex), tail)
    f = CandidateFunction(
        evaluator=src,
        source=src,
        bound=float(np.max(np.abs(src.values))),
        breakpoints=tuple(src.t) if src.t.size <= 400 else (),
        label=label or "samples",
    )
    return _with_decay(f)


def load_samples(path: str | Path, tail: str = "zero") -> CandidateFunction:
    """Read a CSV with columns ``t, re_f, im_f`` (header row required)."""
    ts, re, im = [], [], []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = {"t", "re_f", "im_f"} - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"sample file lacks columns {sorted(missing)}")
        for row in reader:
            ts.append(float(row["t"]))
            re.append(float(row["re_f"]))
            im.append(float(row["im_f"]))
    t = np.array(ts)
    if t.size < 2 or np.any(np.diff(t) <= 0):
        raise ValueError("sample abscissae must be strictly increasing")
    return sampled_function(t, np.array(re) + 1j * np.array(im), tail=tail, label=Path(path).name)


def mixture(f1: CandidateFunction, f2: CandidateFunction, lam: float) -> CandidateFunction:
    """Convex combination ``lam*f1 + (1-lam)*f2``."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("mixture weight must lie in [0, 1]")
    label = f"mix({lam:g}*{f1.label or '?'}, {1 - lam:g}*{f2.label or '?'})"
    if f1.spectrum is not None and f2.spectrum is not None:
        m = f1.spectrum.scaled(lam) + f2.spectrum.scaled(1.0 - lam)
        if m.is_signed:
            return _with_decay(
                CandidateFunction(_spectrum_evaluator(m), Catalog("mixture"), spectrum=m, bound=_spectrum_bound(m), label=label)
            )
        return char_function_from_measure(SpectralMeasure(m.atoms, m.densities), label=label)
    if (
        f1.is_sampled
        and f2.is_sampled
        and f1.source.tail == f2.source.tail
        and np.array_equal(f1.source.t, f2.source.t)
    ):
        return sampled_function(f1.source.t, lam * f1.source.values + (1 - lam) * f2.source.values, f1.source.tail, label)

    def evaluate(t):
        return lam * f1(t) + (1.0 - lam) * f2(t)

    classes = {f1.decay_class, f2.decay_class}
    if classes == {DecayClass.INTEGRABLE}:
        decay = DecayClass.INTEGRABLE
    elif DecayClass.NOT_INTEGRABLE in classes and DecayClass.UNKNOWN not in classes:
        decay = DecayClass.NOT_INTEGRABLE
    else:
        decay = DecayClass.UNKNOWN
    return CandidateFunction(
        evaluate,
        Catalog("mixture", (("lambda", float(lam)),)),
        decay_class=decay,
        bound=lam * f1.bound + (1 - lam) * f2.bound,
        breakpoints=tuple(sorted(set(f1.breakpoints) | set(f2.breakpoints))),
        label=label,
    )


# ---------------------------------------------------------------------------
# Decay classification and measure restriction
# ---------------------------------------------------------------------------


def classify_decay(f: CandidateFunction) -> DecayClass:
    """Decide whether ``∫ |f(t)|/(1+|t|) dt`` converges."""
    if f.spectrum is not None:
        m = f.spectrum
        # a nonzero atomic part makes f almost periodic, so it cannot decay
        atomic = {}
        for x, w in m.atoms:
            atomic[x] = atomic.get(x, 0.0) + w
        if any(w != 0.0 for w in atomic.values()):
            return DecayClass.NOT_INTEGRABLE
        # all catalogue densities have |f(t)| = O(1/|t|) or faster
        return DecayClass.INTEGRABLE
    if isinstance(f.source, Sampled):
        s = f.source
        mags = np.abs(s.values)
        peak = float(mags.max()) if mags.size else 0.0
        ends = max(mags[0], mags[-1])
        if peak == 0.0 or ends <= 1e-6 * peak:
            return DecayClass.INTEGRABLE
        return DecayClass.NOT_INTEGRABLE if s.tail == "hold" else DecayClass.UNKNOWN
    return f.decay_class


def _with_decay(f: CandidateFunction) -> CandidateFunction:
    from dataclasses import replace

    return replace(f, decay_class=classify_decay(f))


def restrict_measure(m: SpectralMeasure, side: str) -> SpectralMeasure:
    """``2 m|_{[0,inf)} - m{0}`` (side ``"nonneg"``) or ``2 m|_{(-inf,0]} - m{0}`` (``"nonpos"``).

    Densities are carried over as half-line restrictions, which are not in the
    named catalogue; they are represented by :class:`HalfDensity`.
    """
    if side not in ("nonneg", "nonpos"):
        raise ValueError("side must be 'nonneg' or 'nonpos'")
    keep = (lambda x: x > 0) if side == "nonneg" else (lambda x: x < 0)
    atoms = [(x, 2.0 * w) for x, w in m.atoms if keep(x)]
    w0 = m.atom_at_zero()
    if w0 != 0.0:
        atoms.append((0.0, w0))
    halves = tuple(HalfDensity(d, side) for d in m.densities)
    return RestrictedMeasure(tuple(sorted(atoms)), halves, signed=m.signed)


@dataclass(frozen=True)
class HalfDensity:
    """Twice a density restricted to one half-line."""

    density: Density
    side: str

    @property
    def mass(self) -> float:
        return 2.0 * self.density.mass * half_line_mass(self.density, self.side)

    def interval(self) -> tuple[float, float]:
        lo, hi = self.density.support()
        if self.side == "nonneg":
            return max(lo, 0.0), hi
        return lo, min(hi, 0.0)


def half_line_mass(d: Density, side: str) -> float:
    """Unit-density probability of ``[0, inf)`` or ``(-inf, 0]``."""
    p = d.p
    if d.name == "gaussian":
        right = 0.5 * math.erfc(-p["mean"] / (p["stddev"] * math.sqrt(2)))
    elif d.name == "cauchy":
        right = 0.5 + math.atan(p["location"] / p["scale"]) / math.pi
    elif d.name == "laplace":
        mu, s = p["location"], p["scale"]
        right = 1 - 0.5 * math.exp(-mu / s) if mu >= 0 else 0.5 * math.exp(mu / s)
    else:
        a, b = p["a"], p["b"]
        right = min(max((b - max(a, 0.0)) / (b - a), 0.0), 1.0)
    return right if side == "nonneg" else 1.0 - right


@dataclass(frozen=True)
class RestrictedMeasure:
    """Result of :func:`restrict_measure`: atoms plus half-line densities."""

    atoms: tuple[tuple[float, float], ...]
    densities: tuple[HalfDensity, ...] = ()
    signed: bool = False

    def __post_init__(self):
        if not self.signed:
            for _, w in self.atoms:
                if w < 0:
                    raise InvalidMeasure("restricted measure has negative weight")

    @property
    def total_mass(self) -> float:
        return math.fsum(w for _, w in self.atoms) + math.fsum(d.mass for d in self.densities)


# ---------------------------------------------------------------------------
# Screens
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScreenResult:
    passed: bool
    hermitian_deviation: float
    worst_x: float
    value_at_zero: complex
    max_modulus: float
    tol: float
    failures: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "hermitian_deviation": self.hermitian_deviation,
            "worst_x": self.worst_x,
            "value_at_zero": [self.value_at_zero.real, self.value_at_zero.imag],
            "max_modulus": self.max_modulus,
            "tol": self.tol,
            "failures": list(self.failures),
        }


def default_screen_grid() -> np.ndarray:
    return np.linspace(-25.0, 25.0, 1001)


def hermitian_screen(f: CandidateFunction, grid: Sequence[float] | None = None, tol: float | None = None) -> ScreenResult:
    """Check ``f(-x) = conj f(x)``, ``f(0) = 1`` and ``|f| <= 1`` on a symmetric grid."""
    x = default_screen_grid() if grid is None else np.asarray(grid, dtype=float)
    if x.size == 0:
        raise ValueError("screen grid must be nonempty")
    if not np.allclose(np.sort(x), np.sort(-x), atol=1e-12, rtol=0):
        raise ValueError("screen grid must be symmetric about 0")
    tol = f.mass_tol if tol is None else tol
    fx = f(x)
    fmx = f(-x)
    dev = np.abs(fmx - np.conj(fx))
    i = int(np.argmax(dev))
    f0 = complex(f(np.array([0.0]))[0])
    modulus = float(np.max(np.abs(fx)))
    failures = []
    if dev[i] > tol:
        failures.append("hermitian")
    if abs(f0 - 1.0) > tol:
        failures.append("value_at_zero")
    if modulus > 1.0 + tol:
        failures.append("modulus")
    return ScreenResult(
        passed=not failures,
        hermitian_deviation=float(dev[i]),
        worst_x=float(x[i]),
        value_at_zero=f0,
        max_modulus=modulus,
        tol=tol,
        failures=tuple(failures),
    )


def is_real_even(f: CandidateFunction, grid: Sequence[float] | None = None, tol: float = 1e-10) -> bool:
    x = default_screen_grid() if grid is None else np.asarray(grid, dtype=float)
    fx = f(x)
    return bool(np.max(np.abs(fx.imag)) <= tol and np.max(np.abs(fx - f(-x))) <= tol)
