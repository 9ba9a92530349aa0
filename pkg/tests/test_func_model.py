import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from charfn.func_model import (
    DecayClass,
    Density,
    InvalidMeasure,
    SpectralMeasure,
    TwoAtomFamily,
    black_box,
    char_function_from_measure,
    classify_decay,
    hermitian_screen,
    is_real_even,
    load_measure,
    load_samples,
    measure_from_dict,
    mixture,
    restrict_measure,
    sampled_function,
)

GAUSS = Density.make("gaussian", mean=0.0, stddev=1.0)


def test_gaussian_char_matches_quadrature(oracle_values):
    f = char_function_from_measure(SpectralMeasure((), (GAUSS,)))
    assert abs(f(1.0) - oracle_values["gaussian_f1_quad"]) < 1e-14


@pytest.mark.parametrize(
    "density",
    [
        Density.make("gaussian", mean=0.4, stddev=0.7),
        Density.make("laplace", location=-0.3, scale=1.5),
        Density.make("cauchy", location=0.2, scale=0.5),
        Density.make("uniform", a=-1.0, b=2.0),
    ],
)
@pytest.mark.parametrize("t", [0.0, 0.7, -2.5])
def test_closed_form_char_against_numeric(density, t):
    lo, hi = density.support()
    if math.isfinite(lo):
        re = integrate.quad(lambda x: math.cos(t * x) * density.pdf(x), lo, hi)[0]
        im = integrate.quad(lambda x: math.sin(t * x) * density.pdf(x), lo, hi)[0]
    elif t == 0:
        re, im = integrate.quad(density.pdf, -np.inf, np.inf)[0], 0.0
    else:
        # Fourier-weighted QUADPACK on both half-lines
        w = abs(t)
        even = lambda x: density.pdf(x) + density.pdf(-x)
        odd = lambda x: density.pdf(x) - density.pdf(-x)
        re = integrate.quad(even, 0, np.inf, weight="cos", wvar=w)[0]
        im = math.copysign(1, t) * integrate.quad(odd, 0, np.inf, weight="sin", wvar=w)[0]
    assert abs(density.char(t) - complex(re, im)) < 1e-7


def test_two_atom_values():
    f = TwoAtomFamily(0.3).function()
    t = np.array([0.0, 1.0, -2.0])
    np.testing.assert_allclose(f(t), 0.7 * np.exp(-1j * t) + 0.3 * np.exp(1j * t), atol=1e-15)
    assert classify_decay(f) is DecayClass.NOT_INTEGRABLE


@pytest.mark.parametrize(
    "bad",
    [
        dict(atoms=[{"x": 0.0, "w": -0.1}]),
        dict(density={"name": "gaussian", "params": {"mean": 0.0, "stddev": -1.0}}),
        dict(density={"name": "gaussian", "params": {"mean": 0.0}}),
        dict(density={"name": "student", "params": {"nu": 3.0}}),
        dict(density={"name": "uniform", "params": {"a": 1.0, "b": 0.0}}),
        dict(atoms=[{"x": 0.0}]),
    ],
)
def test_invalid_measures(bad):
    with pytest.raises(InvalidMeasure):
        measure_from_dict(bad)


def test_measure_file_round_trip(tmp_path):
    m = SpectralMeasure(((0.0, 0.25), (1.5, 0.25)), (Density.make("laplace", mass=0.5, location=0.0, scale=2.0),))
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m.to_dict()))
    back = load_measure(path)
    assert back == m
    assert back.is_probability()


def test_single_density_key():
    m = measure_from_dict({"density": {"name": "cauchy", "params": {"location": 0, "scale": 1}}})
    assert m.densities[0].name == "cauchy" and m.total_mass == 1.0


def test_samples_file(tmp_path):
    path = tmp_path / "s.csv"
    t = np.linspace(-3, 3, 13)
    rows = ["t,re_f,im_f"] + [f"{x},{math.exp(-x * x)},0" for x in t]
    path.write_text("\n".join(rows) + "\n")
    f = load_samples(path)
    assert f.is_sampled and f.mass_tol == 1e-6
    assert f(0.0) == pytest.approx(1.0)
    assert f(10.0) == 0.0


def test_samples_file_rejects_bad_layout(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("t,value\n0,1\n")
    with pytest.raises(ValueError):
        load_samples(path)
    path.write_text("t,re_f,im_f\n1,1,0\n0,1,0\n")
    with pytest.raises(ValueError):
        load_samples(path)


def test_decay_classes():
    assert classify_decay(char_function_from_measure(SpectralMeasure((), (GAUSS,)))) is DecayClass.INTEGRABLE
    assert classify_decay(char_function_from_measure(SpectralMeasure(((0.0, 1.0),)))) is DecayClass.NOT_INTEGRABLE
    t = np.linspace(-10, 10, 201)
    assert classify_decay(sampled_function(t, np.exp(-t * t / 2))) is DecayClass.INTEGRABLE
    short = np.linspace(-1, 1, 21)
    assert classify_decay(sampled_function(short, np.exp(-short**2))) is DecayClass.UNKNOWN
    assert classify_decay(sampled_function(short, np.exp(-short**2), tail="hold")) is DecayClass.NOT_INTEGRABLE


def test_screen():
    assert hermitian_screen(TwoAtomFamily(0.4).function()).passed
    bad = hermitian_screen(TwoAtomFamily(1.2).function())
    assert not bad.passed and bad.failures == ("modulus",)
    assert bad.max_modulus == pytest.approx(1.4, abs=1e-3)
    odd = black_box(lambda t: np.exp(-t * t) * (1 + 0.1j * t * t), "non-hermitian")
    assert "hermitian" in hermitian_screen(odd).failures
    shifted = black_box(lambda t: 0.9 * np.exp(-t * t), "low")
    assert hermitian_screen(shifted).failures == ("value_at_zero",)


def test_screen_needs_symmetric_grid():
    with pytest.raises(ValueError):
        hermitian_screen(TwoAtomFamily(0.5).function(), grid=[0.0, 1.0])


def test_real_even():
    assert is_real_even(TwoAtomFamily(0.5).function())
    assert not is_real_even(TwoAtomFamily(0.2).function())


def test_restrict_measure():
    r = restrict_measure(TwoAtomFamily(0.3).measure(), "nonneg")
    assert r.atoms == ((1.0, 0.6),)
    assert restrict_measure(SpectralMeasure(((0.0, 1.0),)), "nonpos").atoms == ((0.0, 1.0),)
    with pytest.raises(ValueError):
        restrict_measure(SpectralMeasure(), "left")


atom_lists = st.lists(st.tuples(st.floats(-5, 5), st.floats(0.01, 1.0)), min_size=1, max_size=5)


@given(atom_lists, st.floats(0.0, 1.0))
def test_restriction_masses_add_up(atoms, dens_mass):
    m = SpectralMeasure(tuple(atoms), (Density.make("gaussian", mass=dens_mass, mean=0.3, stddev=1.2),))
    pos = restrict_measure(m, "nonneg").total_mass
    neg = restrict_measure(m, "nonpos").total_mass
    assert pos + neg == pytest.approx(2 * m.total_mass, rel=1e-12)


@given(atom_lists)
def test_probability_measures_pass_screen(atoms):
    total = sum(w for _, w in atoms)
    m = SpectralMeasure(tuple((x, w / total) for x, w in atoms))
    f = char_function_from_measure(m)
    s = hermitian_screen(f)
    assert s.passed
    assert abs(s.value_at_zero - 1) < 1e-12


@given(st.floats(0.0, 1.0), st.floats(-2, 2))
def test_mixture_is_pointwise_convex_combination(lam, t):
    f1 = char_function_from_measure(SpectralMeasure((), (GAUSS,)))
    f2 = TwoAtomFamily(0.25).function()
    g = mixture(f1, f2, lam)
    assert abs(g(t) - (lam * f1(t) + (1 - lam) * f2(t))) < 1e-14
    assert g.spectrum is not None


def test_mixture_weight_range():
    f = TwoAtomFamily(0.5).function()
    with pytest.raises(ValueError):
        mixture(f, f, 1.5)
