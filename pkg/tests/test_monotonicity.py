import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from charfn import catalog
from charfn.func_model import DecayClass, SpectralMeasure, TwoAtomFamily, char_function_from_measure, classify_decay, mixture
from charfn.monotonicity import (
    AfInterval,
    Decision,
    MonotonicityReport,
    NotApplicable,
    VerdictConfig,
    check_absolute_monotone,
    check_complete_monotone,
    solve_af_interval,
    verdict_theorem1,
    verdict_theorem2,
    verdict_theorem3,
)
from charfn.transforms import ImaginaryAxisGrid, TransformKind, TransformTable, a_f_from_measure, build_table

N = 6
GRID = ImaginaryAxisGrid(0.01, 10.0, 40)


def exact_table(derivs, side, errors=0.0):
    """Table of an explicit function given by its list of derivative callables."""
    ys = GRID.points(side)
    vals = np.array([d(ys) for d in derivs], dtype=complex)
    errs = np.full(vals.shape, float(errors))
    return TransformTable(ys, len(derivs) - 1, vals, errs, TransformKind.CAUCHY, side)


def exp_table(side, sign=-1.0, scale=1.0):
    # scale * e^{sign*y} and its derivatives
    return exact_table([lambda y, n=n: scale * sign**n * np.exp(sign * y) for n in range(N + 1)], side)


def test_exponential_is_completely_monotone():
    r = check_complete_monotone(exp_table("upper"), 0.0, 1e-7)
    assert r.passed and r.status == "pass"
    assert len(r.per_order_min) == N + 1
    assert r.worst_violation[2] == min(r.per_order_min)


def test_cosine_is_not_completely_monotone():
    derivs = [lambda y, n=n: np.cos(y + n * math.pi / 2) for n in range(N + 1)]
    r = check_complete_monotone(exact_table(derivs, "upper"), 0.0, 1e-7)
    assert not r.passed and r.status == "fail"
    assert r.per_order_min[2] < -0.9  # -cos(y) near y = 0


def test_growing_exponential_is_absolutely_monotone():
    # g(y) = e^{y} = -(0 + table) with table = -e^{y}
    r = check_absolute_monotone(exp_table("lower", 1.0, -1.0), 0.0, 1e-7)
    assert r.passed


def test_sides_are_enforced():
    with pytest.raises(ValueError):
        check_complete_monotone(exp_table("lower", 1.0), 0.0)
    with pytest.raises(ValueError):
        check_absolute_monotone(exp_table("upper"), 0.0)


def test_two_atom_hand_formulas():
    alpha = 1.2
    a_f = (2 * alpha - 1) / math.e
    f = TwoAtomFamily(alpha).function()
    up = build_table(f, TransformKind.MODIFIED, "upper", GRID, N)
    lo = build_table(f, TransformKind.MODIFIED, "lower", GRID, N)
    # upper side alone passes: K + a_f = 2 alpha e^{-y}
    assert check_complete_monotone(up, a_f).passed
    r = check_absolute_monotone(lo, a_f)
    assert not r.passed
    order, y, value = r.worst_violation
    assert value == pytest.approx(-0.4 * math.exp(y), rel=1e-12)
    # alpha = 1/2 with a_f = 0 gives g = e^{y}
    lo = build_table(TwoAtomFamily(0.5).function(), TransformKind.MODIFIED, "lower", GRID, N)
    r = check_absolute_monotone(lo, 0.0)
    assert r.passed and r.per_order_min[0] == pytest.approx(math.exp(lo.grid[0]), rel=1e-12)


def test_banding():
    ys = GRID.points("upper")
    vals = np.ones((2, ys.size), dtype=complex)
    vals[1] *= -1.0  # (-1)^1 * (-1) = 1, fine
    errs = np.zeros(vals.shape)
    vals[0, 3] = -5e-7  # inside band once error estimate is 1e-6
    errs[0, 3] = 1e-6
    vals[0, 5] = -1e-3  # far beyond
    errs[0, 7] = 1.0  # unresolved
    t = TransformTable(ys, 1, vals, errs, TransformKind.CAUCHY, "upper")
    r = check_complete_monotone(t, 0.0, 1e-7)
    assert (r.beyond_band, r.within_band, r.unresolved) == (1, 1, 1)
    assert r.worst_certified == (0, float(ys[5]), -1e-3)
    vals[0, 5] = 1.0
    r = check_complete_monotone(TransformTable(ys, 1, vals, errs, TransformKind.CAUCHY, "upper"), 0.0, 1e-7)
    assert r.status == "inconclusive"


def test_imaginary_part_is_judged():
    t = exp_table("upper")
    vals = t.values.copy()
    vals[2, 0] += 1e-3j
    r = check_complete_monotone(TransformTable(t.grid, N, vals, t.errors, t.kind, "upper"))
    assert r.nonreal_beyond == 1 and r.status == "fail" and not r.passed
    assert r.imag_max == pytest.approx(1e-3)


def test_report_round_trip():
    r = check_complete_monotone(exp_table("upper"), 0.3)
    assert MonotonicityReport.from_dict(r.to_dict()) == r


@given(st.floats(-5, 5), st.floats(-5, 5))
def test_offset_only_moves_order_zero(c1, c2):
    t = build_table(catalog.build("gaussian"), TransformKind.CAUCHY, "upper", ImaginaryAxisGrid(0.1, 10, 8), 4)
    lo = build_table(catalog.build("gaussian"), TransformKind.CAUCHY, "lower", ImaginaryAxisGrid(0.1, 10, 8), 4)
    for check, tab, sign in ((check_complete_monotone, t, 1), (check_absolute_monotone, lo, -1)):
        r1, r2 = check(tab, c1), check(tab, c2)
        assert r1.per_order_min[1:] == r2.per_order_min[1:]
        assert r1.per_order_min[0] - r2.per_order_min[0] == pytest.approx(sign * (c1 - c2), abs=1e-14)


def test_af_interval_point_mass_at_zero():
    f = catalog.build("point-mass")
    up = build_table(f, TransformKind.MODIFIED, "upper", GRID, 2)
    lo = build_table(f, TransformKind.MODIFIED, "lower", GRID, 2)
    iv = solve_af_interval(up, lo)
    assert (iv.lower, iv.upper) == (-1.0, 1.0)
    assert iv.feasible and iv.contains(0.0) and iv.choose() == 0.0


def test_af_interval_choice_rules():
    assert AfInterval(-1.0, 3.0, True).choose() == 1.0
    assert AfInterval(-math.inf, 3.0, True).choose() == 2.0
    assert AfInterval(2.0, math.inf, True).choose() == 3.0
    iv = AfInterval(-math.inf, 1.0, True)
    assert AfInterval.from_dict(iv.to_dict()) == iv


@given(st.floats(-0.5, 1.5))
def test_af_feasibility_matches_invariant(alpha):
    f = TwoAtomFamily(alpha).function()
    up = build_table(f, TransformKind.MODIFIED, "upper", GRID, 0)
    lo = build_table(f, TransformKind.MODIFIED, "lower", GRID, 0)
    iv = solve_af_interval(up, lo, 1e-7)
    assert iv.feasible == (iv.lower <= iv.upper + 1e-7)
    if 0 <= alpha <= 1:
        assert iv.feasible and iv.contains((2 * alpha - 1) / math.e, 1e-12)


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_two_atom_pass(alpha):
    assert verdict_theorem2(TwoAtomFamily(alpha).function()).decision is Decision.PASS


@pytest.mark.parametrize("alpha", [-0.1, -0.2, 1.2, 2.0])
def test_two_atom_fail(alpha):
    v = verdict_theorem2(TwoAtomFamily(alpha).function())
    assert v.decision is Decision.FAIL
    assert any(w.code in ("VIOLATION", "AF_INFEASIBLE") for w in v.warnings)


def test_negative_alpha_fails_on_upper_derivatives_even_with_feasible_constant():
    # for alpha < 0 the upper-side derivatives carry the factor 2 alpha < 0
    f = TwoAtomFamily(-0.2).function()
    v = verdict_theorem2(f)
    upper = v.evidence["reports"]["upper"]
    assert min(upper["per_order_min"][1:]) < -1e-3


def test_constant_one_passes():
    assert verdict_theorem2(catalog.build("point-mass")).decision is Decision.PASS


@pytest.mark.parametrize("name", ["gaussian", "laplace-distribution", "cauchy-distribution", "uniform", "triangular"])
def test_theorem3_positives(name):
    v = verdict_theorem3(catalog.build(name))
    assert v.decision is Decision.PASS, [w.message for w in v.warnings]


def test_theorem3_quartic_fails_with_certified_violation():
    v = verdict_theorem3(catalog.build("quartic"))
    assert v.decision is Decision.FAIL
    order, y, value = v.evidence["reports"]["upper"]["worst_certified"]
    assert order >= 4 and value < -1.0


def test_theorem3_needs_integrability():
    with pytest.raises(NotApplicable):
        verdict_theorem3(TwoAtomFamily(0.5).function())


def test_theorem3_unknown_decay_is_not_a_pass():
    t = np.linspace(-2, 2, 41)
    from charfn.func_model import sampled_function

    f = sampled_function(t, np.exp(-t * t / 2))
    assert classify_decay(f) is DecayClass.UNKNOWN
    v = verdict_theorem3(f, VerdictConfig(max_order=3))
    assert v.decision is not Decision.PASS
    assert any(w.code == "UNKNOWN_DECAY" for w in v.warnings)


@pytest.mark.parametrize("name", ["cauchy-distribution", "cosine", "gaussian", "laplace-distribution"])
def test_theorem1_real_even(name):
    assert verdict_theorem1(catalog.build(name)).decision is Decision.PASS


def test_theorem1_cosine_table_is_exp():
    v = verdict_theorem1(catalog.build("cosine"))
    t = v.tables["upper"]
    np.testing.assert_allclose(t.values[0].real, np.exp(-t.grid), rtol=1e-14)


def test_theorem1_blindness():
    f = TwoAtomFamily(1.2).function()
    with pytest.raises(NotApplicable):
        verdict_theorem1(f)
    v = verdict_theorem1(f, strict=False)
    assert v.decision is Decision.PASS
    assert {"NOT_APPLICABLE", "SCREEN_IGNORED"} <= {w.code for w in v.warnings}


def test_theorem1_screen_decides_for_real_even_input():
    v = verdict_theorem1(catalog.build("perturbed-gaussian", {"eps": 1.0}))
    assert v.decision is Decision.FAIL


def test_verdict_invariants_on_catalog():
    for e in catalog.standard_suite():
        v = verdict_theorem2(e.function())
        codes = {w.code for w in v.warnings}
        if v.decision is Decision.FAIL:
            assert codes & {"VIOLATION", "AF_INFEASIBLE", "SCREEN_FAILED", "NONREAL"}
        elif v.decision is Decision.INCONCLUSIVE:
            assert codes & {"WITHIN_BAND", "UNRESOLVED", "UNKNOWN_DECAY"}
        assert v.config_digest == VerdictConfig().digest()


def test_theorem_paths_agree_on_integrable_catalog():
    for e in catalog.standard_suite():
        f = e.function()
        if classify_decay(f) is not DecayClass.INTEGRABLE:
            continue
        d2 = verdict_theorem2(f).decision
        d3 = verdict_theorem3(f).decision
        if Decision.INCONCLUSIVE not in (d2, d3):
            assert d2 == d3, e.label


def test_measure_constant_lies_in_interval():
    for e in catalog.standard_suite():
        f = e.function()
        if f.spectrum is None or f.spectrum.is_signed:
            continue
        v = verdict_theorem2(f)
        if v.decision is Decision.PASS:
            iv = AfInterval.from_dict(v.evidence["af_interval"])
            assert iv.contains(a_f_from_measure(f.spectrum), 1e-7), e.label
            assert v.evidence["measure_af"]["in_interval"]


PASSING = ["gaussian", "cauchy-distribution", "laplace-distribution", "uniform", "cosine", "shifted-gaussian"]


@pytest.mark.parametrize("lam", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("pair", [("gaussian", "cauchy-distribution"), ("cosine", "shifted-gaussian"), ("uniform", "laplace-distribution")])
def test_mixture_closure(lam, pair):
    f1, f2 = (catalog.build(n) for n in pair)
    assert verdict_theorem2(f1).decision is Decision.PASS
    assert verdict_theorem2(f2).decision is Decision.PASS
    assert verdict_theorem2(mixture(f1, f2, lam)).decision is Decision.PASS


def test_mixture_closure_black_box():
    # no spectrum: the mixture goes through black-box quadrature
    from charfn.func_model import black_box

    g = catalog.build("gaussian")
    c = catalog.build("cauchy-distribution")
    bb = black_box(lambda t: 0.5 * g(t) + 0.5 * c(t), "mix", decay_class=DecayClass.INTEGRABLE, breakpoints=(0.0,))
    v = verdict_theorem3(bb, VerdictConfig(max_order=3))
    assert v.decision is Decision.PASS, [w.message for w in v.warnings]


def test_config_digest_depends_on_settings():
    assert VerdictConfig().digest() != VerdictConfig(max_order=3).digest()
    assert VerdictConfig().digest() == VerdictConfig(workers=8).digest()
    with pytest.raises(ValueError):
        VerdictConfig(tol_sign=0.0)
