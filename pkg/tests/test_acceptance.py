"""Acceptance criteria, one test each, at the stated tolerances.

Every test records a one-line PASS/FAIL summary that is printed at the end of
the pytest run (see ``conftest.pytest_terminal_summary``).
"""

import json
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from charfn import catalog
from charfn.cli import main
from charfn.func_model import DecayClass, TwoAtomFamily, classify_decay, mixture
from charfn.monotonicity import (
    AfInterval,
    Decision,
    VerdictConfig,
    check_absolute_monotone,
    check_complete_monotone,
    verdict_theorem1,
    verdict_theorem2,
)
from charfn.oracle import bochner_test, validate_kernel_ft
from charfn.transforms import (
    ImaginaryAxisGrid,
    TransformKind,
    a_f_from_measure,
    build_table,
    cauchy_transform,
    derivative_consistency,
    poisson_cauchy_identity_check,
    poisson_extension,
)

INSIDE = (0.0, 0.25, 0.5, 0.75, 1.0)
OUTSIDE = (-0.1, 1.2, 2.0)
RESULTS = {}


def record(n, ok, detail):
    RESULTS[n] = bool(ok)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_two_atom_boundary(capsys):
    rows = []
    for alpha in INSIDE + OUTSIDE:
        t0 = time.perf_counter()
        code = main(["check", "--catalog", "two-atom", "--param", f"alpha={alpha}"])
        elapsed = time.perf_counter() - t0
        verdict = json.loads(capsys.readouterr().out)["verdict"]
        want = "PASS" if 0 <= alpha <= 1 else "FAIL"
        rows.append((alpha, verdict, want, code, elapsed))
    ok = all(v == w and c == (0 if w == "PASS" else 1) and dt < 5.0 for _, v, w, c, dt in rows)
    slowest = max(r[4] for r in rows)
    summary = ", ".join(f"{a:g}:{v}" for a, v, *_ in rows)
    record(1, ok, f"two-atom verdicts {summary}; slowest {slowest:.2f}s (< 5s)")


def test_criterion_2_theorem1_blindness():
    ys = ImaginaryAxisGrid(1e-2, 1e2, 20).points("upper")
    worst = 0.0
    verdicts = []
    for alpha in INSIDE + OUTSIDE:
        f = TwoAtomFamily(alpha).function()
        u = np.array([poisson_extension(f, 0.0, y).value for y in ys])
        worst = max(worst, float(np.max(np.abs(u - np.exp(-ys)))))
        v = verdict_theorem1(f, strict=False)
        flagged = any(w.code == "NOT_APPLICABLE" for w in v.warnings)
        # alpha = 1/2 gives cos(t), which is real and even: T1 applies there
        verdicts.append(v.decision is Decision.PASS and flagged == (alpha != 0.5))
    record(
        2,
        worst <= 1e-6 and all(verdicts),
        f"max |u(0,y) - e^-y| = {worst:.2e} over 20 y (<= 1e-6); T1 PASS with not-applicable flag for every complex case",
    )


def test_criterion_3_gaussian_closed_form(oracle_values):
    f = catalog.build("gaussian")
    devs = []
    for y, ref in oracle_values["gaussian_k_upper"]:
        # the closed form e^{y^2/2} erfc(y/sqrt 2) frozen from mpmath
        for method in ("spectral", "quadrature"):
            devs.append(abs(cauchy_transform(f, y, method=method).value - ref))
    record(3, max(devs) <= 1e-7, f"max deviation from e^(y^2/2) erfc(y/sqrt2) at y in {{0.1,0.5,1,2,5}}: {max(devs):.2e} (<= 1e-7)")


def test_criterion_4_kernel_ft():
    dev, checks = validate_kernel_ft()
    specials = {(c.y, c.x): c.numeric for c in checks if c.x == 0 and abs(c.y) == 1}
    ok = (
        len(checks) == 20
        and dev <= 1e-6
        and abs(specials[(1.0, 0.0)] - 1) <= 1e-6
        and abs(specials[(-1.0, 0.0)] + 1) <= 1e-6
    )
    record(4, ok, f"{len(checks)} (y, x) pairs, max deviation {dev:.2e} (<= 1e-6), x=0 values 1 and -1 reproduced")


def test_criterion_5_poisson_cauchy_identity():
    pairs = [(0.0, 0.5), (0.3, 1.0), (-1.0, 0.2), (2.0, 2.0), (-0.7, 5.0)]
    devs = []
    for name in ("gaussian", "laplace-distribution", "cauchy-distribution"):
        f = catalog.build(name)
        devs += [poisson_cauchy_identity_check(f, x, y).deviation for x, y in pairs]
    record(5, len(devs) == 15 and max(devs) <= 1e-8, f"15 identity checks, max deviation {max(devs):.2e} (<= 1e-8)")


def test_criterion_6_oracle_agreement():
    suite = catalog.standard_suite()
    positives = sum(e.expected for e in suite)
    negatives = len(suite) - positives
    disagreements = []
    decided = 0
    correct = 0
    for e in suite:
        f = e.function()
        v = verdict_theorem2(f)
        oracle = bochner_test(f)
        if v.decision is Decision.INCONCLUSIVE:
            continue
        decided += 1
        correct += (v.decision is Decision.PASS) == e.expected
        if (v.decision is Decision.PASS) != oracle.passed:
            disagreements.append(e.label)
    ok = positives >= 10 and negatives >= 4 and not disagreements
    record(
        6,
        ok,
        f"{positives} positives, {negatives} negatives; {decided} decided, {len(disagreements)} oracle disagreements, "
        f"{correct}/{decided} match ground truth",
    )


def test_criterion_7_property_suites():
    grid = ImaginaryAxisGrid(1e-2, 1e2, 24)
    failures = []

    # constant-offset invariance: orders >= 1 are untouched by the offset
    for name in ("gaussian", "cauchy-distribution", "quartic"):
        f = catalog.build(name)
        up = build_table(f, TransformKind.MODIFIED, "upper", grid, 6)
        lo = build_table(f, TransformKind.MODIFIED, "lower", grid, 6)
        for c1, c2 in ((0.0, 0.7), (-3.0, 1e-3)):
            for check, tab in ((check_complete_monotone, up), (check_absolute_monotone, lo)):
                if check(tab, c1).per_order_min[1:] != check(tab, c2).per_order_min[1:]:
                    failures.append(f"offset {name}")

    # derivative columns vs finite differences
    for name in ("gaussian", "laplace-distribution", "triangular", "shifted-gaussian"):
        f = catalog.build(name)
        for kind in TransformKind:
            for side in ("upper",) if kind is TransformKind.POISSON else ("upper", "lower"):
                d = derivative_consistency(f, kind, side, ImaginaryAxisGrid(0.05, 20, 5).points(side), 6)
                if not d.passed or d.checked == 0:
                    failures.append(f"derivative {name} {kind.value} {side}")

    # mixture closure
    passing = [catalog.build(n) for n in ("gaussian", "cauchy-distribution", "cosine", "shifted-gaussian")]
    for i, f1 in enumerate(passing):
        for f2 in passing[i + 1 :]:
            for lam in (0.25, 0.5, 0.75):
                if verdict_theorem2(mixture(f1, f2, lam)).decision is not Decision.PASS:
                    failures.append(f"mixture {f1.label} {f2.label} {lam}")

    # the measure's own constant lies in the feasibility interval
    checked = 0
    for e in catalog.standard_suite():
        f = e.function()
        if f.spectrum is None or f.spectrum.is_signed:
            continue
        v = verdict_theorem2(f)
        if v.decision is Decision.PASS:
            checked += 1
            if not AfInterval.from_dict(v.evidence["af_interval"]).contains(a_f_from_measure(f.spectrum), 1e-7):
                failures.append(f"a_f {e.label}")
    record(
        7,
        not failures and checked >= 10,
        f"offset invariance, derivative consistency, mixture closure, a_f containment ({checked} measures); "
        f"{len(failures)} failures" + (f": {failures[:3]}" if failures else ""),
    )


def test_criterion_8_no_empirical_tables():
    # there is nothing tabulated to reproduce; the analytic values and
    # properties above are the whole acceptance surface
    missing = [n for n in range(1, 8) if n not in RESULTS]
    record(8, not missing and all(RESULTS.values()), "acceptance is analytic values plus properties; criteria 1-7 all ran")
