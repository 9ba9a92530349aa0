"""Numerical tests for characteristic functions via Cauchy-transform monotonicity."""

__version__ = "0.1.0"

from .func_model import (  # noqa: E402
    CandidateFunction,
    DecayClass,
    Density,
    SpectralMeasure,
    TwoAtomFamily,
    char_function_from_measure,
    classify_decay,
    hermitian_screen,
)
from .monotonicity import Decision, Verdict, VerdictConfig, verdict_theorem1, verdict_theorem2, verdict_theorem3  # noqa: E402
from .oracle import GramSpec, bochner_test  # noqa: E402
from .transforms import cauchy_transform, modified_cauchy_transform, poisson_extension  # noqa: E402

__all__ = [
    "CandidateFunction",
    "DecayClass",
    "Density",
    "SpectralMeasure",
    "TwoAtomFamily",
    "char_function_from_measure",
    "classify_decay",
    "hermitian_screen",
    "Decision",
    "Verdict",
    "VerdictConfig",
    "verdict_theorem1",
    "verdict_theorem2",
    "verdict_theorem3",
    "GramSpec",
    "bochner_test",
    "cauchy_transform",
    "modified_cauchy_transform",
    "poisson_extension",
]
