"""Evaluate, classify, construct and search nested recursions with
Conolly-like solutions."""
from .analysis import (ConollySignature, FrequencyProfile, fit_conolly, frequency,
                       gf_coefficients, is_slow, ratio_estimate, ruler)
from .ceiling import (CeilingVerdict, check_conditions, formal_satisfy_oracle,
                      min_initial_conditions)
from .engine import Death, EvalResult, evaluate
from .kernel import BACKEND
from .notation import RecursionSpec, RecursionTerm, SpecSyntaxError, format_spec, parse
from .reference import admissible_pairs, canonical_recursion, definitional_sequence
from .search import SearchConfig, SearchHit, enumerate_box, run_search
from .transforms import (interleave_order_multiplying, perturb, shift_alpha_zero,
                         weave_fixed_order)
from .trees import build_T, build_U, count_cells_L, count_leaves_M, prune_T, prune_U

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CeilingVerdict", "ConollySignature", "Death", "EvalResult",
    "FrequencyProfile", "RecursionSpec", "RecursionTerm", "SearchConfig", "SearchHit",
    "SpecSyntaxError", "admissible_pairs", "build_T", "build_U", "canonical_recursion",
    "check_conditions", "count_cells_L", "count_leaves_M", "definitional_sequence",
    "enumerate_box", "evaluate", "fit_conolly", "format_spec", "formal_satisfy_oracle",
    "frequency", "gf_coefficients", "interleave_order_multiplying", "is_slow",
    "min_initial_conditions", "parse", "perturb", "prune_T", "prune_U", "ratio_estimate",
    "ruler", "run_search", "shift_alpha_zero", "weave_fixed_order", "__version__",
]
