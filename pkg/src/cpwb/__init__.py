"""Workbench for classical processes.

Session types and processes with a syntax-directed checker, finite
denotations with an operational observation oracle, the negative
translation with synchronizers and transformers, and property suites for
adequacy and full abstraction.
"""

from .denotations import denote, equivalent, obs_space
from .harness import SuiteConfig, enumerate_formulas, enumerate_processes, run_suite
from .obs_transform import check_translation_theorem, full_abstraction_I, l_ctx, l_obs
from .oracle import adequacy_check, check_config, denote_config, observe
from .syntax import alpha_eq, dual, free_names, substitute
from .transformers import (
    check_transformer_correct,
    check_transformer_theorem,
    context_denotation,
    full_abstraction_II,
    transformer,
    transformer_context,
)
from .translation import (
    embed_ill,
    synchronizer,
    translate_formula_dual,
    translate_formula_ill,
    translate_process,
)
from .typing import System, check, check_context, fill

__all__ = [
    "System",
    "SuiteConfig",
    "adequacy_check",
    "alpha_eq",
    "check",
    "check_config",
    "check_context",
    "check_transformer_correct",
    "check_transformer_theorem",
    "check_translation_theorem",
    "context_denotation",
    "denote",
    "denote_config",
    "dual",
    "embed_ill",
    "enumerate_formulas",
    "enumerate_processes",
    "equivalent",
    "fill",
    "free_names",
    "full_abstraction_I",
    "full_abstraction_II",
    "l_ctx",
    "l_obs",
    "observe",
    "obs_space",
    "run_suite",
    "substitute",
    "synchronizer",
    "transformer",
    "transformer_context",
    "translate_formula_dual",
    "translate_formula_ill",
    "translate_process",
]
