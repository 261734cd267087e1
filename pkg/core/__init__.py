"""
Core PC+ module.

Provides the formula substrate, causal theories, domain data models,
the exception hierarchy and configuration shared by the parser, the
model finders and the reasoning engines.
"""

from core.errors import (
    PCPlusError,
    SignatureError,
    UndeclaredVariableError,
    UnscopedVariableError,
    PreconditionViolatedError,
    InconsistentDomainError,
    SubsequenceMismatchError,
    StepSyntaxError,
    StateSpaceLimitError,
    DomainLoadError,
)
from core.formula import (
    ACTION_DOMAIN,
    TRUE,
    FALSE,
    Variable,
    VariableClass,
    Signature,
    Formula,
    Constant,
    Atom,
    Negation,
    Conjunction,
    Interpretation,
    conjoin,
    disjoin,
    differs,
    satisfies,
    enumerate_interpretations,
    count_interpretations,
)
from core.causal import CausalRule, CausalTheory, reduct, is_model, models, is_consistent
from core.models import (
    StaticLaw,
    DynamicLaw,
    ContextLaw,
    ActionDescription,
    InitialDatabase,
    Severity,
    Diagnostic,
    Context,
    StateSet,
    Action,
    Observation,
    Modality,
    LabeledStep,
    possibly,
    certainly,
)
from core.config import Config, load_config, create_sample_config

__all__ = [
    "PCPlusError",
    "SignatureError",
    "UndeclaredVariableError",
    "UnscopedVariableError",
    "PreconditionViolatedError",
    "InconsistentDomainError",
    "SubsequenceMismatchError",
    "StepSyntaxError",
    "StateSpaceLimitError",
    "DomainLoadError",
    "ACTION_DOMAIN",
    "TRUE",
    "FALSE",
    "Variable",
    "VariableClass",
    "Signature",
    "Formula",
    "Constant",
    "Atom",
    "Negation",
    "Conjunction",
    "Interpretation",
    "conjoin",
    "disjoin",
    "differs",
    "satisfies",
    "enumerate_interpretations",
    "count_interpretations",
    "CausalRule",
    "CausalTheory",
    "reduct",
    "is_model",
    "models",
    "is_consistent",
    "StaticLaw",
    "DynamicLaw",
    "ContextLaw",
    "ActionDescription",
    "InitialDatabase",
    "Severity",
    "Diagnostic",
    "Context",
    "StateSet",
    "Action",
    "Observation",
    "Modality",
    "LabeledStep",
    "possibly",
    "certainly",
    "Config",
    "load_config",
    "create_sample_config",
]
