from ._core import (
    EjkError,
    Formula,
    Frame,
    Model,
    build_instance,
    check_proof,
    derive_k,
    generalize_constant,
    is_axiom,
    necessitate,
    parse,
    recognize,
    schemas,
    search_countermodel,
    substitute,
)

__all__ = [
    "EjkError",
    "Formula",
    "Frame",
    "Model",
    "build_instance",
    "check_proof",
    "derive_k",
    "generalize_constant",
    "is_axiom",
    "necessitate",
    "parse",
    "recognize",
    "schemas",
    "search_countermodel",
    "substitute",
]
