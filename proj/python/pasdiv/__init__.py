"""Entropy-based diversity optimisation for patient admission scheduling."""

from ._core import (
    ConfigError,
    ConstructionFailure,
    EvolveResult,
    Instance,
    ParseError,
    StateCorruption,
    StructuralError,
    compare,
    entropy_term,
    evaluate,
    evolve,
    generate,
    heatmap_csv,
    instance_from_json,
    is_feasible,
    max_entropy,
    population_entropy,
    quality_threshold,
    read_instance,
    robustness,
    seed_solve,
    validate,
    write_instance,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConstructionFailure",
    "EvolveResult",
    "Instance",
    "ParseError",
    "StateCorruption",
    "StructuralError",
    "compare",
    "entropy_term",
    "evaluate",
    "evolve",
    "generate",
    "heatmap_csv",
    "instance_from_json",
    "is_feasible",
    "max_entropy",
    "population_entropy",
    "quality_threshold",
    "read_instance",
    "robustness",
    "seed_solve",
    "validate",
    "write_instance",
]
