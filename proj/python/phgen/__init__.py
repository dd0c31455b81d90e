"""Controllability and stabilizability of port-Hamiltonian descriptor systems."""

from ._phgen import (
    PHSystem,
    SchemaError,
    TolerancePolicy,
    ValidationError,
    analyze,
    analyze_dae,
    interior_probe,
    numeric_rank,
    poly_roots,
    predicted_status,
    run_experiment,
    sample_system,
    validate,
    witness,
)

__all__ = [
    "PHSystem",
    "SchemaError",
    "TolerancePolicy",
    "ValidationError",
    "analyze",
    "analyze_dae",
    "interior_probe",
    "numeric_rank",
    "poly_roots",
    "predicted_status",
    "run_experiment",
    "sample_system",
    "validate",
    "witness",
]
