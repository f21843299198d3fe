"""Entanglement of n-qubit X-states under dephasing and depolarizing noise."""

from .channels import Channel, dephase, depolarize3
from .concurrence import concurrence_terms, tau3
from .esd import witness_expectation, witness_threshold
from .membership import is_generalized_ghz_diagonal
from .spectra import eigenvalues, negativities, partial_transpose, pt_spectrum
from .xcore import XState, from_generalized_ghz_diagonal, from_ghz_types, validate

__all__ = [
    "Channel",
    "XState",
    "concurrence_terms",
    "dephase",
    "depolarize3",
    "eigenvalues",
    "from_generalized_ghz_diagonal",
    "from_ghz_types",
    "is_generalized_ghz_diagonal",
    "negativities",
    "partial_transpose",
    "pt_spectrum",
    "tau3",
    "validate",
    "witness_expectation",
    "witness_threshold",
]
