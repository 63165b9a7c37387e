"""Deciding set coherence of density-matrix families from Bargmann invariants."""

from .certify import (
    CoherenceVerdict,
    commutator_oracle,
    decide_set_coherence,
    gamma,
    gamma_spectral,
    total_gap,
)
from .invariants import Scenario, Word, canonical, delta, evaluate
from .states import DensityMatrix, StateFamily, new_density, random_density

__all__ = [
    "CoherenceVerdict",
    "DensityMatrix",
    "Scenario",
    "StateFamily",
    "Word",
    "canonical",
    "commutator_oracle",
    "decide_set_coherence",
    "delta",
    "evaluate",
    "gamma",
    "gamma_spectral",
    "new_density",
    "random_density",
    "total_gap",
]
