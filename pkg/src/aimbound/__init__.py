"""Bound states of D-dimensional radial problems by the asymptotic iteration method."""

from .aim import AimProblem, AimResult, find_roots, solve_state, solve_states
from .potentials import (
    HarmonicOscillator,
    KratzerFues,
    Pseudoharmonic,
    aim_energies,
    closed_form_energy,
    effective_exponent,
    reduce,
)
from .wavefunctions import build_state, count_nodes, ode_residual, overlap

__all__ = [
    "AimProblem",
    "AimResult",
    "HarmonicOscillator",
    "KratzerFues",
    "Pseudoharmonic",
    "aim_energies",
    "build_state",
    "closed_form_energy",
    "count_nodes",
    "effective_exponent",
    "find_roots",
    "ode_residual",
    "overlap",
    "reduce",
    "solve_state",
    "solve_states",
]
