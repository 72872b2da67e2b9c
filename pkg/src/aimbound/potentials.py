"""Molecular potentials in D dimensions and their reduction to AIM form.

Each potential is peeled into ``R(r) = ansatz(r) * U``, where the ansatz
carries the small-r power and the large-r decay, and ``U`` satisfies
``U'' = f0 U' + g0 U``.  The Gaussian-tailed potentials (oscillator and
pseudoharmonic) are reduced in the variable ``s = gamma r**2``, the Kratzer
potential in ``z = 2 eps r``.  In both variables the equation is of Kummer
type, so the termination determinant factors into the exact spectrum with no
spurious roots.  The literal radial form (variable ``r``) is kept for the
Gaussian-tailed potentials because it is the form usually written down; its
determinant carries x0-dependent extra roots and, for D = 1, l = 0, both
parities.

Units: the spectral parameter is ``lam = 2 mu E / hbar**2`` for the ``s``
and ``r`` forms and ``eps = sqrt(-2 mu E) / hbar`` for the Kratzer form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets
from .aim import AimProblem, AimResult, solve_states


@dataclass(frozen=True, kw_only=True)
class PotentialSpec:
    mu: float = 1.0
    hbar: float = 1.0
    D: int = 3
    ell: int = 0

    kind = "base"

    def __post_init__(self):
        if not (self.mu > 0 and self.hbar > 0):
            raise ValueError("mu and hbar must be positive")
        if int(self.D) != self.D or self.D < 1:
            raise ValueError("dimension D must be an integer >= 1")
        if int(self.ell) != self.ell or self.ell < 0:
            raise ValueError("ell must be a non-negative integer")

    @property
    def beta(self) -> float:
        """Angular separation constant l(l + D - 2)."""
        return self.ell * (self.ell + self.D - 2)


@dataclass(frozen=True, kw_only=True)
class HarmonicOscillator(PotentialSpec):
    omega: float

    kind = "oscillator"

    def __post_init__(self):
        super().__post_init__()
        if not self.omega > 0:
            raise ValueError("omega must be positive")

    @property
    def gamma(self) -> float:
        return self.mu * self.omega / self.hbar


@dataclass(frozen=True, kw_only=True)
class Pseudoharmonic(PotentialSpec):
    kappa: float
    r_e: float

    kind = "pseudoharmonic"

    def __post_init__(self):
        super().__post_init__()
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")
        if not self.r_e >= 0:
            raise ValueError("r_e must be non-negative")

    @property
    def gamma(self) -> float:
        # exp(-sqrt(mu kappa / 16 hbar^2) r^2) = exp(-gamma r^2 / 2)
        return 0.5 * math.sqrt(self.mu * self.kappa) / self.hbar

    @property
    def shift(self) -> float:
        """Constant part of 2 mu V / hbar^2, with its sign flipped."""
        return self.mu * self.kappa * self.r_e**2 / (2 * self.hbar**2)


@dataclass(frozen=True, kw_only=True)
class KratzerFues(PotentialSpec):
    A: float
    B: float

    kind = "kratzer"

    def __post_init__(self):
        super().__post_init__()
        if not self.A > 0:
            raise ValueError("A must be positive")
        if not self.B >= 0:
            raise ValueError("B must be non-negative")

    @classmethod
    def from_dissociation(cls, De: float, r0: float, **kw) -> KratzerFues:
        """Build from well depth ``De`` and equilibrium distance ``r0``."""
        return cls(A=2 * De * r0, B=De * r0**2, **kw)

    @property
    def alpha(self) -> float:
        return 2 * self.mu * self.A / self.hbar**2


def potential_value(spec: PotentialSpec, r):
    r = np.asarray(r, dtype=float)
    if isinstance(spec, HarmonicOscillator):
        if np.any(r < 0):
            raise ValueError("r must be non-negative")
        out = 0.5 * spec.mu * spec.omega**2 * r**2
    else:
        if np.any(r <= 0):
            raise ValueError(f"{spec.kind} potential is singular at r <= 0")
        if isinstance(spec, Pseudoharmonic):
            # (kappa r_e^2 / 8)(r/r_e - r_e/r)^2 without dividing by r_e
            out = spec.kappa * (r * r - spec.r_e**2) ** 2 / (8 * r * r)
        elif isinstance(spec, KratzerFues):
            out = -spec.A / r + spec.B / r**2
        else:
            raise TypeError(f"unknown potential {spec!r}")
    return float(out) if out.ndim == 0 else out


def _inverse_square_strength(spec: PotentialSpec) -> float:
    if isinstance(spec, Pseudoharmonic):
        return spec.mu * spec.kappa * spec.r_e**4 / spec.hbar**2
    if isinstance(spec, KratzerFues):
        return 8 * spec.mu * spec.B / spec.hbar**2
    return 0.0


def effective_exponent(spec: PotentialSpec) -> float:
    """Small-r power of the radial function.

    The positive root of ``v (v + D - 2) = l (l + D - 2) + s / 4``.  The
    oscillator has no inverse-square term and returns ``l`` itself, which for
    D = 1 picks the even branch (the formula would give 1 there).
    """
    if isinstance(spec, HarmonicOscillator):
        return float(spec.ell)
    s = _inverse_square_strength(spec)
    return 0.5 * ((2 - spec.D) + math.sqrt((2 * spec.ell + spec.D - 2) ** 2 + s))


def closed_form_energy(spec: PotentialSpec, n: int, paper_compat: bool = False) -> float:
    """Exact bound-state energy of radial state ``n``.

    ``paper_compat`` swaps the oscillator ladder for the single-step form
    hbar*omega*(n + l + D/2); it has no effect on the other potentials.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if isinstance(spec, HarmonicOscillator):
        step = 1 if paper_compat else 2
        return spec.hbar * spec.omega * (step * n + spec.ell + spec.D / 2)
    v = effective_exponent(spec)
    if isinstance(spec, Pseudoharmonic):
        root = math.sqrt(spec.kappa * spec.hbar**2 / spec.mu)
        return 0.25 * (4 * n + 2 * v + spec.D) * root - spec.kappa * spec.r_e**2 / 4
    if isinstance(spec, KratzerFues):
        return -2 * spec.mu * spec.A**2 / (spec.hbar**2 * (2 * n + 2 * v + spec.D - 1) ** 2)
    raise TypeError(f"unknown potential {spec!r}")


def potential_minimum(spec: PotentialSpec) -> float | None:
    """Location of the potential minimum, or None when unbounded below."""
    if isinstance(spec, HarmonicOscillator):
        return 0.0
    if isinstance(spec, Pseudoharmonic):
        return spec.r_e
    if isinstance(spec, KratzerFues):
        return 2 * spec.B / spec.A if spec.B > 0 else None
    raise TypeError(f"unknown potential {spec!r}")


@dataclass(frozen=True)
class ReducedProblem:
    """AIM-ready form of a radial problem.

    ``f0(p, x0, order)`` and ``g0(p, x0, order)`` return jets in
    ``variable`` for spectral parameter(s) ``p``.
    """

    spec: PotentialSpec
    variable: str
    parameter: str
    exponent: float
    gaussian_rate: float | None
    f0: Callable[[object, float, int], jets.Jet]
    g0: Callable[[object, float, int], jets.Jet]
    default_x0: float
    search_interval: tuple[float, float]
    energy_sign: int

    def param_to_energy(self, p):
        s = self.spec
        if self.parameter == "epsilon":
            return -(s.hbar**2) * np.square(p) / (2 * s.mu)
        return s.hbar**2 * np.asarray(p) / (2 * s.mu)

    def energy_to_param(self, E):
        s = self.spec
        if self.parameter == "epsilon":
            E = np.asarray(E)
            if np.any(E >= 0):
                raise ValueError("Kratzer bound states need E < 0")
            return np.sqrt(-2 * s.mu * E) / s.hbar
        return 2 * s.mu * np.asarray(E) / s.hbar**2

    def aim_problem(self, x0: float | None = None, **kw) -> AimProblem:
        x0 = self.default_x0 if x0 is None else float(x0)
        kw.setdefault("search_interval", self.search_interval)
        k_max = kw.get("k_max", 30)
        order = k_max + 2
        return AimProblem(
            x0=x0,
            build_f0=lambda p: self.f0(p, x0, order),
            build_g0=lambda p: self.g0(p, x0, order),
            energy_sign=self.energy_sign,
            **kw,
        )


def default_x0(reduced: ReducedProblem) -> float:
    return reduced.default_x0


def _gaussian_data(spec: PotentialSpec):
    if isinstance(spec, HarmonicOscillator):
        return spec.gamma, 0.0
    return spec.gamma, spec.shift


def reduce(spec: PotentialSpec, variable: str | None = None, n_max: int = 6) -> ReducedProblem:
    """Reduce ``spec`` to ``U'' = f0 U' + g0 U``.

    ``variable`` is ``"s"`` (default) or ``"r"`` for the oscillator and
    pseudoharmonic potentials and ``"z"`` for Kratzer.  ``n_max`` sizes the
    default search interval so that it holds states ``0..n_max + 1``.
    """
    v = effective_exponent(spec)
    D = spec.D
    if isinstance(spec, KratzerFues):
        if variable not in (None, "z"):
            raise ValueError("the Kratzer problem is reduced in z = 2 eps r")
        c = 2 * v + D - 1
        alpha = spec.alpha

        def f0(p, x0, order):
            return 1.0 - c * jets.var(x0, order).reciprocal()

        def g0(p, x0, order):
            p = np.asarray(p, dtype=float)
            return jets.var(x0, order).reciprocal() * (0.5 * (c - alpha / p))

        lo = alpha / (c + 2 * (n_max + 2))
        hi = alpha / max(c - 1.0, 0.5)
        return ReducedProblem(
            spec=spec,
            variable="z",
            parameter="epsilon",
            exponent=v,
            gaussian_rate=None,
            f0=f0,
            g0=g0,
            # f0 vanishes at z = c, the peak of the Kummer weight
            default_x0=2 * c,
            search_interval=(lo, hi),
            energy_sign=-1,
        )

    if not isinstance(spec, (HarmonicOscillator, Pseudoharmonic)):
        raise TypeError(f"unknown potential {spec!r}")
    gamma, shift = _gaussian_data(spec)
    zero_point = gamma * (2 * v + D) - shift
    interval = (-gamma, zero_point + 4 * gamma * (n_max + 2))
    variable = variable or "s"

    if variable == "s":
        sigma = v + D / 2

        def f0(p, x0, order):
            return 1.0 - sigma * jets.var(x0, order).reciprocal()

        def g0(p, x0, order):
            p = np.asarray(p, dtype=float)
            return jets.var(x0, order).reciprocal() * ((zero_point - p) / (4 * gamma))

        # f0 vanishes at s = sigma, the peak of the Kummer weight; small s
        # inflates the 1/s jet coefficients and the determinant cancels badly
        x0 = 2 * sigma
    elif variable == "r":
        c = 2 * v + D - 1

        def f0(p, x0, order):
            r = jets.var(x0, order)
            return 2 * gamma * r - c * r.reciprocal()

        def g0(p, x0, order):
            p = np.asarray(p, dtype=float)
            return jets.const(zero_point - p, order, x0)

        if isinstance(spec, Pseudoharmonic) and spec.r_e > 0:
            x0 = spec.r_e
        else:
            x0 = math.sqrt((v + D / 2) / gamma)
    else:
        raise ValueError(f"unsupported variable {variable!r} for {spec.kind}")

    return ReducedProblem(
        spec=spec,
        variable=variable,
        parameter="lambda",
        exponent=v,
        gaussian_rate=gamma,
        f0=f0,
        g0=g0,
        default_x0=x0,
        search_interval=interval,
        energy_sign=1,
    )


def aim_energies(
    spec: PotentialSpec,
    ns,
    x0: float | None = None,
    variable: str | None = None,
    **aim_kw,
) -> list[tuple[float, AimResult]]:
    """AIM energies for the states ``ns`` of ``spec``."""
    ns = list(ns)
    reduced = reduce(spec, variable=variable, n_max=max(ns, default=0))
    problem = reduced.aim_problem(x0, **aim_kw)
    results = solve_states(problem, ns)
    return [(float(reduced.param_to_energy(res.eigenparameter)), res) for res in results]
