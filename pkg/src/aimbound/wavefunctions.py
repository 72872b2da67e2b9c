"""Normalized radial eigenfunctions built from the ansatz and the AIM polynomial."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import jets
from .potentials import (
    HarmonicOscillator,
    KratzerFues,
    Pseudoharmonic,
    PotentialSpec,
    closed_form_energy,
    effective_exponent,
    potential_value,
)
from .quadrature import QuadratureSettings, integrate_semiinfinite
from .specfun import AimTemplateParams, aim_polynomial, template_prefactor


def _envelope(x, v: float, tail):
    # x**v * exp(-tail), evaluated in log space for arrays
    if isinstance(x, jets.Jet):
        pw = x ** int(v) if float(v).is_integer() else jets.power(x, v)
        return pw * jets.exp(-tail)
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        logx = np.log(np.where(x > 0, x, 1.0))
        out = np.exp(v * logx - tail)
    at_zero = 1.0 if v == 0 else 0.0
    return np.where(x > 0, out, at_zero)


@dataclass(frozen=True)
class RadialState:
    spec: PotentialSpec
    n: int
    energy: float
    exponent: float
    norm: float
    length_scale: float
    r_max: float
    prefactor: float
    shape: Callable = field(repr=False, compare=False)

    def __call__(self, r):
        """Normalized R(r); accepts floats, arrays or jets."""
        out = self.shape(r) * self.norm
        if isinstance(out, np.ndarray) and out.ndim == 0:
            return float(out)
        return out


def _template(spec: PotentialSpec, v: float) -> AimTemplateParams:
    t = (2 * v + spec.D - 3) / 2
    if isinstance(spec, KratzerFues):
        return AimTemplateParams(N=-1, a=0.5, b=0.0, t=t)
    return AimTemplateParams(N=0, a=spec.gamma, b=0.0, t=t)


def build_state(
    spec: PotentialSpec,
    n: int,
    energy: float | None = None,
    settings: QuadratureSettings = QuadratureSettings(),
) -> RadialState:
    """Normalized state ``n``; the energy defaults to the closed form.

    For the Gaussian-tailed potentials the shape is fixed by ``n`` alone.  For
    Kratzer the energy sets the length scale through ``z = 2 eps r``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if energy is None:
        energy = closed_form_energy(spec, n)
    v = effective_exponent(spec)
    params = _template(spec, v)
    sigma = params.sigma

    if isinstance(spec, KratzerFues):
        if energy >= 0:
            raise ValueError("Kratzer bound states need a negative energy")
        eps = math.sqrt(-2 * spec.mu * energy) / spec.hbar

        def shape(r):
            z = r * (2 * eps)
            return _envelope(z, v, z * 0.5) * aim_polynomial(params, n, z, prefactor=False)

        scale = (2 * n + sigma) / (2 * eps)
        r_max = (4 * n + 2 * sigma + 60) / (2 * eps)
    elif isinstance(spec, (HarmonicOscillator, Pseudoharmonic)):
        gamma = spec.gamma

        def shape(r):
            return _envelope(r, v, (r * r) * (0.5 * gamma)) * aim_polynomial(
                params, n, r, prefactor=False
            )

        scale = math.sqrt((2 * n + sigma) / gamma)
        r_max = math.sqrt((4 * n + 2 * sigma + 40) / gamma)
    else:
        raise TypeError(f"unknown potential {spec!r}")

    D = spec.D
    total, _ = integrate_semiinfinite(
        lambda r: shape(r) ** 2 * r ** (D - 1), settings, scale=scale
    )
    return RadialState(
        spec=spec,
        n=n,
        energy=float(energy),
        exponent=v,
        norm=1.0 / math.sqrt(total),
        length_scale=scale,
        r_max=r_max,
        prefactor=template_prefactor(params, n),
        shape=shape,
    )


def overlap(
    a: RadialState, b: RadialState, settings: QuadratureSettings = QuadratureSettings()
) -> float:
    """``int_0^inf R_a R_b r^(D-1) dr``."""
    if a.spec != b.spec:
        raise ValueError("overlap needs states of the same potential, l and D")
    D = a.spec.D
    val, _ = integrate_semiinfinite(
        lambda r: a(r) * b(r) * r ** (D - 1),
        settings,
        scale=max(a.length_scale, b.length_scale),
    )
    return val


def count_nodes(state: RadialState, r_max: float | None = None, samples: int | None = None) -> int:
    """Strict sign changes of R on (0, r_max]."""
    if r_max is None:
        r_max = state.r_max
    if samples is None:
        samples = 400 * (state.n + 1)
    if samples < 100 * (state.n + 1):
        raise ValueError("need at least 100*(n+1) samples")
    r = np.linspace(0.0, r_max, samples + 1)[1:]
    vals = np.asarray(state(r))
    s = np.sign(vals)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def ode_residual(state: RadialState, points) -> float:
    """Largest relative imbalance of the radial equation over ``points``.

    At each point the three terms ``R''``, ``(D-1)/r R'`` and
    ``[2 mu (E - V)/hbar^2 - l(l+D-2)/r^2] R`` are summed and divided by the
    largest of them.  Derivatives come from order-2 jets.
    """
    spec = state.spec
    k2 = 2 * spec.mu / spec.hbar**2
    worst = 0.0
    for r in np.atleast_1d(np.asarray(points, dtype=float)):
        if r <= 0:
            raise ValueError("residual points must be positive")
        R = state(jets.var(r, 2))
        R0, R1, R2 = R.derivative_value(0), R.derivative_value(1), R.derivative_value(2)
        kr = k2 * (state.energy - potential_value(spec, r)) - spec.beta / r**2
        terms = (R2, (spec.D - 1) / r * R1, kr * R0)
        scale = max(abs(t) for t in terms)
        if scale == 0:
            continue
        worst = max(worst, abs(sum(terms)) / scale)
    return worst


def default_residual_points(state: RadialState, count: int = 40) -> np.ndarray:
    return np.linspace(0.02 * state.length_scale, 0.6 * state.r_max, count)
