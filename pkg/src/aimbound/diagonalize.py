"""Brute-force radial spectra from a finite-difference Hamiltonian.

This is an oracle for the AIM engine and the closed forms, so it shares no
code with them.  The regular part of the small-r behaviour is factored out,
``R = r^v w``, which leaves the self-adjoint problem

    -(1/r^p) (r^p w')' + U(r) w = lambda w,    p = 2v + D - 1,

where ``U`` is ``2 mu V / hbar^2`` with its inverse-square piece removed (that
piece is absorbed into ``v``).  The grid is cell-centred, ``r_i = (i - 1/2) h``,
so no node sits on ``r = 0``; the flux through the origin vanishes and
``w(r_max) = 0``.  The stencil is second order.  With ``extrapolate=True`` a
half-resolution solve is combined with the full one (Richardson, h^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .potentials import HarmonicOscillator, KratzerFues, Pseudoharmonic, PotentialSpec


@dataclass(frozen=True)
class _RadialModel:
    p: float
    regular: object  # r -> U(r), without the inverse-square part
    r_max: float


def _model(spec: PotentialSpec, count: int) -> _RadialModel:
    k = 2 * spec.mu / spec.hbar**2
    D, ell = spec.D, spec.ell
    cent = ell * (ell + D - 2)

    def frobenius(inv_sq: float) -> float:
        return 0.5 * ((2 - D) + math.sqrt((D - 2) ** 2 + 4 * (cent + inv_sq)))

    if isinstance(spec, HarmonicOscillator):
        # l picks the branch; for D = 1 it separates even (0) from odd (1)
        v = float(ell)
        g = spec.mu * spec.omega / spec.hbar
        regular = lambda r: g**2 * r**2  # noqa: E731
        r_max = math.sqrt((4 * count + 2 * v + D + 40) / g)
    elif isinstance(spec, Pseudoharmonic):
        kap, re = spec.kappa, spec.r_e
        v = frobenius(k * kap * re**4 / 8)
        regular = lambda r: k * (kap * r**2 / 8 - kap * re**2 / 4)  # noqa: E731
        g = 0.5 * math.sqrt(spec.mu * kap) / spec.hbar
        r_max = math.sqrt((4 * count + 2 * v + D + 40) / g)
    elif isinstance(spec, KratzerFues):
        v = frobenius(k * spec.B)
        alpha = k * spec.A
        regular = lambda r: -alpha / r  # noqa: E731
        c = 2 * v + D - 1
        r_max = (4 * count + 2 * c + 60) * (2 * count + c) / (2 * alpha)
    else:
        raise TypeError(f"unknown potential {spec!r}")
    return _RadialModel(p=2 * v + D - 1, regular=regular, r_max=r_max)


def _eigen(model: _RadialModel, count: int, points: int, r_max: float) -> np.ndarray:
    h = r_max / points
    r = (np.arange(points) + 0.5) * h
    faces = np.arange(points + 1) * h
    wf = faces**model.p
    wf[0] = 0.0
    wc = r**model.p
    diag = (wf[:-1] + wf[1:]) / h**2 / wc + model.regular(r)
    off = -wf[1:-1] / h**2 / np.sqrt(wc[:-1] * wc[1:])
    return eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, count - 1))


def grid_spectrum(
    spec: PotentialSpec,
    count: int,
    points: int = 2000,
    r_max: float | None = None,
    extrapolate: bool = True,
) -> np.ndarray:
    """Lowest ``count`` energies for ``spec`` from the radial grid."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if points < 4 * count or points % 2:
        raise ValueError("points must be even and well above count")
    model = _model(spec, count)
    if r_max is None:
        r_max = model.r_max
    lam = _eigen(model, count, points, r_max)
    if extrapolate:
        coarse = _eigen(model, count, points // 2, r_max)
        lam = (4 * lam - coarse) / 3
    return lam * spec.hbar**2 / (2 * spec.mu)
