"""Property suites behind ``aimbound verify``.

Each suite returns :class:`Check` records.  A check either bounds an observed
error from above (``relation="<="``) or demands a minimum effect size
(``relation=">="``, used for negative controls).  Passing ``tolerance``
replaces every upper bound, which is how a deliberately tight run is made to
fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import jets
from .aim import find_roots
from .diagonalize import grid_spectrum
from .potentials import (
    HarmonicOscillator,
    KratzerFues,
    Pseudoharmonic,
    aim_energies,
    closed_form_energy,
    effective_exponent,
    reduce,
)
from .quadrature import QuadratureSettings, integrate_adaptive, integrate_semiinfinite
from .specfun import AimTemplateParams, aim_polynomial, hyp1f1_terminating
from .wavefunctions import (
    build_state,
    count_nodes,
    default_residual_points,
    ode_residual,
    overlap,
)


@dataclass(frozen=True)
class Check:
    suite: str
    invariant: str
    observed: float
    threshold: float
    relation: str = "<="

    @property
    def passed(self) -> bool:
        if self.relation == "<=":
            return bool(self.observed <= self.threshold)
        return bool(self.observed >= self.threshold)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "invariant": self.invariant,
            "observed": self.observed,
            "relation": self.relation,
            "threshold": self.threshold,
            "passed": self.passed,
        }


def _rel(a, b) -> float:
    return abs(a - b) / abs(b) if b else abs(a - b)


# jets -------------------------------------------------------------------


def _random_jet(rng, order, center, lo=-2.0, hi=2.0):
    return jets.Jet(center, rng.uniform(lo, hi, order + 1))


def jet_suite(instances: int = 200, seed: int = 7) -> list[Check]:
    rng = np.random.default_rng(seed)
    comm = leib = recip = 0.0
    for _ in range(instances):
        order = int(rng.integers(1, 8))
        x0 = float(rng.uniform(-3, 3))
        a, b = _random_jet(rng, order, x0), _random_jet(rng, order, x0)
        comm = max(comm, np.max(np.abs((a * b).coeffs - (b * a).coeffs)))
        lhs = (a * b).derivative()
        rhs = a.derivative() * b.truncate(order - 1) + a.truncate(order - 1) * b.derivative()
        leib = max(leib, np.max(np.abs(lhs.coeffs - rhs.coeffs)))
        c = jets.Jet(x0, np.r_[rng.choice([-1, 1]) * rng.uniform(0.5, 2), rng.uniform(-1, 1, order)])
        one = (c * c.reciprocal()).coeffs - np.eye(order + 1)[0]
        recip = max(recip, np.max(np.abs(one)))
    return [
        Check("jets", "commutativity of mul", float(comm), 1e-12),
        Check("jets", "Leibniz rule", float(leib), 1e-10),
        Check("jets", "a * recip(a) = 1", float(recip), 1e-10),
    ]


# aim / potentials -------------------------------------------------------

SAMPLE_SPECS = (
    HarmonicOscillator(omega=1.0, D=3, ell=1),
    Pseudoharmonic(kappa=4.0, r_e=1.0, D=2, ell=0),
    KratzerFues(A=1.0, B=0.5, D=4, ell=1),
)


def aim_suite(ns=range(4)) -> list[Check]:
    worst = 0.0
    for spec in SAMPLE_SPECS:
        for n, (E, _) in zip(ns, aim_energies(spec, ns)):
            worst = max(worst, _rel(E, closed_form_energy(spec, n)))
    return [Check("aim", "AIM vs closed form, relative", worst, 1e-8)]


def x0_invariance(specs=SAMPLE_SPECS, ns=range(4), factor: float = 1.5) -> float:
    """Largest relative change of converged energies when x0 is scaled."""
    worst = 0.0
    for spec in specs:
        ns = list(ns)
        x0 = reduce(spec, n_max=max(ns)).default_x0
        first = aim_energies(spec, ns, x0=x0)
        second = aim_energies(spec, ns, x0=factor * x0)
        for (e1, _), (e2, _) in zip(first, second):
            worst = max(worst, _rel(e2, e1))
    return worst


def x0_suite() -> list[Check]:
    return [Check("x0-invariance", "max cross-x0 eigenvalue deviation", x0_invariance(), 1e-7)]


def potential_suite(seed: int = 3) -> list[Check]:
    rng = np.random.default_rng(seed)
    quad = lim = hyd = 0.0
    mono = 0.0
    for _ in range(50):
        D = int(rng.integers(1, 7))
        ell = int(rng.integers(0, 4))
        mu, hbar = rng.uniform(0.5, 2, 2)
        kap, re = rng.uniform(0.5, 4), rng.uniform(0.1, 2)
        A, B = rng.uniform(0.5, 3), rng.uniform(0, 2)
        ps = Pseudoharmonic(kappa=kap, r_e=re, D=D, ell=ell, mu=mu, hbar=hbar)
        ks = KratzerFues(A=A, B=B, D=D, ell=ell, mu=mu, hbar=hbar)
        for spec, extra in ((ps, mu * kap * re**4 / (4 * hbar**2)), (ks, 2 * mu * B / hbar**2)):
            v = effective_exponent(spec)
            quad = max(quad, abs(v * (v + D - 2) - (ell * (ell + D - 2) + extra)) / max(1.0, abs(extra)))
            es = [closed_form_energy(spec, n) for n in range(4)]
            mono = min(mono, min(np.diff(es))) if mono else min(np.diff(es))
        if not (D == 1 and ell == 0):
            # the r_e -> 0 limit selects v = 1 at D = 1, l = 0 (odd branch)
            p0 = Pseudoharmonic(kappa=kap, r_e=0.0, D=D, ell=ell, mu=mu, hbar=hbar)
            ho = HarmonicOscillator(omega=0.5 * math.sqrt(kap / mu), D=D, ell=ell, mu=mu, hbar=hbar)
            for n in range(4):
                lim = max(lim, _rel(closed_form_energy(p0, n), closed_form_energy(ho, n)))
        h = KratzerFues(A=A, B=0.0, D=3, ell=ell, mu=mu, hbar=hbar)
        for n in range(4):
            ref = -mu * A**2 / (2 * hbar**2 * (n + ell + 1) ** 2)
            hyd = max(hyd, _rel(closed_form_energy(h, n), ref))
    return [
        Check("potentials", "exponent quadratic residual", quad, 1e-12),
        Check("potentials", "pseudoharmonic r_e -> 0 equals oscillator", lim, 1e-12),
        Check("potentials", "Kratzer B = 0, D = 3 equals hydrogenic ladder", hyd, 1e-12),
        Check("potentials", "closed form increasing in n (min spacing)", float(mono), 0.0, ">="),
    ]


# special functions ------------------------------------------------------


def laguerre(n: int, alpha: float, z):
    """Generalized Laguerre polynomial by its three-term recurrence."""
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev
    cur = 1 + alpha - z
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - z) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def hyp1f1_via_laguerre(n: int, c: float, z):
    poch = math.prod(c + j for j in range(n))
    return math.factorial(n) / poch * laguerre(n, c - 1, z)


def _term_scale(n, c, z):
    # sum of |terms|: the natural size against which cancellation is judged
    term = np.ones_like(z)
    total = np.ones_like(z)
    for j in range(n):
        term = term * np.abs(z * (j - n) / ((c + j) * (j + 1)))
        total = total + term
    return total


def specfun_suite(seed: int = 11) -> list[Check]:
    rng = np.random.default_rng(seed)
    lag = 0.0
    for n in range(11):
        c = rng.uniform(0.2, 6, 8)
        z = rng.uniform(0, 20, 8)
        for ci in c:
            got = hyp1f1_terminating(n, ci, z)
            ref = hyp1f1_via_laguerre(n, ci, z)
            lag = max(lag, float(np.max(np.abs(got - ref) / _term_scale(n, ci, z))))
    lim = 0.0
    for n in range(7):
        for N, a, t in ((0, 1.3, 0.5), (-1, 0.5, 1.0), (1, 0.7, -0.25)):
            x = np.linspace(0.1, 2.0, 9)
            p0 = AimTemplateParams(N=N, a=a, b=0.0, t=t)
            pb = AimTemplateParams(N=N, a=a, b=1e-6, t=t)
            ref = aim_polynomial(p0, n, x, prefactor=False)
            got = aim_polynomial(pb, n, x, prefactor=False)
            scale = _term_scale(n, p0.sigma, 2 * a * x ** (N + 2) / (N + 2))
            lim = max(lim, float(np.max(np.abs(got - ref) / scale)))
    return [
        Check("specfun", "1F1 vs Laguerre recurrence (relative to term size)", lag, 1e-10),
        Check("specfun", "b = 1e-6 Gauss sum vs confluent limit", lim, 1e-5),
    ]


# quadrature -------------------------------------------------------------


def quadrature_suite() -> list[Check]:
    s = QuadratureSettings()
    cases = [
        (lambda r: np.exp(-r), 1.0),
        (lambda r: r**2 * np.exp(-r * r), math.sqrt(math.pi) / 4),
        (lambda r: r**2 * np.exp(-2 * r), 0.25),
    ]
    worst = honesty = 0.0
    for f, exact in cases:
        v, e = integrate_semiinfinite(f, s)
        worst = max(worst, abs(v - exact))
        honesty = max(honesty, abs(v - exact) - e)
    f = lambda x: np.sin(3 * x) * np.exp(-x)  # noqa: E731
    g = lambda x: x**3 - x  # noqa: E731
    whole, ew = integrate_adaptive(lambda x: 2 * f(x) - 3 * g(x), 0.0, 2.0, s)
    vf, ef = integrate_adaptive(f, 0.0, 2.0, s)
    vg, eg = integrate_adaptive(g, 0.0, 2.0, s)
    lin = abs(whole - (2 * vf - 3 * vg)) - (ew + 2 * ef + 3 * eg)
    left, el = integrate_adaptive(f, 0.0, 0.7, s)
    right, er = integrate_adaptive(f, 0.7, 2.0, s)
    add = abs(vf - left - right) - (ef + el + er)
    return [
        Check("quadrature", "known semi-infinite integrals, abs error", worst, 1e-10),
        Check("quadrature", "true error minus estimate", honesty, 0.0),
        Check("quadrature", "linearity excess over combined estimate", lin, 0.0),
        Check("quadrature", "additivity excess over combined estimate", add, 0.0),
    ]


# wavefunctions ----------------------------------------------------------

WAVEFUNCTION_SPECS = tuple(
    cls(D=D, ell=ell, **kw)
    for D in (2, 3, 5)
    for ell in (0, 2)
    for cls, kw in (
        (HarmonicOscillator, {"omega": 1.0}),
        (Pseudoharmonic, {"kappa": 4.0, "r_e": 1.0}),
        (KratzerFues, {"A": 2.0, "B": 0.5}),
    )
)


def wavefunction_checks(specs=WAVEFUNCTION_SPECS, n_max: int = 6) -> dict[str, float]:
    norm = orth = nodes = resid = 0.0
    pert_energy = pert_spacing = math.inf
    for spec in specs:
        states = [build_state(spec, n) for n in range(n_max + 1)]
        for i, a in enumerate(states):
            for j in range(i, len(states)):
                o = overlap(a, states[j])
                if i == j:
                    norm = max(norm, abs(o - 1))
                else:
                    orth = max(orth, abs(o))
            nodes = max(nodes, abs(count_nodes(a) - a.n))
            pts = default_residual_points(a)
            resid = max(resid, ode_residual(a, pts))
            pert_energy = min(pert_energy, ode_residual(replace(a, energy=a.energy * 1.01), pts))
            spacing = abs(closed_form_energy(spec, a.n + 1) - a.energy)
            pert_spacing = min(
                pert_spacing, ode_residual(replace(a, energy=a.energy + 0.01 * spacing), pts)
            )
    return {
        "normalization": norm,
        "orthogonality": orth,
        "nodes": float(nodes),
        "residual": resid,
        "perturbed_energy": pert_energy,
        "perturbed_spacing": pert_spacing,
    }


def wavefunction_suite() -> list[Check]:
    w = wavefunction_checks()
    return [
        Check("wavefunctions", "|<n|n> - 1|", w["normalization"], 1e-8),
        Check("wavefunctions", "|<n|m>|, n != m", w["orthogonality"], 1e-8),
        Check("wavefunctions", "|nodes - n|", w["nodes"], 0.0),
        Check("wavefunctions", "ODE residual at the closed-form energy", w["residual"], 1e-6),
        Check("wavefunctions", "residual with energy shifted by 1%", w["perturbed_energy"], 1e-3, ">="),
        Check(
            "wavefunctions",
            "residual with energy shifted by 1% of the spacing",
            w["perturbed_spacing"],
            1e-3,
            ">=",
        ),
    ]


# oscillator triangle ----------------------------------------------------


@dataclass(frozen=True)
class TriangleRow:
    D: int
    ell: int
    n: int
    closed: float
    aim: float
    grid: float
    literal: float

    @property
    def worst_pair(self) -> float:
        return max(abs(self.aim - self.closed), abs(self.grid - self.closed), abs(self.aim - self.grid))


def oscillator_triangle(dims=(1, 2, 3, 5), ells=range(3), n_max: int = 3, omega: float = 1.0):
    rows = []
    ns = list(range(n_max + 1))
    for D in dims:
        for ell in ells:
            spec = HarmonicOscillator(omega=omega, D=D, ell=ell)
            aim = aim_energies(spec, ns)
            grid = grid_spectrum(spec, n_max + 1)
            for n in ns:
                rows.append(
                    TriangleRow(
                        D=D,
                        ell=ell,
                        n=n,
                        closed=closed_form_energy(spec, n),
                        aim=aim[n][0],
                        grid=float(grid[n]),
                        literal=closed_form_energy(spec, n, paper_compat=True),
                    )
                )
    return rows


def oracle_suite() -> list[Check]:
    rows = oscillator_triangle()
    worst = max(r.worst_pair for r in rows)
    literal_gap = min(abs(r.literal - r.grid) for r in rows if r.n >= 1)
    return [
        Check("oracle", "oscillator AIM / grid / closed form, abs", worst, 1e-6),
        Check("oracle", "literal ladder misses the grid for n >= 1 (min gap)", literal_gap, 0.1, ">="),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "jets": jet_suite,
    "specfun": specfun_suite,
    "quadrature": quadrature_suite,
    "potentials": potential_suite,
    "aim": aim_suite,
    "x0-invariance": x0_suite,
    "wavefunctions": wavefunction_suite,
    "oracle": oracle_suite,
}


def run_suites(names=None, tolerance: float | None = None) -> list[Check]:
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    checks = []
    for name in names:
        for c in SUITES[name]():
            if tolerance is not None and c.relation == "<=":
                c = replace(c, threshold=tolerance)
            checks.append(c)
    return checks
