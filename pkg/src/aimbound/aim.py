"""Asymptotic iteration method on jets.

For ``y'' = f0 y' + g0 y`` the iteration

    f_n = f_{n-1}' + g_{n-1} + f0 f_{n-1}
    g_n = g_{n-1}' + g0 f_{n-1}

is run on Taylor jets at an expansion point ``x0``.  Eigenvalues are the
zeros, in a spectral parameter, of the determinant
``delta_k = g_k f_{k-1} - f_k g_{k-1}`` evaluated at ``x0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .jets import Jet, JetError, JetNonFiniteError

log = logging.getLogger(__name__)


class AimError(RuntimeError):
    pass


class AimOverflowError(AimError):
    def __init__(self, step: int):
        super().__init__(f"AIM sequence overflowed at iteration {step}")
        self.step = step


class AimConvergenceError(AimError):
    def __init__(self, n: int, best: float, gap: float, history):
        super().__init__(
            f"state {n} did not converge: best estimate {best!r}, "
            f"last consecutive gap {gap:.3g}"
        )
        self.n = n
        self.best = best
        self.gap = gap
        self.history = history


class ExpansionPointError(ValueError):
    """The expansion point is unusable, e.g. f0(x0) = 0."""


class AimBracketError(AimError):
    """Too few roots inside the search interval at every iteration."""


@dataclass
class AimProblem:
    """An AIM-ready ODE ``y'' = f0 y' + g0 y`` with a spectral parameter.

    ``build_f0`` and ``build_g0`` map the spectral parameter (a float or a
    1-d array of them) to jets at ``x0``.  ``energy_sign`` is +1 when the
    physical energy increases with the parameter and -1 when it decreases;
    it fixes which root is the n-th state.
    """

    x0: float
    build_f0: Callable[[object], Jet]
    build_g0: Callable[[object], Jet]
    search_interval: tuple[float, float]
    k_max: int = 30
    root_tol: float = 1e-10
    convergence_tol: float = 1e-8
    energy_sign: int = 1
    scan_points: int = 400
    rescale: bool = True

    def __post_init__(self):
        lo, hi = self.search_interval
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError(f"bad search interval {self.search_interval!r}")
        if self.energy_sign not in (1, -1):
            raise ValueError("energy_sign must be +1 or -1")

    @property
    def jet_order(self) -> int:
        return self.k_max + 2


@dataclass
class AimResult:
    n: int
    eigenparameter: float
    iterations: int
    history: list[tuple[int, float]] = field(default_factory=list)
    delta_trace: list[float] = field(default_factory=list)


def aim_sequences(
    f0: Jet, g0: Jet, k: int, rescale: bool = True
) -> list[tuple[Jet, Jet]]:
    """Pairs ``(f_n, g_n)`` for ``n = 0..k``.

    With ``rescale`` each pair is divided by
    ``max(max|f_n|, max|g_n|, 1)`` taken over its coefficients, a common
    positive factor, so the zeros and signs of the determinant survive.
    """
    if f0.center != g0.center:
        raise JetError("f0 and g0 must share the expansion point")
    if min(f0.order, g0.order) < k + 1:
        raise JetError(
            f"jets of order {min(f0.order, g0.order)} cannot support {k} iterations"
        )
    f0 = f0.truncate(k + 1)
    g0 = g0.truncate(k + 1)
    pairs = [(f0, g0)]
    f, g = f0, g0
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, k + 1):
            try:
                f, g = f.derivative() + g + f0 * f, g.derivative() + g0 * f
                if rescale:
                    s = np.maximum(
                        np.maximum(np.abs(f.coeffs).max(axis=0), np.abs(g.coeffs).max(axis=0)),
                        1.0,
                    )
                    f, g = f / s, g / s
            except JetNonFiniteError as exc:
                raise AimOverflowError(n) from exc
            pairs.append((f, g))
    return pairs


def termination_delta(pairs: Sequence[tuple[Jet, Jet]], k: int):
    """Value at ``x0`` of ``g_k f_{k-1} - f_k g_{k-1}``."""
    if k < 1:
        raise ValueError("termination index k must be >= 1")
    fk, gk = pairs[k]
    fp, gp = pairs[k - 1]
    return gk.coeffs[0] * fp.coeffs[0] - fk.coeffs[0] * gp.coeffs[0]


def delta_at(problem: AimProblem, k: int, lam, rescale: bool | None = None):
    """``delta_k`` of ``problem`` at parameter value(s) ``lam``."""
    if rescale is None:
        rescale = problem.rescale
    f0 = problem.build_f0(lam)
    g0 = problem.build_g0(lam)
    if f0.center != problem.x0:
        raise JetError("f0 jet is not centred at the problem's x0")
    if np.any(np.abs(f0.coeffs[0]) == 0.0):
        raise ExpansionPointError(f"f0 vanishes at the expansion point x0={problem.x0!r}")
    return termination_delta(aim_sequences(f0, g0, k, rescale=rescale), k)


def find_roots(problem: AimProblem, k: int, scan_points: int | None = None) -> list[float]:
    """All sign changes of ``delta_k`` on a uniform grid, refined by bisection."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m = problem.scan_points if scan_points is None else scan_points
    if m < 2:
        raise ValueError("scan_points must be >= 2")
    lo, hi = problem.search_interval
    grid = np.linspace(lo, hi, m)
    d = np.asarray(delta_at(problem, k, grid), dtype=float)
    sgn = np.sign(d)

    exact = grid[sgn == 0].tolist()
    idx = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
    if idx.size == 0:
        return sorted(exact)

    a = grid[idx].copy()
    b = grid[idx + 1].copy()
    sa = sgn[idx].copy()
    for _ in range(200):
        if np.all(b - a <= problem.root_tol):
            break
        mid = 0.5 * (a + b)
        sm = np.sign(np.asarray(delta_at(problem, k, mid), dtype=float))
        zero = sm == 0
        same = sm == sa
        a = np.where(same | zero, mid, a)
        b = np.where(same & ~zero, b, mid)
    else:
        raise AimError(f"bisection did not reach root_tol at k={k}")
    return sorted(exact + (0.5 * (a + b)).tolist())


def _ordered(roots: list[float], sign: int) -> list[float]:
    return sorted(roots, reverse=(sign < 0))


def solve_states(problem: AimProblem, ns: Sequence[int]) -> list[AimResult]:
    """Converged eigenparameters for the state indices ``ns``.

    For each state the (n+1)-th root along increasing energy is tracked over
    k = n+1, n+2, ...; after the first estimate, the root nearest the
    previous one is taken.  Convergence is two consecutive estimates within
    ``convergence_tol``.  Root scans are shared between states.
    """
    cache: dict[int, list[float]] = {}

    def roots(k: int) -> list[float]:
        if k not in cache:
            cache[k] = _ordered(find_roots(problem, k), problem.energy_sign)
        return cache[k]

    results = []
    for n in ns:
        if n < 0:
            raise ValueError("state index must be non-negative")
        history: list[tuple[int, float]] = []
        gaps: list[float] = []
        converged = False
        for k in range(n + 1, problem.k_max + 1):
            rk = roots(k)
            if len(rk) < n + 1:
                continue
            if history:
                prev = history[-1][1]
                est = min(rk, key=lambda x: abs(x - prev))
                gap = abs(est - prev)
                gaps.append(gap)
                history.append((k, est))
                if gap <= problem.convergence_tol:
                    converged = True
                    break
            else:
                history.append((k, rk[n]))
        if not history:
            raise AimBracketError(
                f"fewer than {n + 1} roots of delta_k in {problem.search_interval} "
                f"for every k <= {problem.k_max}"
            )
        if not converged:
            gap = gaps[-1] if gaps else float("inf")
            raise AimConvergenceError(n, history[-1][1], gap, history)
        _check_monotone(n, gaps)
        lam = history[-1][1]
        trace = [float(abs(delta_at(problem, k, lam))) for k, _ in history]
        results.append(
            AimResult(
                n=n,
                eigenparameter=lam,
                iterations=history[-1][0],
                history=history,
                delta_trace=trace,
            )
        )
    return results


def solve_state(problem: AimProblem, n: int) -> AimResult:
    return solve_states(problem, [n])[0]


def _check_monotone(n: int, gaps: list[float]) -> None:
    # gaps that already sit at bisection resolution are noise, not a trend
    start = next((i for i, g in enumerate(gaps) if g > 0), len(gaps))
    for i in range(start + 1, len(gaps)):
        if gaps[i] > gaps[i - 1] and gaps[i] > 1e-12:
            log.warning(
                "non-monotone AIM convergence for state %d: gap %.3g after %.3g",
                n,
                gaps[i],
                gaps[i - 1],
            )
            return
