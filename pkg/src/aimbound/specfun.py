"""Pochhammer symbols and terminating hypergeometric sums.

The sums accept floats, numpy arrays or :class:`~aimbound.jets.Jet` values
for the argument; only ``+`` and ``*`` are applied to it.
"""

from __future__ import annotations

from dataclasses import dataclass


def pochhammer(sigma: float, n: int) -> float:
    """Rising factorial ``sigma (sigma+1) ... (sigma+n-1)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = 1.0
    for j in range(n):
        out *= sigma + j
    return out


def _check_lower(c: float, n: int, name: str) -> None:
    # (c)_j must stay nonzero for j <= n, i.e. c not in {0, -1, ..., -(n-1)}
    if c <= 0 and float(c).is_integer() and -c <= n - 1:
        raise ValueError(f"{name}={c!r} makes the terminating sum undefined for n={n}")


def hyp1f1_terminating(n: int, c: float, z):
    """``1F1(-n; c; z)``, a polynomial of degree ``n`` in ``z``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    _check_lower(c, n, "c")
    # 1 + 0*z keeps the type and shape of z even for n = 0
    term = 1.0
    total = 1.0 + z * 0.0
    for j in range(n):
        term = term * z * ((j - n) / ((c + j) * (j + 1)))
        total = total + term
    return total


def hyp2f1_terminating(n: int, rho: float, sigma: float, y):
    """``2F1(-n, rho + n; sigma; y)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    _check_lower(sigma, n, "sigma")
    term = 1.0
    total = 1.0 + y * 0.0
    for j in range(n):
        term = term * y * ((j - n) * (rho + n + j) / ((sigma + j) * (j + 1)))
        total = total + term
    return total


@dataclass(frozen=True)
class AimTemplateParams:
    """Parameters of ``y'' = 2(a x^(N+1)/(1-b x^(N+2)) - (t+1)/x) y' - w x^N/(1-b x^(N+2)) y``."""

    N: int
    a: float
    b: float
    t: float

    def __post_init__(self):
        if self.N < -1:
            raise ValueError("N must be >= -1")

    @property
    def sigma(self) -> float:
        return (2 * self.t + self.N + 3) / (self.N + 2)

    @property
    def rho(self) -> float:
        if self.b == 0:
            raise ValueError("rho is undefined for b = 0")
        return ((2 * self.t + 1) * self.b + 2 * self.a) / ((self.N + 2) * self.b)

    def eigenvalue(self, n: int) -> float:
        """The value of ``w`` for which the degree-n solution exists."""
        m = self.N + 2
        return m * n * (2 * self.a + self.b * (m * (n - 1) + 2 * self.t + self.N + 3))


def template_prefactor(params: AimTemplateParams, n: int) -> float:
    """``(-1)^n (N+2)^n (sigma)_n``, the constant in front of the sum."""
    return (-1) ** n * (params.N + 2) ** n * pochhammer(params.sigma, n)


def aim_polynomial(params: AimTemplateParams, n: int, x, prefactor: bool = True):
    """Degree-n polynomial solution of the template equation at ``x``.

    For ``b = 0`` the Gauss sum degenerates to
    ``1F1(-n; sigma; 2a x^(N+2) / (N+2))``.
    """
    m = params.N + 2
    u = x**m
    if params.b == 0:
        val = hyp1f1_terminating(n, params.sigma, u * (2 * params.a / m))
    else:
        val = hyp2f1_terminating(n, params.rho, params.sigma, u * params.b)
    if prefactor:
        val = val * template_prefactor(params, n)
    return val
