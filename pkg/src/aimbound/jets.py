"""Truncated Taylor series ("jets") at a fixed expansion point.

A :class:`Jet` stores the coefficients ``a_0 .. a_K`` of
``sum_i a_i (x - x0)**i``.  The order runs along axis 0 of ``coeffs``; any
trailing axes are a batch of independent jets that share the expansion point
and are carried through every operation in lockstep.  The AIM engine uses the
batch axis to evaluate the termination determinant on a whole grid of
spectral parameters at once.
"""

from __future__ import annotations

import math
from numbers import Real

import numpy as np

POLE_TOL = 1e-12


class JetError(ValueError):
    pass


class JetNonFiniteError(JetError):
    pass


class JetPoleError(JetError):
    """Reciprocal requested at a point where the jet vanishes."""


def _pad(c: np.ndarray, batch_ndim: int) -> np.ndarray:
    extra = batch_ndim - (c.ndim - 1)
    if extra > 0:
        c = c.reshape(c.shape + (1,) * extra)
    return c


class Jet:
    __slots__ = ("center", "coeffs")

    def __init__(self, center: float, coeffs):
        c = np.array(coeffs, dtype=float)
        if c.ndim == 0 or c.shape[0] == 0:
            raise JetError("a jet needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise JetNonFiniteError("jet coefficients must be finite")
        center = float(center)
        if not math.isfinite(center):
            raise JetError("expansion point must be finite")
        c.flags.writeable = False
        self.center = center
        self.coeffs = c

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def value(self):
        """Value at the expansion point (order-0 coefficient)."""
        v = self.coeffs[0]
        return float(v) if v.ndim == 0 else v

    def derivative_value(self, k: int):
        """k-th derivative at the expansion point, ``k! * a_k``."""
        if k > self.order:
            raise JetError(f"derivative {k} exceeds jet order {self.order}")
        v = math.factorial(k) * self.coeffs[k]
        return float(v) if np.ndim(v) == 0 else v

    def truncate(self, order: int) -> Jet:
        if order > self.order:
            raise JetError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.center, self.coeffs[: order + 1])

    def __repr__(self) -> str:
        return f"Jet(center={self.center!r}, coeffs={self.coeffs.tolist()!r})"

    # arithmetic -------------------------------------------------------

    def _check(self, other: Jet) -> None:
        if other.center != self.center:
            raise JetError(
                f"expansion points differ: {self.center!r} vs {other.center!r}"
            )

    def _binary_coeffs(self, other: Jet):
        self._check(other)
        k = min(self.order, other.order)
        nb = max(self.coeffs.ndim, other.coeffs.ndim) - 1
        return _pad(self.coeffs[: k + 1], nb), _pad(other.coeffs[: k + 1], nb)

    def __add__(self, other):
        if isinstance(other, Jet):
            a, b = self._binary_coeffs(other)
            return Jet(self.center, a + b)
        s = np.asarray(other, dtype=float)
        c = _pad(self.coeffs, s.ndim).copy()
        c = c + np.zeros_like(s)
        c[0] = c[0] + s
        return Jet(self.center, c)

    __radd__ = __add__

    def __neg__(self) -> Jet:
        return Jet(self.center, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self._binary_coeffs(other)
            out = np.empty(np.broadcast_shapes(a.shape, b.shape))
            for n in range(out.shape[0]):
                out[n] = np.sum(a[: n + 1] * b[n::-1], axis=0)
            return Jet(self.center, out)
        s = np.asarray(other, dtype=float)
        return Jet(self.center, _pad(self.coeffs, s.ndim) * s)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / np.asarray(other, dtype=float))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) and p >= 0:
            out = const(1.0, self.order, self.center)
            base = self
            while p:
                if p & 1:
                    out = out * base
                base = base * base
                p >>= 1
            return out
        return power(self, p)

    def reciprocal(self, tol: float = POLE_TOL) -> Jet:
        a = self.coeffs
        if np.any(np.abs(a[0]) <= tol):
            raise JetPoleError(
                f"reciprocal of a jet vanishing at x0={self.center!r}"
            )
        b = np.empty_like(a)
        b[0] = 1.0 / a[0]
        for n in range(1, a.shape[0]):
            b[n] = -np.sum(a[1 : n + 1] * b[n - 1 :: -1][:n], axis=0) / a[0]
        return Jet(self.center, b)

    def derivative(self) -> Jet:
        if self.order < 1:
            raise JetError("derivative of an order-0 jet: order budget exhausted")
        k = np.arange(1, self.order + 1, dtype=float)
        return Jet(self.center, _pad(k, self.coeffs.ndim - 1) * self.coeffs[1:])


# constructors ---------------------------------------------------------


def const(c, order: int, x0: float) -> Jet:
    """Constant function ``c`` as a jet of the given order at ``x0``."""
    if order < 0:
        raise JetError("order must be non-negative")
    c = np.asarray(c, dtype=float)
    if not np.all(np.isfinite(c)):
        raise JetError("constant must be finite")
    coeffs = np.zeros((order + 1,) + c.shape)
    coeffs[0] = c
    return Jet(x0, coeffs)


def var(x0: float, order: int) -> Jet:
    """The identity function ``x`` expanded at ``x0``."""
    if order < 1:
        raise JetError("the variable needs order >= 1")
    coeffs = np.zeros(order + 1)
    coeffs[0] = x0
    coeffs[1] = 1.0
    return Jet(x0, coeffs)


# elementary functions -------------------------------------------------


def exp(x):
    if not isinstance(x, Jet):
        return np.exp(x)
    a = x.coeffs
    e = np.empty_like(a)
    e[0] = np.exp(a[0])
    for n in range(1, a.shape[0]):
        j = _pad(np.arange(1, n + 1, dtype=float), a.ndim - 1)
        e[n] = np.sum(j * a[1 : n + 1] * e[n - 1 :: -1][:n], axis=0) / n
    return Jet(x.center, e)


def power(x, p: float):
    """``x**p`` for real ``p``; jets need a positive value at the centre."""
    if not isinstance(x, Jet):
        return np.power(x, p)
    a = x.coeffs
    if np.any(a[0] <= 0):
        raise JetPoleError("real power of a jet needs a positive order-0 term")
    b = np.empty_like(a)
    b[0] = a[0] ** p
    for n in range(1, a.shape[0]):
        j = _pad(np.arange(1, n + 1, dtype=float), a.ndim - 1)
        b[n] = np.sum(((p + 1) * j - n) * a[1 : n + 1] * b[n - 1 :: -1][:n], axis=0)
        b[n] /= n * a[0]
    return Jet(x.center, b)


def add(a: Jet, b: Jet) -> Jet:
    return a + b


def scale(a: Jet, s: Real) -> Jet:
    return a * s


def mul(a: Jet, b: Jet) -> Jet:
    return a * b


def recip(a: Jet, tol: float = POLE_TOL) -> Jet:
    return a.reciprocal(tol)


def derivative(a: Jet) -> Jet:
    return a.derivative()
