"""Theta functions with rational characteristics and the derived sigma/zeta.

All evaluators accept scalars or numpy arrays for ``u`` and broadcast.  The
theta series is summed over a window of integers centred on the dominant
term, so arguments far from the real axis keep full relative precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import mpmath
import numpy as np

from .errors import DomainError, PoleError

DEFAULT_EPS = 1e-17


@dataclass(frozen=True)
class LatticeTau:
    """Modulus of the period lattice ``Z + tau Z``; requires ``Im(tau) > 0``."""

    tau: complex

    def __post_init__(self):
        value = complex(self.tau)
        if not np.isfinite(value.real) or not np.isfinite(value.imag) or value.imag <= 0:
            raise DomainError(f"modulus needs Im(tau) > 0, got {value!r}")
        object.__setattr__(self, "tau", value)


class ThetaChar(NamedTuple):
    """Characteristic pair ``(a, b)`` held as exact rationals."""

    a: Fraction
    b: Fraction

    @classmethod
    def of(cls, a, b) -> "ThetaChar":
        return cls(Fraction(a).limit_denominator(1 << 20), Fraction(b).limit_denominator(1 << 20))


SIGMA_CHAR = ThetaChar(Fraction(1, 2), Fraction(1, 2))


def as_tau(tau) -> complex:
    """Validate a modulus given either as ``LatticeTau`` or a bare number."""
    if isinstance(tau, LatticeTau):
        return tau.tau
    return LatticeTau(tau).tau


def _as_char(ch) -> tuple[float, float]:
    if not isinstance(ch, ThetaChar):
        ch = ThetaChar.of(*ch)
    return float(ch.a), float(ch.b)


def truncation_half_width(tau, eps: float = DEFAULT_EPS) -> int:
    """Number of terms kept on each side of the dominant index.

    Terms decay like ``exp(-pi Im(tau) d^2)`` with the distance ``d`` from the
    dominant index, and the first omitted one sits at ``d >= M + 1/2``.
    """
    if not 0 < eps <= 1e-6:
        raise DomainError(f"eps must lie in (0, 1e-6], got {eps}")
    t = as_tau(tau).imag
    return int(np.ceil(np.sqrt(np.log(1.0 / eps) / (np.pi * t))))


def _theta_sum(a, b, u, tau, eps, order, half_width):
    tau = as_tau(tau)
    u = np.asarray(u, dtype=complex)
    if half_width is None:
        half_width = truncation_half_width(tau, eps)
    t = tau.imag
    centre = np.rint(-u.imag / t - a)
    offsets = np.arange(-half_width, half_width + 1, dtype=float)
    m = centre[..., None] + offsets + a
    terms = np.exp(1j * np.pi * m * m * tau + 2j * np.pi * m * (u[..., None] + b))
    if order == 1:
        terms = terms * (2j * np.pi * m)
    elif order == 2:
        terms = terms * (2j * np.pi * m) ** 2
    out = terms.sum(axis=-1)
    return out[()] if out.ndim == 0 else out


def theta(ch, u, tau, eps: float = DEFAULT_EPS, half_width: int | None = None):
    """Theta function with characteristic ``ch = (a, b)``.

    Sums ``exp(i pi (m+a)^2 tau + 2 i pi (m+a)(u+b))`` over ``2M+1`` integers
    around the dominant term.  ``half_width`` overrides ``M`` (used by the
    truncation-stability tests).
    """
    a, b = _as_char(ch)
    return _theta_sum(a, b, u, tau, eps, 0, half_width)


def theta_prime(ch, u, tau, eps: float = DEFAULT_EPS, half_width: int | None = None):
    """Derivative in ``u`` of :func:`theta`, differentiated term by term."""
    a, b = _as_char(ch)
    return _theta_sum(a, b, u, tau, eps, 1, half_width)


def sigma(u, tau, eps: float = DEFAULT_EPS):
    """Odd theta function with characteristic (1/2, 1/2)."""
    return _theta_sum(0.5, 0.5, u, tau, eps, 0, None)


def sigma_prime(u, tau, eps: float = DEFAULT_EPS):
    return _theta_sum(0.5, 0.5, u, tau, eps, 1, None)


def sigma_second(u, tau, eps: float = DEFAULT_EPS):
    return _theta_sum(0.5, 0.5, u, tau, eps, 2, None)


def lattice_distance(u, tau):
    """Distance from ``u`` to the nearest point of ``Z + tau Z`` (rectangular tau)."""
    tau = as_tau(tau)
    u = np.asarray(u, dtype=complex)
    n = np.rint(u.imag / tau.imag)
    w = u - n * tau
    w = w - np.rint(w.real)
    return np.abs(w)


def zeta(u, tau, eps: float = DEFAULT_EPS, pole_tol: float = 1e-13):
    """Logarithmic derivative of sigma; raises :class:`PoleError` on the lattice."""
    tau = as_tau(tau)
    if np.any(lattice_distance(u, tau) < pole_tol):
        raise PoleError(f"zeta has a pole at lattice point u={u!r}")
    return sigma_prime(u, tau, eps) / sigma(u, tau, eps)


def theta_reference(ch, u, tau, dps: int = 34, half_width: int = 100, derivative: bool = False):
    """Brute-force mpmath sum over ``m in [-half_width, half_width]``.

    Slow; used to generate oracle values at quadruple working precision.
    """
    a, b = _as_char(ch)
    tau = as_tau(tau)
    with mpmath.workdps(dps):
        a_mp = mpmath.mpf(Fraction(a).numerator) / Fraction(a).denominator
        b_mp = mpmath.mpf(Fraction(b).numerator) / Fraction(b).denominator
        u_mp = mpmath.mpc(complex(u))
        tau_mp = mpmath.mpc(tau)
        total = mpmath.mpc(0)
        for m in range(-half_width, half_width + 1):
            n = m + a_mp
            term = mpmath.exp(1j * mpmath.pi * n * n * tau_mp + 2j * mpmath.pi * n * (u_mp + b_mp))
            if derivative:
                term *= 2j * mpmath.pi * n
            total += term
        return complex(total)


@dataclass(frozen=True)
class IdentityReport:
    """Normalized residuals of the sigma identities at one point."""

    riemann: float
    double_angle: float
    period_one: float
    period_tau: float
    half_modulus_sigma: float
    half_modulus_odd: float
    half_modulus_even: float

    def worst(self) -> float:
        return max(self.as_dict().values())

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _rel(lhs, rhs) -> float:
    return float(np.max(np.abs(lhs - rhs) / np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)))


def identity_residuals(u, v, x, y, tau, eps: float = DEFAULT_EPS) -> IdentityReport:
    """Residuals |LHS - RHS| / max(|LHS|, |RHS|, 1) of the sigma identities.

    Covers the Riemann four-term identity, the duplication formula, the two
    quasi-periods, and the three relations between modulus ``tau`` and ``2 tau``
    theta functions used when writing the R-matrix in terms of sigma.
    """
    tau = as_tau(tau)
    s = lambda z: sigma(z, tau, eps)
    two = 2 * tau
    th0 = lambda z: theta((0, 0.5), z, two, eps)
    th1 = lambda z: theta((0.5, 0.5), z, two, eps)
    u, v, x, y = (np.asarray(z, dtype=complex) for z in (u, v, x, y))

    lhs = s(u + x) * s(u - x) * s(v + y) * s(v - y) - s(u + y) * s(u - y) * s(v + x) * s(v - x)
    rhs = s(u + v) * s(u - v) * s(x + y) * s(x - y)
    riemann = _rel(lhs, rhs)

    h, ht, hb = 0.5, tau / 2, (1 + tau) / 2
    dbl_rhs = 2 * s(u) * s(u + h) * s(u + ht) * s(u - hb) / (s(h) * s(ht) * s(-hb))
    double_angle = _rel(s(2 * u), dbl_rhs)

    period_one = _rel(s(u + 1), -s(u))
    period_tau = _rel(s(u + tau), -np.exp(-2j * np.pi * (u + tau / 2)) * s(u))

    half_sigma = _rel(s(u) / s(ht), th0(u) * th1(u) / (th0(ht) * th1(ht)))
    half_odd = _rel(th1(2 * u), th1(tau) * s(u) * s(u + h) / (s(ht) * s(ht + h)))
    half_even = _rel(th0(2 * u), th0(0) * s(u - ht) * s(u + h + ht) / (s(-ht) * s(ht + h)))
    return IdentityReport(riemann, double_angle, period_one, period_tau, half_sigma, half_odd, half_even)
