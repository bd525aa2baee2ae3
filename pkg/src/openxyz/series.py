"""Summation of the exponentially convergent k-series of the energy formulas.

Every series has terms of the form ``dress(k) * sum_m amp_m * exp(k * rate_m)``
where ``dress(k) -> 1`` exponentially fast.  The leading channels
``amp_m * exp(k * rate_m)`` are geometric and summed in closed form (Abel
summation when ``|exp(rate)| = 1``), while the remainder
``(dress(k) - 1) * leading`` is summed term by term.
"""
from __future__ import annotations

import contextlib
import contextvars

import numpy as np

from .errors import SeriesDivergenceError

CHUNK = 64
MAX_TERMS = 1_000_000
STOP_RUN = 5

_term_cap = contextvars.ContextVar("term_cap", default=MAX_TERMS)


@contextlib.contextmanager
def term_limit(max_terms: int):
    """Cap the number of directly summed terms for every series in this context."""
    if max_terms < 1:
        raise ValueError("term limit must be positive")
    token = _term_cap.set(int(max_terms))
    try:
        yield
    finally:
        _term_cap.reset(token)


def tanh_deviation(c):
    """``tanh(k c) - 1`` for ``Re(c) > 0``."""
    def dev(k):
        x = np.exp(-2.0 * k * c)
        return -2.0 * x / (1.0 + x)
    return dev


def inverse_sinh_deviation(c):
    """``1/(1 - exp(-2 k c)) - 1``: the correction in ``1/sinh(k c) = 2 exp(-k c) (1 + dev)``."""
    def dev(k):
        x = np.exp(-2.0 * k * c)
        return x / (1.0 - x)
    return dev


def inverse_cosh_deviation(c):
    """``1/(1 + exp(-2 k c)) - 1``: the correction in ``1/cosh(k c) = 2 exp(-k c) (1 + dev)``."""
    def dev(k):
        x = np.exp(-2.0 * k * c)
        return -x / (1.0 + x)
    return dev


def _combined_deviation(devs, k):
    total = np.zeros(k.shape, dtype=complex)
    for dev in devs:
        d = dev(k)
        total = total + d + total * d
    return total


def _leading(amps, rates, k):
    return np.exp(np.outer(k, rates)) @ amps


def channel_sum(amps, rates, devs=(), eps: float = 1e-16, k_start: int = 1,
                method: str = "channels", max_terms: int | None = None) -> complex:
    """Sum ``sum_{k >= k_start} prod(1 + dev_i(k)) * sum_m amps[m] exp(k rates[m])``.

    ``method="channels"`` sums the leading exponentials in closed form and the
    exponentially smaller remainder directly; ``method="direct"`` adds the
    full terms one by one (no Abel continuation, so non-decaying terms fail).
    Summation stops once ``STOP_RUN`` consecutive terms fall below
    ``eps * |partial sum|``; ``max_terms`` defaults to the cap set by
    :func:`term_limit`.
    """
    if max_terms is None:
        max_terms = _term_cap.get()
    amps = np.atleast_1d(np.asarray(amps, dtype=complex))
    rates = np.atleast_1d(np.asarray(rates, dtype=complex))
    keep = amps != 0
    amps, rates = amps[keep], rates[keep]
    if amps.size == 0:
        return 0j
    if np.any(rates.real > 1e-13):
        raise SeriesDivergenceError(f"series terms grow: leading rates {rates}")
    if method == "channels":
        ratios = np.exp(rates)
        gap = np.abs(1.0 - ratios)
        if np.any(gap < 1e-13):
            raise SeriesDivergenceError("a leading channel does not decay or oscillate")
        total = complex(np.sum(amps * ratios ** k_start / (1.0 - ratios)))
        if not devs:
            return total
        use_dress = True
    elif method == "direct":
        total = 0j
        use_dress = False
    else:
        raise ValueError(f"unknown summation method {method!r}")

    scale = abs(total)
    run = 0
    k0 = k_start
    while k0 - k_start < max_terms:
        k = np.arange(k0, k0 + CHUNK, dtype=float)
        lead = _leading(amps, rates, k)
        dev = _combined_deviation(devs, k)
        terms = lead * dev if use_dress else lead * (1.0 + dev)
        for term in terms:
            total += term
            scale = max(scale, abs(total))
            if abs(term) <= eps * scale:
                run += 1
                if run >= STOP_RUN:
                    return total
            else:
                run = 0
        k0 += CHUNK
    raise SeriesDivergenceError(f"series not converged after {max_terms} terms")
