"""Trigonometric (XXZ) limit of the open chain, tau -> i infinity.

For real ``eta`` (|J_z| < 1) the k-series of the elliptic formulas turn into
integrals over the real line and the excitation is gapless; for imaginary
``eta`` (|J_z| > 1) they stay exponentially convergent series and the
boundary strings of the imaginary small-eta regime survive with the strip
cap sent to infinity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate

from .errors import DomainError, PoleError, SeriesDivergenceError
from .lattice import CouplingSet, EffectKind, TransformEffect
from .series import channel_sum, inverse_cosh_deviation, tanh_deviation
from .thermo import EnergyBreakdown, Parity, StateKind, SubRegime, in_band, sign_of_imag, string_laws

DEFAULT_EPS = 1e-12
# log(1e16): the integrands are cut where their envelope drops below 1e-16
_CUTOFF_LOG = 36.9


class XXZEtaKind(enum.Enum):
    REAL = "Real"
    IMAGINARY = "PureImaginary"


@dataclass(frozen=True)
class XXZParams:
    """Crossing parameter, boundary parameters and chain parity of the XXZ limit."""

    eta: complex
    beta_minus: tuple
    beta_plus: tuple
    parity: Parity = Parity.EVEN

    def __post_init__(self):
        eta = complex(self.eta)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "beta_minus", tuple(complex(b) for b in self.beta_minus))
        object.__setattr__(self, "beta_plus", tuple(complex(b) for b in self.beta_plus))
        object.__setattr__(self, "parity", Parity(self.parity))
        if len(self.beta_minus) != 3 or len(self.beta_plus) != 3:
            raise DomainError("need three boundary parameters on each side")
        if abs(eta.imag) < 1e-14 and 0 < eta.real < 1 and abs(eta.real - 0.5) > 1e-12:
            return
        if abs(eta.real) < 1e-14 and eta.imag > 0:
            return
        raise DomainError(f"eta must be real in (0,1) without 1/2, or imaginary with Im > 0; got {eta}")

    @property
    def kind(self) -> XXZEtaKind:
        return XXZEtaKind.REAL if abs(self.eta.imag) < 1e-14 else XXZEtaKind.IMAGINARY

    def with_(self, **changes) -> "XXZParams":
        return replace(self, **changes)


def xxz_couplings_and_fields(p: XXZParams) -> CouplingSet:
    """Exchange constants ``(1, 1, cosh(i pi eta))`` and the two boundary fields."""
    s_eta = np.sinh(1j * np.pi * p.eta)
    fields = []
    for sign, beta in ((-1, p.beta_minus), (1, p.beta_plus)):
        b1, b2, b3 = (1j * np.pi * b for b in beta)
        if abs(np.sinh(b1)) < 1e-14 or abs(np.cosh(b3)) < 1e-14:
            raise PoleError(f"boundary field undefined at beta={beta}")
        base = sign * s_eta / (np.sinh(b1) * np.cosh(b3))
        hx = 1j * base * np.sinh(b2)
        hy = base * np.cosh(b2)
        hz = sign * s_eta * np.tanh(b3) / np.tanh(b1)
        fields.append(tuple(complex(v) for v in (hx, hy, hz)))
    return CouplingSet(1.0 + 0j, 1.0 + 0j, complex(np.cosh(1j * np.pi * p.eta)), fields[0], fields[1])


# ---------------------------------------------------------------- real eta


def _tanh_cosh_over_sinh(x, eta, shift):
    """tanh(eta x) cosh(shift x) / sinh(x) for x >= 0, finite at x = 0 and free of overflow."""
    x = np.asarray(x, dtype=float)
    small = x < 1e-8
    safe = np.where(small, 1.0, x)
    ratio = (np.exp((abs(shift) - 1) * safe) + np.exp((-abs(shift) - 1) * safe)) / -np.expm1(-2 * safe)
    return np.where(small, eta, np.tanh(eta * safe) * ratio)


def _tanh_cos_over_sinh(x, eta, freq):
    """tanh(eta x) cos(freq x) / sinh(x) for x >= 0."""
    x = np.asarray(x, dtype=float)
    small = x < 1e-8
    safe = np.where(small, 1.0, x)
    value = np.tanh(eta * safe) * np.cos(freq * safe) * 2 * np.exp(-safe) / -np.expm1(-2 * safe)
    return np.where(small, eta, value)


def _line_integral(integrand, decay: float, eps: float) -> float:
    """Integral over the real line of an even integrand decaying like exp(-decay |x|)."""
    if decay <= 0:
        raise SeriesDivergenceError(f"integrand does not decay (rate {decay})")
    cutoff = _CUTOFF_LOG / decay
    value, _ = integrate.quad(integrand, 0.0, cutoff, epsabs=eps, epsrel=eps, limit=2000)
    return 2.0 * value


def _real_components(p: XXZParams, eps: float) -> dict:
    eta = p.eta.real
    pref = np.sin(np.pi * eta) / np.pi
    bulk_int = _line_integral(lambda x: _tanh_cosh_over_sinh(x, eta, 1 - 2 * eta),
                              1 - abs(1 - 2 * eta), eps)
    e_bulk = -2 * pref * bulk_int - np.cos(np.pi * eta)

    shifts = (1 - 2 * eta, 1 - abs(1 - 2 * eta), 1 - eta, eta)
    signs = (1, 1, -1, -1)
    free_int = _line_integral(
        lambda x: sum(s * _tanh_cosh_over_sinh(x, eta, a) for a, s in zip(shifts, signs)),
        1 - max(abs(a) for a in shifts), eps)
    e_free = -pref * free_int + np.cos(np.pi * eta) - 2 * np.sin(np.pi * eta) / np.tan(2 * np.pi * eta)

    fields = []
    for beta in (p.beta_minus, p.beta_plus):
        b1, b3 = beta[0].real, beta[2].imag
        value = _line_integral(
            lambda x: _tanh_cosh_over_sinh(x, eta, 1 - 2 * b1) + _tanh_cos_over_sinh(x, eta, 2 * b3),
            1 - abs(1 - 2 * b1), eps)
        fields.append(-pref * value)

    strings = {}
    if eta > 0.5:
        strings["w1"] = xxz_discrete_root_energy_real(p, 0.5j * (1 - eta), eps)
    return {"e_bulk": e_bulk, "e_free": e_free, "e_left": fields[0], "e_right": fields[1],
            "e_strings": strings}


def xxz_discrete_root_energy_real(p: XXZParams, w: complex, eps: float = DEFAULT_EPS) -> float:
    """Energy of a discrete root ``w`` on the imaginary axis for real eta; zero outside the band."""
    eta = p.eta.real
    w = complex(w)
    if abs(w.real) > 1e-14:
        raise DomainError("for real eta only roots on the imaginary axis remain at finite position")
    weight = sign_of_imag(w + 0.5j * eta) - sign_of_imag(w - 0.5j * eta)
    if weight == 0:
        return 0.0
    y = w.imag
    decay = eta - 2 * abs(y)
    value = _line_integral(
        lambda x: (np.exp(-decay * x) + np.exp(-(eta + 2 * abs(y)) * x)) / (1 + np.exp(-2 * eta * x)),
        decay, eps)
    return float(weight * np.sin(np.pi * eta) / np.pi * value)


def xxz_energies_real(p: XXZParams, eps: float = DEFAULT_EPS) -> EnergyBreakdown:
    """Surface energy of the easy-plane chain; the excitation energy is zero.

    The boundary strings of the elliptic case move to the infinite edge of
    the strip and carry no energy, so they are not enumerated; only the
    fixed root at ``(1 - eta)/2 i`` survives when ``eta > 1/2``.
    """
    if p.kind is not XXZEtaKind.REAL:
        raise DomainError("real-eta branch called with imaginary eta")
    c = _real_components(p, eps)
    surface = c["e_free"] + c["e_left"] + c["e_right"] + sum(c["e_strings"].values())
    return EnergyBreakdown(c["e_bulk"], c["e_free"], c["e_left"], c["e_right"], c["e_strings"], 0.0,
                           surface, None, excitation=0.0, excited_strings=dict(c["e_strings"]),
                           string_parity=p.parity.value)


# ---------------------------------------------------------------- imaginary eta


def _imag_setup(p: XXZParams):
    h = p.eta.imag
    return h, np.sinh(1j * np.pi * p.eta)


def xxz_discrete_root_energy_imag(p: XXZParams, w: complex, eps: float = DEFAULT_EPS) -> float:
    """Energy of a discrete root at ``w`` for imaginary eta; zero outside the band."""
    h, s_eta = _imag_setup(p)
    w = complex(w)
    weight = sign_of_imag(w + 0.5j * h) - sign_of_imag(w - 0.5j * h)
    if weight == 0:
        return 0.0
    x = 2j * np.pi * w
    c = np.pi * h
    half = channel_sum([1.0, 1.0], [x - c, -x - c], [inverse_cosh_deviation(c)], eps)
    value = -weight * s_eta * (1.0 + 2.0 * half)
    return _real(value, "discrete root energy")


def _real(value, what: str) -> float:
    value = complex(value)
    if abs(value.imag) > 1e-10 * max(1.0, abs(value.real)):
        raise DomainError(f"{what} has imaginary part {value.imag:.3e}")
    return value.real


def _tanh_series(amps, rates, c, eps):
    """sum_{k>=1} tanh(k c) sum_m amps[m] exp(k rates[m])."""
    return channel_sum(amps, rates, [tanh_deviation(c)], eps)


def _imag_components(p: XXZParams, eps: float) -> dict:
    h, s_eta = _imag_setup(p)
    c = np.pi * h
    # tanh(i k pi eta) = -tanh(k pi h), exp(2 i k pi eta) = exp(-2 k pi h)
    bulk = -_tanh_series([1.0], [-2 * c], c, eps)
    e_bulk = -4 * s_eta * bulk - np.cosh(1j * np.pi * p.eta)
    free = -_tanh_series([-1.0, 1.0], [-4 * c, -2 * c], 2 * c, eps)
    e_free = (4 * s_eta * free + np.cosh(1j * np.pi * p.eta)
              - 2 * s_eta / np.tanh(2j * np.pi * p.eta))
    fields = []
    for beta in (p.beta_minus, p.beta_plus):
        rates = [2j * np.pi * beta[0], 2j * np.pi * beta[2] + 1j * np.pi]
        value = -_tanh_series([1.0, 1.0], rates, c, eps)
        fields.append(_real(-2 * s_eta * value, "field energy"))
    return {"e_bulk": _real(e_bulk, "bulk energy"), "e_free": _real(e_free, "free energy"),
            "e_left": fields[0], "e_right": fields[1]}


def xxz_strings_imag(p: XXZParams, state=StateKind.GROUND, string_parity=None) -> dict:
    """Boundary-string positions for imaginary eta (strip cap sent to infinity)."""
    parity = p.parity if string_parity is None else Parity(string_parity)
    h = p.eta.imag
    roots, _ = string_laws(SubRegime.SMALL, parity, StateKind(state), h, np.inf, 0.5,
                           p.beta_minus[0].imag, p.beta_plus[0].imag,
                           p.beta_minus[2].imag, p.beta_plus[2].imag)
    return roots


def xxz_energies_imag(p: XXZParams, eps: float = DEFAULT_EPS, string_parity=None) -> EnergyBreakdown:
    """Surface and excitation energies of the easy-axis chain.

    ``string_parity`` overrides the parity used for the string laws (the
    parity term always follows ``p.parity``); ``B1Negate`` is handled by
    canonicalizing with a parity swap.
    """
    if p.kind is not XXZEtaKind.IMAGINARY:
        raise DomainError("imaginary-eta branch called with real eta")
    p, swapped = canonicalize_xxz(p)
    parity = p.parity if string_parity is None else Parity(string_parity)
    if swapped:
        parity = parity.swapped()
    comp = _imag_components(p, eps)
    h = p.eta.imag

    def string_energies(state):
        roots = xxz_strings_imag(p, state, parity)
        return {label: xxz_discrete_root_energy_imag(p, w, eps)
                for label, w in roots.items() if in_band(w, h)}

    ground = string_energies(StateKind.GROUND)
    excited = string_energies(StateKind.FIRST_EXCITED)
    # the lower of the two configurations is the ground state
    if sum(excited.values()) < sum(ground.values()):
        ground, excited = excited, ground
    par = xxz_discrete_root_energy_imag(p, 0.5, eps) if p.parity is Parity.ODD else 0.0
    surface = comp["e_free"] + comp["e_left"] + comp["e_right"] + sum(ground.values()) - par
    excitation = sum(excited.values()) - sum(ground.values())
    return EnergyBreakdown(comp["e_bulk"], comp["e_free"], comp["e_left"], comp["e_right"], ground,
                           par, surface, None, excitation=excitation, excited_strings=excited,
                           string_parity=parity.value)


def xxz_energies(p: XXZParams, eps: float = DEFAULT_EPS) -> EnergyBreakdown:
    """Dispatch on the kind of ``eta``."""
    if p.kind is XXZEtaKind.REAL:
        return xxz_energies_real(p, eps)
    return xxz_energies_imag(p, eps)


# ---------------------------------------------------------------- transformations


class XXZTransform(enum.Enum):
    B1_PLUS_ONE = "B1PlusOne"
    B1_NEGATE = "B1Negate"


def transform_rules_xxz(p: XXZParams, kind) -> TransformEffect:
    """Declared effect of a boundary-parameter change on the imaginary-eta branch."""
    if p.kind is not XXZEtaKind.IMAGINARY:
        raise DomainError("transformation rules are stated for imaginary eta")
    kind = XXZTransform(kind)
    if kind is XXZTransform.B1_PLUS_ONE:
        return TransformEffect(EffectKind.SPECTRUM_INVARIANT)
    return TransformEffect(EffectKind.PARITY_SWAP_EQUIVALENT)


def apply_xxz_transform(p: XXZParams, kind) -> tuple:
    """Return ``(transformed params, TransformEffect)``."""
    effect = transform_rules_xxz(p, kind)
    bp = list(p.beta_plus)
    bp[0] = bp[0] + 1.0 if XXZTransform(kind) is XXZTransform.B1_PLUS_ONE else -bp[0]
    return p.with_(beta_plus=tuple(bp)), effect


def canonicalize_xxz(p: XXZParams, tol: float = 1e-12) -> tuple:
    """Undo unit shifts and sign flips of ``beta_plus[1]``; returns ``(params, parity_swapped)``."""
    b = p.beta_plus[0]
    b = complex(b.real - np.round(b.real / 2) * 2, b.imag)
    if abs(abs(b.real) - 1) < tol:
        b -= np.sign(b.real)
    swapped = False
    if b.imag < -tol:
        b, swapped = -b, True
    if abs(b.real) > tol:
        raise DomainError(f"beta_plus[1] must be imaginary up to integer shifts, got {p.beta_plus[0]}")
    bp = list(p.beta_plus)
    bp[0] = complex(0.0, b.imag)
    return p.with_(beta_plus=tuple(bp)), swapped
