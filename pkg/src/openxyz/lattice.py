"""Couplings, R/K-matrices, the double-row transfer matrix and the Hamiltonian.

Basis convention: a chain state is indexed by the integer whose bit ``j-1``
is the spin on site ``j`` (1 = down), so site 1 is the least significant
qubit.  Two-site local matrices use ``index = 2*s_left + s_right``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .elliptic import as_tau, lattice_distance, sigma, sigma_prime, theta, zeta
from .errors import DomainError, PoleError

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)
PERM = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)

MAX_DENSE_SITES = 12
MAX_SITES = 16


class EtaKind(enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"


def _complex_tuple(values, length, name):
    out = tuple(complex(v) for v in values)
    if len(out) != length:
        raise DomainError(f"{name} needs {length} entries, got {len(out)}")
    return out


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the open chain.

    ``beta_minus``/``beta_plus`` hold the three boundary parameters of the
    site-1 and site-N boundaries.  The shifted parameters entering the sigma
    products are ``alpha = (beta1, beta2 + tau/2, beta3 + 1/2)``.
    """

    tau: complex
    eta: complex
    n_sites: int
    beta_minus: Sequence[complex]
    beta_plus: Sequence[complex]
    inhomogeneities: Sequence[complex] | None = None
    eta_kind: EtaKind | None = None

    def __post_init__(self):
        tau = as_tau(self.tau)
        if abs(tau.real) > 1e-14:
            raise DomainError("only pure imaginary tau is supported")
        object.__setattr__(self, "tau", complex(0.0, tau.imag))
        n = int(self.n_sites)
        if n < 1 or n != self.n_sites:
            raise DomainError(f"n_sites must be a positive integer, got {self.n_sites}")
        object.__setattr__(self, "n_sites", n)
        eta = complex(self.eta)
        kind = self.eta_kind
        if kind is None:
            kind = EtaKind.REAL if abs(eta.imag) <= 1e-14 else EtaKind.IMAGINARY
        kind = EtaKind(kind)
        if kind is EtaKind.REAL:
            if abs(eta.imag) > 1e-14 or not 0 < eta.real < 1:
                raise DomainError(f"real eta must lie in (0, 1), got {eta!r}")
            eta = complex(eta.real, 0.0)
        else:
            if abs(eta.real) > 1e-14 or not 0 < eta.imag < tau.imag:
                raise DomainError(f"imaginary eta must have Im in (0, Im tau), got {eta!r}")
            eta = complex(0.0, eta.imag)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "eta_kind", kind)
        object.__setattr__(self, "beta_minus", _complex_tuple(self.beta_minus, 3, "beta_minus"))
        object.__setattr__(self, "beta_plus", _complex_tuple(self.beta_plus, 3, "beta_plus"))
        theta_j = self.inhomogeneities
        theta_j = (0j,) * n if theta_j is None else _complex_tuple(theta_j, n, "inhomogeneities")
        object.__setattr__(self, "inhomogeneities", theta_j)

    @property
    def alpha_minus(self) -> tuple:
        return shifted_alpha(self.beta_minus, self.tau)

    @property
    def alpha_plus(self) -> tuple:
        return shifted_alpha(self.beta_plus, self.tau)

    @property
    def homogeneous(self) -> bool:
        return all(t == 0 for t in self.inhomogeneities)

    def with_(self, **changes) -> "ModelParams":
        if "n_sites" in changes and "inhomogeneities" not in changes:
            changes["inhomogeneities"] = None
        return replace(self, **changes)


def shifted_alpha(beta, tau) -> tuple:
    b1, b2, b3 = beta
    return (complex(b1), complex(b2) + tau / 2, complex(b3) + 0.5)


@dataclass(frozen=True)
class CouplingSet:
    """Bulk exchange constants, boundary fields and the K-matrix constants c."""

    jx: complex
    jy: complex
    jz: complex
    h_minus: tuple
    h_plus: tuple
    c_minus: tuple = field(default=(), repr=False)
    c_plus: tuple = field(default=(), repr=False)

    def values(self) -> np.ndarray:
        return np.array([self.jx, self.jy, self.jz, *self.h_minus, *self.h_plus])


def boundary_constants(alpha, tau) -> tuple:
    """The three K-matrix constants (c_x, c_y, c_z) for one boundary."""
    alpha = np.asarray(alpha, dtype=complex)
    for a in alpha:
        if lattice_distance(a, tau) < 1e-13:
            raise PoleError(f"boundary parameter alpha={a!r} sits on a zero of sigma")
    s_alpha = sigma(alpha, tau)
    total = alpha.sum()
    half_t, half_b = tau / 2, (1 + tau) / 2
    cx = np.exp(-1j * np.pi * (total - half_t)) * np.prod(sigma(alpha - half_t, tau) / s_alpha)
    cy = np.exp(-1j * np.pi * (total - half_b)) * np.prod(sigma(alpha - half_b, tau) / s_alpha)
    cz = np.prod(sigma(alpha - 0.5, tau) / s_alpha)
    return (complex(cx), complex(cy), complex(cz))


def couplings(p: ModelParams) -> CouplingSet:
    """Exchange constants J and boundary fields h for the parameters ``p``."""
    tau, eta = p.tau, p.eta
    half_t, half_b = tau / 2, (1 + tau) / 2
    phase = np.exp(1j * np.pi * eta)
    jx = phase * sigma(eta + half_t, tau) / sigma(half_t, tau)
    jy = phase * sigma(eta + half_b, tau) / sigma(half_b, tau)
    jz = sigma(eta + 0.5, tau) / sigma(0.5, tau)
    s_eta = sigma(eta, tau)
    scale = np.array([s_eta / sigma(half_t, tau), s_eta / sigma(half_b, tau), s_eta / sigma(0.5, tau)])
    c_minus = boundary_constants(p.alpha_minus, tau)
    c_plus = boundary_constants(p.alpha_plus, tau)
    h_minus = tuple(complex(v) for v in scale * np.array(c_minus))
    h_plus = tuple(complex(v) for v in -scale * np.array(c_plus))
    return CouplingSet(complex(jx), complex(jy), complex(jz), h_minus, h_plus, c_minus, c_plus)


# ---------------------------------------------------------------- R and K


def r_weights(u, p: ModelParams):
    """The four eight-vertex weights (a, b, c, d) at spectral parameter(s) u."""
    u = np.asarray(u, dtype=complex)
    two_tau = 2 * p.tau
    even = lambda z: theta((0, 0.5), z, two_tau)
    odd = lambda z: theta((0.5, 0.5), z, two_tau)
    e0 = even(0.0)
    eu, ou = even(u), odd(u)
    ev, ov = even(u + p.eta), odd(u + p.eta)
    n_odd = e0 * odd(p.eta)
    n_even = e0 * even(p.eta)
    return eu * ov / n_odd, ou * ev / n_odd, eu * ev / n_even, ou * ov / n_even


def r_matrix(u, p: ModelParams) -> np.ndarray:
    """4x4 eight-vertex R-matrix; broadcasts to shape ``u.shape + (4, 4)``."""
    a, b, c, d = r_weights(u, p)
    out = np.zeros(np.shape(a) + (4, 4), dtype=complex)
    out[..., 0, 0] = out[..., 3, 3] = a
    out[..., 1, 1] = out[..., 2, 2] = b
    out[..., 1, 2] = out[..., 2, 1] = c
    out[..., 0, 3] = out[..., 3, 0] = d
    return out


def _k_matrix(u, consts, tau):
    """K-(u) with sigma(2u) expanded by the duplication formula.

    Every entry then becomes a product of three sigma functions, so the
    apparent poles at u = -1/2, -tau/2, -(1+tau)/2 and u = 0 are removable.
    """
    u = np.asarray(u, dtype=complex)
    cx, cy, cz = consts
    half_t, half_b = tau / 2, (1 + tau) / 2
    norm = sigma(0.5, tau) * sigma(half_t, tau) * sigma(-half_b, tau)
    s0, s_h, s_t, s_b = sigma(u, tau), sigma(u + 0.5, tau), sigma(u + half_t, tau), sigma(u - half_b, tau)
    ratio = s_h * s_t * s_b / norm
    kx = cx * np.exp(-1j * np.pi * u) * s0 * s_h * s_b / norm
    ky = -cy * np.exp(1j * np.pi * u) * s0 * s_h * s_t / norm
    kz = cz * s0 * s_t * s_b / norm
    out = np.empty(u.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = ratio + kz
    out[..., 1, 1] = ratio - kz
    out[..., 0, 1] = kx - 1j * ky
    out[..., 1, 0] = kx + 1j * ky
    return out


def k_minus(u, p: ModelParams, consts=None) -> np.ndarray:
    """Reflection matrix at the site-1 end."""
    consts = boundary_constants(p.alpha_minus, p.tau) if consts is None else consts
    return _k_matrix(u, consts, p.tau)


def k_plus(u, p: ModelParams, consts=None) -> np.ndarray:
    """Dual reflection matrix at the site-N end: K-(-u-eta) with the plus constants."""
    consts = boundary_constants(p.alpha_plus, p.tau) if consts is None else consts
    return _k_matrix(-np.asarray(u, dtype=complex) - p.eta, consts, p.tau)


# ------------------------------------------------------- transfer matrix


def _apply_r(x, weights, site, n):
    """Apply R on (auxiliary, site) to a batch ``x`` of shape (B, 2, 2**n, K)."""
    a, b, c, d = (w[:, None, None, None] for w in weights)
    bsz, _, dim, k = x.shape
    xr = x.reshape(bsz, 2, 2 ** (n - site), 2, 2 ** (site - 1), k)
    x00, x01 = xr[:, 0, :, 0], xr[:, 0, :, 1]
    x10, x11 = xr[:, 1, :, 0], xr[:, 1, :, 1]
    y = np.empty_like(xr)
    y[:, 0, :, 0] = a * x00 + d * x11
    y[:, 1, :, 1] = d * x00 + a * x11
    y[:, 0, :, 1] = b * x01 + c * x10
    y[:, 1, :, 0] = c * x01 + b * x10
    return y.reshape(bsz, 2, dim, k)


def transfer_apply(u, p: ModelParams, vectors, consts=None) -> np.ndarray:
    """Apply t(u) to the columns of ``vectors`` without forming the matrix.

    ``u`` may be a scalar or a 1-D array of B spectral points; ``vectors`` has
    shape (2**N,) or (2**N, K).  Returns shape (B, 2**N, K) (squeezed to match
    the inputs).
    """
    n = p.n_sites
    if n > MAX_SITES:
        raise DomainError(f"transfer matrix limited to N <= {MAX_SITES}")
    u_arr = np.atleast_1d(np.asarray(u, dtype=complex))
    vec = np.asarray(vectors, dtype=complex)
    single_vec = vec.ndim == 1
    if single_vec:
        vec = vec[:, None]
    dim = 2 ** n
    if vec.shape[0] != dim:
        raise DomainError(f"vectors need leading dimension {dim}")
    if consts is None:
        consts = (boundary_constants(p.alpha_minus, p.tau), boundary_constants(p.alpha_plus, p.tau))
    kminus = k_minus(u_arr, p, consts[0])
    kplus = k_plus(u_arr, p, consts[1])
    thetas = np.asarray(p.inhomogeneities)
    w_hat = [r_weights(u_arr + thetas[j - 1], p) for j in range(1, n + 1)]
    w_mono = [r_weights(u_arr - thetas[j - 1], p) for j in range(1, n + 1)]
    bsz = u_arr.size
    out = np.zeros((bsz, dim, vec.shape[1]), dtype=complex)
    for aux in (0, 1):
        x = np.zeros((bsz, 2, dim, vec.shape[1]), dtype=complex)
        x[:, aux] = vec
        for j in range(n, 0, -1):
            x = _apply_r(x, w_hat[j - 1], j, n)
        x = np.einsum("bxa,badk->bxdk", kminus, x)
        for j in range(1, n + 1):
            x = _apply_r(x, w_mono[j - 1], j, n)
        out += np.einsum("bx,bxdk->bdk", kplus[:, aux, :], x)
    if single_vec:
        out = out[..., 0]
    if np.ndim(u) == 0:
        out = out[0]
    return out


def transfer_matrix(u, p: ModelParams, chunk: int = 256) -> np.ndarray:
    """Dense t(u) for one spectral point, assembled column block by block."""
    if p.n_sites > MAX_DENSE_SITES:
        raise DomainError(f"dense transfer matrix limited to N <= {MAX_DENSE_SITES}")
    dim = 2 ** p.n_sites
    consts = (boundary_constants(p.alpha_minus, p.tau), boundary_constants(p.alpha_plus, p.tau))
    out = np.empty((dim, dim), dtype=complex)
    eye = np.eye(dim, dtype=complex)
    for start in range(0, dim, chunk):
        stop = min(dim, start + chunk)
        out[:, start:stop] = transfer_apply(u, p, eye[:, start:stop], consts)
    return out


def transfer_derivative(p: ModelParams, u0: complex = 0.0, step: float = 1e-3) -> np.ndarray:
    """dt/du at u0 from the four-point complex stencil plus one Richardson step.

    The stencil (f(h) - f(-h) - i f(ih) + i f(-ih)) / 4h cancels every odd
    power below h^4, so halving h and combining removes the h^4 term too.
    """
    def stencil(h):
        pts = u0 + np.array([h, -h, 1j * h, -1j * h])
        mats = [transfer_matrix(x, p) for x in pts]
        return (mats[0] - mats[1] - 1j * mats[2] + 1j * mats[3]) / (4 * h)

    coarse, fine = stencil(step), stencil(step / 2)
    return (16 * fine - coarse) / 15


# ------------------------------------------------------------ Hamiltonian


def site_operator(op, site: int, n: int):
    """Sparse embedding of a 2x2 operator on ``site`` (1-based, little-endian)."""
    left = sp.identity(2 ** (n - site), dtype=complex, format="csr")
    right = sp.identity(2 ** (site - 1), dtype=complex, format="csr")
    return sp.kron(sp.kron(left, sp.csr_matrix(op)), right, format="csr")


def hamiltonian_sparse(p: ModelParams, cs: CouplingSet | None = None):
    """Sparse Hamiltonian built from the nearest-neighbour and boundary terms."""
    n = p.n_sites
    if n > MAX_SITES:
        raise DomainError(f"Hamiltonian limited to N <= {MAX_SITES}")
    cs = couplings(p) if cs is None else cs
    paulis = (SX, SY, SZ)
    ops = [[site_operator(s, j, n) for s in paulis] for j in range(1, n + 1)]
    dim = 2 ** n
    h = sp.csr_matrix((dim, dim), dtype=complex)
    for j in range(n - 1):
        for coupling, a, b in zip((cs.jx, cs.jy, cs.jz), ops[j], ops[j + 1]):
            h = h + coupling * (a @ b)
    for k in range(3):
        h = h + cs.h_minus[k] * ops[0][k] + cs.h_plus[k] * ops[-1][k]
    return h.tocsr()


def hamiltonian(p: ModelParams) -> np.ndarray:
    """Dense Hamiltonian (N <= 12)."""
    if p.n_sites > MAX_DENSE_SITES:
        raise DomainError(f"dense Hamiltonian limited to N <= {MAX_DENSE_SITES}")
    return hamiltonian_sparse(p).toarray()


def energy_normalization(p: ModelParams) -> complex:
    """The prefactor sigma(eta)/sigma'(0) that turns log-derivatives into energies."""
    return sigma(p.eta, p.tau) / sigma_prime(0.0, p.tau)


def energy_offset(p: ModelParams) -> complex:
    """Constant (N-1) zeta(eta) + 2 zeta(2 eta) removed from d ln t / du."""
    return (p.n_sites - 1) * zeta(p.eta, p.tau) + 2 * zeta(2 * p.eta, p.tau)


def hamiltonian_from_transfer(p: ModelParams, step: float = 1e-3) -> np.ndarray:
    """Hamiltonian recovered as the logarithmic derivative of t(u) at u = 0."""
    if not p.homogeneous:
        raise DomainError("the transfer-matrix route needs all inhomogeneities zero")
    t0 = transfer_matrix(0.0, p)
    dt = transfer_derivative(p, 0.0, step)
    try:
        log_der = np.linalg.solve(t0, dt)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError("t(0) is singular") from exc
    dim = t0.shape[0]
    return energy_normalization(p) * (log_der - energy_offset(p) * np.eye(dim))


# ---------------------------------------------------- integrability checks


def _rel(lhs, rhs) -> float:
    scale = max(np.max(np.abs(lhs)), np.max(np.abs(rhs)), 1e-300)
    return float(np.max(np.abs(lhs - rhs)) / scale)


def _embed3(op4, pair):
    if pair == (1, 2):
        return np.kron(op4, ID2)
    if pair == (2, 3):
        return np.kron(ID2, op4)
    swap23 = np.kron(ID2, PERM)
    return swap23 @ np.kron(op4, ID2) @ swap23


def qybe_residual(u1, u2, u3, p: ModelParams) -> float:
    r12 = _embed3(r_matrix(u1 - u2, p), (1, 2))
    r13 = _embed3(r_matrix(u1 - u3, p), (1, 3))
    r23 = _embed3(r_matrix(u2 - u3, p), (2, 3))
    return _rel(r12 @ r13 @ r23, r23 @ r13 @ r12)


def _r21(u, p):
    return PERM @ r_matrix(u, p) @ PERM


def reflection_residual(u1, u2, p: ModelParams) -> float:
    k1 = np.kron(k_minus(u1, p), ID2)
    k2 = np.kron(ID2, k_minus(u2, p))
    lhs = r_matrix(u1 - u2, p) @ k1 @ _r21(u1 + u2, p) @ k2
    rhs = k2 @ r_matrix(u1 + u2, p) @ k1 @ _r21(u1 - u2, p)
    return _rel(lhs, rhs)


def dual_reflection_residual(u1, u2, p: ModelParams, literal_two: bool = False) -> float:
    """Dual reflection equation residual with the crossing shift -u1-u2-2*eta.

    ``literal_two`` replaces the shift by -u1-u2-2 (a debugging aid; the
    equation does not hold in that form).
    """
    shift = -u1 - u2 - (2.0 if literal_two else 2 * p.eta)
    k1 = np.kron(k_plus(u1, p), ID2)
    k2 = np.kron(ID2, k_plus(u2, p))
    lhs = r_matrix(u2 - u1, p) @ k1 @ _r21(shift, p) @ k2
    rhs = k2 @ r_matrix(shift, p) @ k1 @ _r21(u2 - u1, p)
    return _rel(lhs, rhs)


def unitarity_residual(u, p: ModelParams) -> float:
    xi = sigma(u - p.eta, p.tau) * sigma(u + p.eta, p.tau) / sigma(p.eta, p.tau) ** 2
    return _rel(r_matrix(u, p) @ _r21(-u, p), -xi * np.eye(4))


def crossing_residual(u, p: ModelParams) -> float:
    v1 = np.kron(-1j * SY, ID2)
    r = r_matrix(-u - p.eta, p).reshape(2, 2, 2, 2)
    r_t2 = r.transpose(0, 3, 2, 1).reshape(4, 4)
    return _rel(r_matrix(u, p), v1 @ r_t2 @ v1)


def symmetry_residual(u, p: ModelParams) -> float:
    """Worst of the Z2 (sigma^i sigma^i) and PT symmetries of R(u)."""
    r = r_matrix(u, p)
    worst = _rel(r, _r21(u, p))
    worst = max(worst, _rel(r, r.T))
    for s in (SX, SY, SZ):
        ss = np.kron(s, s)
        worst = max(worst, _rel(ss @ r, r @ ss))
    return worst


def initial_condition_residual(p: ModelParams) -> float:
    return max(_rel(r_matrix(0.0, p), PERM), _rel(r_matrix(-p.eta, p), -(np.eye(4) - PERM)))


def commutator_residual(u, v, p: ModelParams) -> float:
    """||[t(u), t(v)]|| / (||t(u)|| ||t(v)||) in the max norm."""
    tu, tv = transfer_matrix(u, p), transfer_matrix(v, p)
    scale = np.max(np.abs(tu)) * np.max(np.abs(tv))
    return float(np.max(np.abs(tu @ tv - tv @ tu)) / scale)


def integrability_report(p: ModelParams, n_points: int = 20, seed: int = 0,
                         literal_two: bool = False) -> dict:
    """Max residual of every algebraic identity over random spectral points."""
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-0.5, 0.5, (n_points, 3)) + 1j * rng.uniform(-0.5, 0.5, (n_points, 3)) * p.tau.imag
    report = {
        "qybe": max(qybe_residual(*row, p) for row in pts),
        "reflection": max(reflection_residual(row[0], row[1], p) for row in pts),
        "dual_reflection": max(dual_reflection_residual(row[0], row[1], p, literal_two) for row in pts),
        "unitarity": max(unitarity_residual(row[0], p) for row in pts),
        "crossing": max(crossing_residual(row[0], p) for row in pts),
        "symmetry": max(symmetry_residual(row[0], p) for row in pts),
        "initial_condition": initial_condition_residual(p),
    }
    if p.n_sites <= 6:
        report["commutator"] = max(commutator_residual(row[0], row[1], p) for row in pts[:3])
    return report


# ------------------------------------------------- Hermiticity and transforms


@dataclass(frozen=True)
class RegionReport:
    in_region: bool
    violated_constraints: list


def _reduced(beta, t):
    re = float(np.mod(beta.real, 2.0))
    im = float(np.mod(beta.imag, 2.0 * t))
    if abs(re - 2.0) < 1e-12:
        re = 0.0
    if abs(im - 2.0 * t) < 1e-12 * max(1.0, t):
        im = 0.0
    return re, im


def hermitian_region_check(p: ModelParams, tol: float = 1e-12) -> RegionReport:
    """List every Hermiticity clause violated by the boundary parameters."""
    t = p.tau.imag
    near = lambda x, targets: any(abs(x - v) <= tol for v in targets)
    violated = []
    for side, betas in (("minus", p.beta_minus), ("plus", p.beta_plus)):
        (re1, im1), (re2, im2), (re3, im3) = (_reduced(b, t) for b in betas)
        if p.eta_kind is EtaKind.REAL:
            if near(re1, (0.0,)):
                violated.append(f"beta_{side}[1]: Re(beta1) in (0,2)")
            if not near(im1, (0.0, t)):
                violated.append(f"beta_{side}[1]: Im(beta1)=0 or tau/i")
        else:
            if not near(re1, (0.0, 1.0)):
                violated.append(f"beta_{side}[1]: Re(beta1)=0 or 1")
            if near(im1, (0.0,)):
                violated.append(f"beta_{side}[1]: Im(beta1) in (0,2tau/i)")
        if not near(im2, (0.0, t)):
            violated.append(f"beta_{side}[2]: Im(beta2)=0 or tau/i")
        if not near(re3, (0.0, 1.0)):
            violated.append(f"beta_{side}[3]: Re(beta3)=0 or 1")
    return RegionReport(not violated, violated)


def canonical_region_check(p: ModelParams, tol: float = 1e-12) -> list:
    """Violated clauses of the compact region on which string laws are stated."""
    t = p.tau.imag
    out = []
    for side, (b1, b2, b3) in (("minus", p.beta_minus), ("plus", p.beta_plus)):
        if p.eta_kind is EtaKind.REAL:
            if abs(b1.imag) > tol or not (tol < b1.real <= 0.5 + tol):
                out.append(f"beta_{side}[1]: real in (0,1/2]")
        else:
            if abs(b1.real) > tol or not (tol < b1.imag <= t / 2 + tol):
                out.append(f"beta_{side}[1]: imaginary with Im in (0,tau/2i]")
        if abs(b2.imag) > tol or not (-tol <= b2.real <= 0.5 + tol):
            out.append(f"beta_{side}[2]: real in [0,1/2]")
        if abs(b3.real) > tol or not (-tol <= b3.imag <= t / 2 + tol):
            out.append(f"beta_{side}[3]: imaginary with Im in [0,tau/2i]")
    return out


class Transform(enum.Enum):
    SWAP_PM = "SwapPM"
    NEGATE_BOTH = "NegateBoth"
    B1_REFLECT_HALF = "B1ReflectHalf"
    B1_PLUS_ONE = "B1PlusOne"
    B1_PLUS_TAU = "B1PlusTau"


class EffectKind(enum.Enum):
    SPECTRUM_INVARIANT = "SpectrumInvariant"
    FIELD_FLIP = "FieldFlip"
    PARITY_SWAP_EQUIVALENT = "ParitySwapEquivalent"


@dataclass(frozen=True)
class TransformEffect:
    """Declared physical effect of a boundary-parameter transformation.

    ``flipped_axes`` lists the components of h+ that change sign.  A
    ``FIELD_FLIP`` leaves the thermodynamic-limit energies unchanged, while
    ``PARITY_SWAP_EQUIVALENT`` exchanges the even/odd-N string laws.
    """

    kind: EffectKind
    flipped_axes: tuple = ()


def apply_parameter_transform(p: ModelParams, kind) -> tuple:
    """Return ``(transformed params, TransformEffect)``."""
    kind = Transform(kind)
    bm, bp = list(p.beta_minus), list(p.beta_plus)
    real = p.eta_kind is EtaKind.REAL
    if kind is Transform.SWAP_PM:
        return p.with_(beta_minus=bp, beta_plus=bm), TransformEffect(EffectKind.SPECTRUM_INVARIANT)
    if kind is Transform.NEGATE_BOTH:
        return (p.with_(beta_minus=[-b for b in bm], beta_plus=[-b for b in bp]),
                TransformEffect(EffectKind.SPECTRUM_INVARIANT))
    if kind is Transform.B1_REFLECT_HALF:
        bp[0] = (1.0 if real else p.tau) - bp[0]
        effect = TransformEffect(EffectKind.FIELD_FLIP, ("z",) if real else ("x",))
    elif kind is Transform.B1_PLUS_ONE:
        bp[0] = bp[0] + 1.0
        effect = TransformEffect(EffectKind.PARITY_SWAP_EQUIVALENT if real else EffectKind.FIELD_FLIP,
                                 ("x", "y"))
    else:
        bp[0] = bp[0] + p.tau
        effect = TransformEffect(EffectKind.FIELD_FLIP if real else EffectKind.PARITY_SWAP_EQUIVALENT,
                                 ("y", "z"))
    return p.with_(beta_plus=bp), effect
