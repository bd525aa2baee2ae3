"""Eigenstates of the commuting family, transfer eigenvalues and their zero roots.

The eigenvalue Lambda(u) of an eigenstate is read off as the expectation value
of t(u).  Shifting by eta/2, f(v) = Lambda(v - eta/2) is an even theta
function of order 2n with n = N + 3, so it is fitted once on an explicit basis
of such functions and all later root finding runs on the fitted expansion.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse.linalg as spla

from . import lattice
from .elliptic import lattice_distance, sigma, theta, theta_prime, zeta
from .errors import DomainError, ExtractionError, PoleError, UnsupportedError
from .lattice import EtaKind, ModelParams

DEFAULT_RESOLVER = 0.11 + 0.07j


class Solver(enum.Enum):
    DENSE = "Dense"
    ITERATIVE = "IterativeGroundAndFirst"


class NotAnEigenstateError(ArithmeticError):
    """The vector is not an eigenvector of t(u) to the required tolerance."""


@dataclass(frozen=True)
class SpectrumSlice:
    """Joint eigenpairs of H and t(u0), sorted by (E, Re Lambda(u0), Im Lambda(u0))."""

    energies: np.ndarray
    states: np.ndarray
    resolver_point: complex
    t_eigenvalues_at_u0: np.ndarray
    degenerate_clusters: list = field(default_factory=list)

    def state(self, k: int) -> np.ndarray:
        return self.states[:, k]


# ------------------------------------------------------------ diagonalize


def _clusters(values, tol):
    groups, start = [], 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[k - 1] > tol:
            groups.append((start, k))
            start = k
    return groups


def _resolve(p, energies, vecs, u0, tol):
    """Rotate degenerate H-eigenspaces so that t(u0) becomes diagonal."""
    consts = (lattice.boundary_constants(p.alpha_minus, p.tau),
              lattice.boundary_constants(p.alpha_plus, p.tau))
    tv = lattice.transfer_apply(u0, p, vecs, consts)
    lam = np.einsum("dk,dk->k", vecs.conj(), tv)
    clusters = []
    for lo, hi in _clusters(energies, tol):
        if hi - lo == 1:
            continue
        block = vecs[:, lo:hi]
        small = block.conj().T @ tv[:, lo:hi]
        w, rot = np.linalg.eig(small)
        order = np.lexsort((w.imag, w.real))
        w, rot = w[order], rot[:, order]
        q, _ = np.linalg.qr(block @ rot)
        # keep the phase convention of the eigenvectors and drop QR sign flips
        q = q * np.exp(-1j * np.angle(np.einsum("dk,dk->k", q.conj(), block @ rot)))
        vecs[:, lo:hi] = q
        lam[lo:hi] = w
        clusters.append((lo, hi))
    return vecs, lam, clusters


def diagonalize(p: ModelParams, how=Solver.DENSE, resolver_point: complex = DEFAULT_RESOLVER,
                n_states: int = 2, degeneracy_tol: float = 1e-8) -> SpectrumSlice:
    """Eigenpairs of the Hamiltonian with degeneracies split by t(u0).

    With nonzero inhomogeneities there is no local Hamiltonian, so t(u0)
    itself is diagonalized and the energies are
    the eigenvalues of the logarithmic-derivative generator.
    """
    how = Solver(how)
    if not p.homogeneous:
        return _diagonalize_inhomogeneous(p, resolver_point)
    if how is Solver.DENSE:
        if p.n_sites > lattice.MAX_DENSE_SITES:
            raise DomainError(f"dense solver limited to N <= {lattice.MAX_DENSE_SITES}")
        h = lattice.hamiltonian(p)
        energies, vecs = np.linalg.eigh(h)
    else:
        if not lattice.hermitian_region_check(p).in_region:
            raise UnsupportedError("iterative solver needs a Hermitian Hamiltonian")
        if p.n_sites > lattice.MAX_SITES:
            raise DomainError(f"iterative solver limited to N <= {lattice.MAX_SITES}")
        h = lattice.hamiltonian_sparse(p)
        k = min(max(n_states + 4, 6), h.shape[0] - 2)
        v0 = np.full(h.shape[0], 1.0 / np.sqrt(h.shape[0]), dtype=complex)
        energies, vecs = spla.eigsh(h, k=k, which="SA", v0=v0, tol=1e-13)
        order = np.argsort(energies)
        energies, vecs = energies[order], vecs[:, order]
    scale = max(1.0, float(np.max(np.abs(energies))))
    vecs, lam, clusters = _resolve(p, energies, np.array(vecs, dtype=complex), resolver_point,
                                   degeneracy_tol * scale)
    order = np.lexsort((lam.imag, lam.real, np.round(energies / (degeneracy_tol * scale))))
    if how is Solver.ITERATIVE:
        order = order[:n_states]
    return SpectrumSlice(energies[order], vecs[:, order], resolver_point, lam[order], clusters)


def _diagonalize_inhomogeneous(p, u0):
    if p.n_sites > lattice.MAX_DENSE_SITES:
        raise DomainError("inhomogeneous diagonalization is dense only")
    lam, vecs = np.linalg.eig(lattice.transfer_matrix(u0, p))
    # t(u0) need not be normal for complex theta: keep the eigenvectors, only rescale them
    vecs = vecs / np.linalg.norm(vecs, axis=0)
    energies = np.array([generator_energy(vecs[:, k], p) for k in range(vecs.shape[1])]).real
    order = np.lexsort((lam.imag, lam.real, energies))
    return SpectrumSlice(energies[order], vecs[:, order], u0, lam[order], [])


def generator_energy(state, p: ModelParams, step: float = 1e-3) -> complex:
    """sigma(eta)/sigma'(0) [Lambda'(0)/Lambda(0) - offset] for an eigenstate."""
    offsets = np.array([1, -1, 1j, -1j])
    pts = np.concatenate([[0.0], step * offsets, step / 2 * offsets])
    vals = lambda_eval(pts, state, p, check=False)

    def stencil(v, h):
        return (v[0] - v[1] - 1j * v[2] + 1j * v[3]) / (4 * h)

    d = (16 * stencil(vals[5:], step / 2) - stencil(vals[1:5], step)) / 15
    return lattice.energy_normalization(p) * (d / vals[0] - lattice.energy_offset(p))


# ------------------------------------------------------------ Lambda(u)


def lambda_with_residual(u, state, p: ModelParams):
    """Return (Lambda(u), relative residual ||t psi - Lambda psi|| / ||t psi||)."""
    psi = np.asarray(state, dtype=complex)
    tpsi = lattice.transfer_apply(np.atleast_1d(u), p, psi)
    norm = np.vdot(psi, psi).real
    lam = tpsi @ psi.conj() / norm
    resid = np.linalg.norm(tpsi - lam[:, None] * psi, axis=1) / np.maximum(np.linalg.norm(tpsi, axis=1), 1e-300)
    if np.ndim(u) == 0:
        return lam[0], resid[0]
    return lam, resid


def lambda_eval(u, state, p: ModelParams, check: bool = True, tol: float = 1e-6):
    """Eigenvalue Lambda(u) of ``state``; raises when the state is not an eigenvector."""
    lam, resid = lambda_with_residual(u, state, p)
    if check and np.max(resid) > tol:
        raise NotAnEigenstateError(f"transfer-matrix residual {np.max(resid):.2e} exceeds {tol}")
    return lam


def lambda_at_zero(p: ModelParams) -> complex:
    """State-independent value Lambda(0)."""
    s = lambda z: sigma(z, p.tau)
    th = np.asarray(p.inhomogeneities)
    return complex(s(2 * p.eta) / s(p.eta) * np.prod(s(p.eta + th) * s(p.eta - th) / s(p.eta) ** 2))


def special_values(p: ModelParams) -> dict:
    """Lambda at u = 0, 1/2, tau/2 and (1+tau)/2 in closed form."""
    s = lambda z: sigma(z, p.tau)
    tau, eta, n = p.tau, p.eta, p.n_sites
    th = np.asarray(p.inhomogeneities)
    cs = lattice.couplings(p)
    base = s(2 * eta) / s(eta)
    prod = lambda shift: np.prod(s(eta + shift + th) * s(eta - shift - th) / s(eta) ** 2)
    phase = np.exp(-1j * np.pi * ((n + 3) * eta + tau - 2 * th.sum()))
    sign = (-1) ** (n + 1)
    return {
        0.0: lambda_at_zero(p),
        0.5: complex(sign * cs.c_minus[2] * cs.c_plus[2] * base * prod(0.5)),
        tau / 2: complex(sign * cs.c_minus[0] * cs.c_plus[0] * base * phase * prod(tau / 2)),
        (1 + tau) / 2: complex(-sign * cs.c_minus[1] * cs.c_plus[1] * base * phase * prod((1 + tau) / 2)),
    }


def quantum_determinant(u, p: ModelParams):
    s = lambda z: sigma(z, p.tau)
    eta = p.eta
    th = np.asarray(p.inhomogeneities)
    out = -s(2 * u + 2 * eta) * s(2 * u - 2 * eta) / s(eta) ** 2
    for alpha in (*p.alpha_minus, *p.alpha_plus):
        out = out * s(u + alpha) * s(u - alpha) / s(alpha) ** 2
    for t in th:
        out = out * s(u + t + eta) * s(u + t - eta) * s(u - t + eta) * s(u - t - eta) / s(eta) ** 4
    return out


def _rel(a, b) -> float:
    return float(abs(a - b) / max(abs(a), abs(b), 1e-300))


def validate_functional_relations(state, p: ModelParams, probe: complex = 0.2 + 0.1j) -> dict:
    """Relative residuals of the fusion relation, special values, crossing and periodicity."""
    s = lambda z: sigma(z, p.tau)
    th = np.asarray(p.inhomogeneities)
    eta, tau, n = p.eta, p.tau, p.n_sites
    specials = special_values(p)
    pts = np.concatenate([th, th - eta, list(specials), [probe, -probe - eta, probe + 1, probe + tau]])
    vals = lambda_eval(pts, state, p)
    fusion = 0.0
    for j, t in enumerate(th):
        rhs = -quantum_determinant(t, p) * s(eta) ** 2 / (s(2 * t + eta) * s(2 * t - eta))
        fusion = max(fusion, _rel(vals[j] * vals[n + j], rhs))
    off = 2 * n
    special = max(_rel(vals[off + k], v) for k, v in enumerate(specials.values()))
    off += len(specials)
    lam_u = vals[off]
    crossing = _rel(vals[off + 1], lam_u)
    period_one = _rel(vals[off + 2], lam_u)
    multiplier = np.exp(-2j * np.pi * (n + 3) * (2 * probe + eta + tau))
    period_tau = _rel(vals[off + 3], multiplier * lam_u)
    return {"fusion": fusion, "special_values": special, "crossing": crossing,
            "period_one": period_one, "period_tau": period_tau}


# ------------------------------------------------------------ zero roots


class RootTag(enum.Enum):
    BULK_LINE = "BulkLine"
    CONJUGATE_PAIR = "ConjugatePair"
    BOUNDARY_STRING = "BoundaryString"
    FIXED_PAIR = "FixedPair"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class RootSet:
    """N+3 zero roots z_l (one of each +-z pair) with Lambda_0 and per-root tags.

    ``roots`` hold z in the convention Lambda(u) = Lambda_0 prod sigma(u+z+eta/2)
    sigma(u-z+eta/2); :meth:`display` maps them to the plotting coordinate
    (z/i for real eta, z itself for imaginary eta).
    """

    roots: np.ndarray
    lambda0: complex
    eta_kind: EtaKind
    tau: complex
    tags: tuple = ()
    reconstruction_error: float = float("nan")
    lambda0_check: float = float("nan")

    def display(self) -> np.ndarray:
        return to_display(self.roots, self.eta_kind)

    def records(self) -> list:
        tags = self.tags or (RootTag.UNKNOWN,) * len(self.roots)
        return [{"re": float(w.real), "im": float(w.imag), "tag": tag.value}
                for w, tag in zip(self.display(), tags)]


def to_display(z, kind: EtaKind):
    z = np.asarray(z, dtype=complex)
    return -1j * z if kind is EtaKind.REAL else z


def from_display(w, kind: EtaKind):
    w = np.asarray(w, dtype=complex)
    return 1j * w if kind is EtaKind.REAL else w


def display_periods(kind: EtaKind, tau: complex) -> tuple:
    """(horizontal period, vertical period) of the root lattice in display coordinates."""
    t = tau.imag
    return (t, 1.0) if kind is EtaKind.REAL else (1.0, t)


def reduce_display(w, kind: EtaKind, tau: complex, snap: float = 1e-6):
    """Canonical representative of {+-w + lattice} in the centred display cell.

    The real part is folded into [-X/2, X/2] and the imaginary part into
    [-Y/2, Y/2]; of the two signs the one with nonnegative real part is kept
    (nonnegative imaginary part on ties), and points within ``snap`` of a cell
    edge are moved to the nonnegative edge.
    """
    px, py = display_periods(kind, tau)

    def fold(x, period):
        x = x - period * np.round(x / period)
        x = np.where(np.abs(x + period / 2) < snap, period / 2, x)
        x = np.where(np.abs(x) < snap, 0.0, x)
        return x

    w = np.asarray(w, dtype=complex)
    re, im = fold(w.real, px), fold(w.imag, py)
    flip = (re < 0) | ((re == 0) | (np.abs(re - px / 2) < snap)) & (im < 0)
    re = np.where(flip, fold(-re, px), re)
    im = np.where(flip, fold(-im, py), im)
    return re + 1j * im


def display_distance(w1, w2, kind: EtaKind, tau: complex):
    """Distance between root classes, modulo the lattice and the +- symmetry."""
    px, py = display_periods(kind, tau)
    w1 = np.asarray(w1, dtype=complex)
    best = np.inf
    for sgn in (1, -1):
        d = w1 - sgn * np.asarray(w2, dtype=complex)
        dx = d.real - px * np.round(d.real / px)
        dy = d.imag - py * np.round(d.imag / py)
        best = np.minimum(best, np.hypot(dx, dy))
    return best


class _ThetaExpansion:
    """Even theta function of order 2n stored as coefficients on a fixed basis.

    Basis: theta[j/2n, 0](2n v, 2n tau) symmetrized under v -> -v for
    j = 0..n; all n+1 columns are summed in one vectorized pass.
    """

    def __init__(self, n: int, tau: complex):
        self.n, self.tau = n, tau
        self.big_tau = 2 * n * tau
        self.chars = np.arange(n + 1) / (2 * n)
        big_t = self.big_tau.imag
        self.half_width = int(np.ceil(np.sqrt(np.log(1e17) / (np.pi * big_t)))) + 1
        self.coef = None

    def _columns(self, x, derivative):
        # x has shape (P,); returns theta[a,0](x) or its x-derivative, shape (P, n+1)
        a = self.chars[None, :, None]
        centre = np.rint(-x.imag / self.big_tau.imag)[:, None, None] - np.rint(a)
        m = centre + np.arange(-self.half_width, self.half_width + 1)[None, None, :] + a
        terms = np.exp(1j * np.pi * m * m * self.big_tau + 2j * np.pi * m * x[:, None, None])
        if derivative:
            terms = terms * (2j * np.pi * m)
        return terms.sum(axis=-1)

    def basis(self, v, derivative=False):
        v = np.asarray(v, dtype=complex)
        shape = v.shape
        x = 2 * self.n * v.ravel()
        plus, minus = self._columns(x, derivative), self._columns(-x, derivative)
        sym = plus - minus if derivative else plus + minus
        sym[:, 0] = plus[:, 0]
        sym[:, -1] = plus[:, -1]
        if derivative:
            sym = sym * (2 * self.n)
        return sym.reshape(shape + (self.n + 1,))

    def envelope(self, v):
        v = np.asarray(v, dtype=complex)
        return np.exp(2 * np.pi * self.n * v.imag ** 2 / self.tau.imag)

    def fit(self, v, values):
        env = self.envelope(v)
        a = self.basis(v) / env[:, None]
        b = np.asarray(values) / env
        colscale = np.linalg.norm(a, axis=0)
        coef, *_ = np.linalg.lstsq(a / colscale, b, rcond=None)
        self.coef = coef / colscale
        return self

    def __call__(self, v):
        return self.basis(v) @ self.coef

    def derivative(self, v):
        return self.basis(v, derivative=True) @ self.coef


def _sample_points(count: int, tau: complex, offset: float = 0.0):
    """Stratified points of the centred cell (golden-ratio spread in Re)."""
    k = np.arange(count)
    re = np.mod(k * 0.6180339887498949 + 0.1234 + offset, 1.0) - 0.5
    im = (-0.5 + (k + 0.5) / count) * tau.imag
    return re + 1j * im


def _fold(v, tau):
    """Move v into the centred cell; zeros are lattice periodic."""
    v = v - tau * np.round(v.imag / tau.imag)
    return v - np.round(v.real)


def _log_der_deflated(v, expansion, found):
    f = expansion(v)
    ratio = expansion.derivative(v) / f
    if len(found):
        r = np.asarray(found)
        ratio = ratio - np.sum(zeta(v - r, expansion.tau) + zeta(v + r, expansion.tau))
    return ratio, f


def _newton(v, expansion, found, scale, max_iter=60, tol=1e-13):
    """Deflated Newton iteration; returns (root, converged).

    Where Lambda is exponentially small the last digits are lost to
    cancellation and the iteration wanders at the noise level, so a point
    whose scaled value is at roundoff level also counts as converged.
    """
    step = np.inf
    for _ in range(max_iter):
        try:
            with np.errstate(all="ignore"):
                ratio, f = _log_der_deflated(v, expansion, found)
        except PoleError:
            return v, False
        if f == 0:
            return v, True
        if not np.isfinite(ratio) or ratio == 0:
            return v, False
        step = 1.0 / ratio
        v = _fold(v - step, expansion.tau)
        if abs(step) < tol:
            return v, True
    small = abs(expansion(v)) / expansion.envelope(v) < 1e-12 * scale
    return v, bool(abs(step) < 1e-9 or (small and abs(step) < 1e-5))


def _newton_direct(v, state, p: ModelParams, step: float = 1e-6, max_iter: int = 30,
                   tol: float = 1e-12):
    """Newton iteration on Lambda evaluated from the state itself.

    Used where the fitted expansion has lost its digits to cancellation
    (Lambda many orders below its maximum) but the direct expectation value
    is still accurate relative to its local size.
    """
    f = lambda x: lambda_eval(np.array([x - p.eta / 2]), state, p, check=False)[0]
    for _ in range(max_iter):
        fv = f(v)
        df = (f(v + step) - f(v - step) + 1j * (f(v - 1j * step) - f(v + 1j * step))) / (4 * step)
        if fv == 0:
            return v, True
        if df == 0 or not np.isfinite(df):
            return v, False
        delta = fv / df
        v = _fold(v - delta, p.tau)
        if abs(delta) < tol:
            return v, True
    return v, False


def _is_new_root(v, found, tau, tol=1e-6):
    return all(lattice_distance(v - r, tau) > tol and lattice_distance(v + r, tau) > tol for r in found)


def _is_double_zero(expansion, h, radius=0.01):
    """A half period is a zero (necessarily even order) when f(h) is tiny next to its ring."""
    ring = h + radius * np.exp(2j * np.pi * np.arange(8) / 8)
    around = np.mean(np.abs(expansion(ring)) / expansion.envelope(ring))
    return abs(expansion(h)) / expansion.envelope(h) < 1e-7 * around


def _half_periods(tau):
    return [0.0, 0.5, tau / 2, (1 + tau) / 2]


def _scan(expansion, found, density, t):
    """Periodic scaled modulus of the deflated expansion on a density x density grid."""
    re = -0.5 + np.arange(density) / density
    im = -t / 2 + np.arange(density) / density * t
    grid = re[None, :] + 1j * im[:, None]
    vals = expansion(grid.ravel()).reshape(grid.shape)
    order = expansion.n - len(found)
    defl = np.ones_like(vals)
    for r in found:
        defl = defl * sigma(grid - r, expansion.tau) * sigma(grid + r, expansion.tau)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = vals / defl
    scaled = np.abs(g) * np.exp(-2 * np.pi * order * grid.imag ** 2 / t)
    scaled = np.where(np.isfinite(scaled), scaled, np.inf)
    is_min = np.ones(scaled.shape, dtype=bool)
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if dx or dy:
                is_min &= scaled <= np.roll(np.roll(scaled, dy, axis=0), dx, axis=1)
    iy, ix = np.nonzero(is_min)
    order_idx = np.argsort(scaled[iy, ix])
    return grid[iy, ix][order_idx], scaled


def _scaled_lambda_samples(v, state, p: ModelParams, expansion, tol: float = 1e-6):
    """Lambda(v - eta/2) with an eigenvector check relative to the sample scale.

    The residual ||t psi - Lambda psi|| is compared with the largest
    envelope-scaled |Lambda| over the samples, not with the local value,
    which is many orders smaller near lines crowded with roots.
    """
    lam, resid = lambda_with_residual(v - p.eta / 2, state, p)
    env = expansion.envelope(v)
    scaled = np.abs(lam) / env
    worst = float(np.max(resid * scaled) / np.max(scaled))
    if worst > tol:
        raise NotAnEigenstateError(f"transfer-matrix residual {worst:.2e} exceeds {tol}")
    return lam


def find_zero_roots(state, p: ModelParams, grid: int = 80, n_probes: int = 50,
                    tol: float = 1e-7, samples_per_coef: int = 4) -> RootSet:
    """All N+3 zero roots of Lambda(u) for one eigenstate of the transfer matrix."""
    n = p.n_sites + 3
    tau, eta, t = p.tau, p.eta, p.tau.imag
    expansion = _ThetaExpansion(n, tau)
    v_fit = _sample_points(samples_per_coef * (n + 1), tau)
    values = _scaled_lambda_samples(v_fit, state, p, expansion)
    expansion.fit(v_fit, values)
    scale = np.max(np.abs(values) / expansion.envelope(v_fit))

    found: list = []
    # zeros at half periods are automatically double, Newton would crawl to them
    for h in _half_periods(tau):
        if _is_double_zero(expansion, h):
            found.append(complex(h))
    density, scaled = grid, None
    for attempt in range(3):
        starts, scaled = _scan(expansion, found, density, t)
        for s0 in starts:
            if len(found) >= n:
                break
            v, ok = _newton(s0, expansion, found, scale)
            residual = abs(expansion(v)) / expansion.envelope(v)
            if not ok and residual < 1e-10 * scale:
                # stalled at the noise floor of the fit: finish on Lambda itself
                v, ok = _newton_direct(v, state, p)
                ok = ok and _is_new_root(v, found, tau)
            if not ok:
                continue
            if abs(expansion(v)) / expansion.envelope(v) > 1e-6 * scale:
                continue
            found.append(complex(v))
        if len(found) == n:
            break
        density *= 2
    if len(found) != n:
        raise ExtractionError(f"found {len(found)} root pairs, expected {n}", residual_map=scaled)

    polished = []
    for k, r in enumerate(found):
        others = found[:k] + found[k + 1:]
        if lattice_distance(2 * r, tau) < 1e-9:
            polished.append(r)
            continue
        v, ok = _newton(r, expansion, others, scale)
        polished.append(v if ok and abs(v - r) < 1e-3 else r)
    # fold into the display cell first: shifting a root by tau rescales Lambda_0
    z_display = reduce_display(to_display(np.array(polished), p.eta_kind), p.eta_kind, tau)
    order = np.lexsort((z_display.imag, z_display.real))
    z_display = z_display[order]
    roots = from_display(z_display, p.eta_kind)

    product = lambda v: np.prod(sigma(v[:, None] + roots, tau) * sigma(v[:, None] - roots, tau), axis=1)
    # Lambda_0 by weighted least squares over the fit samples; the closed-form
    # Lambda(0) is kept as an independent consistency check
    env_fit = expansion.envelope(v_fit)
    basis = product(v_fit) / env_fit
    lam0 = np.vdot(basis, values / env_fit) / np.vdot(basis, basis)
    at_zero = lam0 * product(np.array([eta / 2]))[0]
    lam0_check = abs(at_zero - lambda_at_zero(p)) / abs(lambda_at_zero(p))

    probes = _sample_points(n_probes, tau, offset=0.377) + 0.013j
    direct = _scaled_lambda_samples(probes, state, p, expansion)
    model = lam0 * product(probes)
    env = expansion.envelope(probes)
    err = float(np.max(np.abs(direct - model) / env) / np.max(np.abs(direct) / env))
    if err > tol:
        raise ExtractionError(f"reconstruction error {err:.2e} exceeds {tol}", residual_map=scaled)
    return RootSet(roots, complex(lam0), p.eta_kind, tau, (), err, float(lam0_check))


def energy_from_roots(rs: RootSet, p: ModelParams) -> float:
    """Energy eigenvalue from the zero roots; a root at +-eta/2 raises PoleError."""
    z = np.asarray(rs.roots)
    total = np.sum(zeta(z + p.eta / 2, p.tau) - zeta(z - p.eta / 2, p.tau))
    e = lattice.energy_normalization(p) * (total - lattice.energy_offset(p))
    return float(e.real) if abs(e.imag) < 1e-8 * max(1.0, abs(e)) else e


def _line_and_pair_heights(p: ModelParams) -> tuple:
    """Height of the bulk line (the strip edge) and of the off-line bulk pairs."""
    if p.eta_kind is EtaKind.REAL:
        h, cap = p.eta.real, 0.5
    else:
        h, cap = p.eta.imag, p.tau.imag / 2
    return cap, (h, 2 * cap - h)


def classify_roots(rs: RootSet, p: ModelParams, threshold: float = 0.03) -> RootSet:
    """Tag every root by proximity to the predicted patterns.

    A root within ``threshold`` of a position given by the string laws (fixed
    pair, or ground, excited and inert boundary strings) takes the tag of the
    nearest such position, the fixed pair winning ties.  Otherwise roots on
    the strip edge are bulk-line roots, roots at one of the characteristic
    pair heights are conjugate pairs, and the rest are unknown.
    """
    from . import thermo

    d = thermo.RegimeDispatch.for_params(p)
    canon = thermo.canonicalize(p)
    if canon.parity_swapped:
        d = d.with_parity(d.parity.swapped())
    predicted = {}
    for state in thermo.StateKind:
        s = thermo.select_boundary_strings(d.with_state(state), canon.params)
        for label, w in s.roots.items():
            tag = RootTag.FIXED_PAIR if label in ("w1", "w2") else RootTag.BOUNDARY_STRING
            predicted.setdefault(complex(w), tag)
    positions = list(predicted)
    line, pairs = _line_and_pair_heights(p)
    _, period = display_periods(rs.eta_kind, rs.tau)
    tags = []
    for w in rs.display():
        dist = np.array([display_distance(w, c, rs.eta_kind, rs.tau) for c in positions])
        best = float(dist.min()) if dist.size else np.inf
        height = abs(w.imag - period * np.round(w.imag / period))
        if best < threshold:
            close = [predicted[c] for c, dc in zip(positions, dist) if dc <= best + 1e-12]
            tags.append(RootTag.FIXED_PAIR if RootTag.FIXED_PAIR in close else RootTag.BOUNDARY_STRING)
        elif abs(height - line) < threshold:
            tags.append(RootTag.BULK_LINE)
        elif any(abs(height - y) < threshold for y in pairs):
            tags.append(RootTag.CONJUGATE_PAIR)
        else:
            tags.append(RootTag.UNKNOWN)
    return RootSet(rs.roots, rs.lambda0, rs.eta_kind, rs.tau, tuple(tags),
                   rs.reconstruction_error, rs.lambda0_check)
