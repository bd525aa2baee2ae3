import numpy as np
import pytest

from openxyz import thermo as th
from openxyz.elliptic import zeta
from openxyz.errors import DomainError
from openxyz.lattice import Transform, apply_parameter_transform
from openxyz.thermo import (KernelKind, Parity, RegimeDispatch, Side, StateKind, SubRegime,
                            energy_breakdown, kernel_fourier, select_boundary_strings, string_laws)
from openxyz.xxz_limit import XXZParams, xxz_energies

from conftest import REGIMES, make_params


def fourier_coefficients(f, half_period, ks, samples=4096):
    """Coefficients 2T <f(x) exp(-i k pi x / T)> on [-T, T) by the trapezoidal rule."""
    x = -half_period + 2 * half_period * np.arange(samples) / samples
    v = f(x)
    return np.array([2 * half_period * np.mean(v * np.exp(-1j * k * np.pi / half_period * x)) for k in ks])


KS = range(-6, 7)


class TestKernelFourier:
    @pytest.mark.parametrize("g", [0.2j, -0.3j, 0.1 + 0.45j, 0.95j, 0.2 - 0.95j, 0.3 + 0.7j])
    def test_real_kernels_against_quadrature(self, g):
        tau = 0.6j
        a = lambda u: zeta(1j * (u - g), tau) + zeta(1j * (u + g), tau) - 4 * np.pi / tau * u
        b = lambda u: zeta(1j * (u - g), tau) - zeta(1j * (u + g), tau)
        ca = fourier_coefficients(a, 0.3, KS)
        cb = fourier_coefficients(b, 0.3, KS)
        for c_a, c_b, k in zip(ca, cb, KS):
            assert abs(c_a - kernel_fourier("A", g, k, tau)) < 1e-9
            assert abs(c_b - kernel_fourier("B", g, k, tau)) < 1e-9

    @pytest.mark.parametrize("x", [0.3j, -0.5j, 0.2 + 0.7j, 1.5j, 0.4 - 1.5j])
    def test_imag_kernels_against_quadrature(self, x):
        tau = 1.6j
        c = lambda u: zeta(u - x, tau) + zeta(u + x, tau)
        d = lambda u: zeta(u - x, tau) - zeta(u + x, tau)
        cc = fourier_coefficients(c, 0.5, KS)
        cd = fourier_coefficients(d, 0.5, KS)
        for c_c, c_d, k in zip(cc, cd, KS):
            assert abs(c_c - kernel_fourier("C", x, k, tau)) < 1e-9
            assert abs(c_d - kernel_fourier("D", x, k, tau)) < 1e-9

    @pytest.mark.parametrize("g", [0.2j, -0.7j, 0.1])
    def test_zero_modes(self, g):
        assert kernel_fourier("A", g, 0, 0.6j) == 0
        assert kernel_fourier("C", g, 0, 1.6j) == 0
        assert kernel_fourier("D", g, 0, 1.6j) == th.sign_of_imag(g) * 2j * np.pi

    def test_b_zero_mode_example(self):
        assert abs(kernel_fourier("B", 0.2j, 0, 0.6j) - 2 * np.pi * 0.6) < 1e-14

    def test_no_overflow_at_large_k(self):
        assert np.isfinite(kernel_fourier("A", 0.9j, 400, 0.6j))
        assert np.isfinite(kernel_fourier("D", 0.2 + 1.5j, 400, 1.6j))

    @pytest.mark.parametrize("kind,shift,tau", [("A", 1.2j, 0.6j), ("B", 0.31, 0.6j),
                                                ("C", 0.6 + 0.1j, 1.6j), ("D", 1.7j, 1.6j)])
    def test_outside_strip(self, kind, shift, tau):
        with pytest.raises(DomainError):
            kernel_fourier(kind, shift, 1, tau)


class TestDispatch:
    def test_sub_regimes(self):
        assert th.sub_regime(make_params("real_large", 4)) is SubRegime.LARGE
        assert th.sub_regime(make_params("real_small", 4)) is SubRegime.SMALL
        assert th.sub_regime(make_params("imag_large", 4)) is SubRegime.LARGE
        assert th.sub_regime(make_params("imag_small", 4)) is SubRegime.SMALL

    @pytest.mark.parametrize("changes", [dict(eta=0.5), dict(eta=0.8j)])
    def test_boundary_value_rejected(self, changes):
        p = make_params("real_large" if "eta" in changes and changes["eta"] == 0.5 else "imag_large", 4,
                        **changes)
        with pytest.raises(DomainError):
            RegimeDispatch.for_params(p)

    def test_mismatched_dispatch(self):
        d = RegimeDispatch.for_params(make_params("real_large", 4))
        with pytest.raises(DomainError):
            th.bulk_energy_density(d, make_params("real_small", 4))


def components(p, eps=th.DEFAULT_EPS, method="channels"):
    d = RegimeDispatch.for_params(p)
    out = {"bulk": th.bulk_energy_density(d, p, eps, method), "free": th.free_boundary_energy(d, p, eps, method),
           "minus": th.field_boundary_energy(d, p, Side.MINUS, eps, method),
           "plus": th.field_boundary_energy(d, p, Side.PLUS, eps, method)}
    for label, w in select_boundary_strings(d, p).roots.items():
        out[label] = th.discrete_root_energy(d, p, w, eps, method)
    out["parity"] = th.discrete_root_energy(d, p, th.parity_reference_root(p), eps, method)
    return out


class TestEnergyComponents:
    def test_eps_tightening(self, regime):
        p = make_params(regime, 8)
        loose, tight = components(p, 1e-13), components(p, 1e-15)
        for key in loose:
            assert abs(loose[key] - tight[key]) <= 1e-10 * max(1.0, abs(tight[key])), key

    def test_direct_summation_agrees(self, regime):
        p = make_params(regime, 8)
        fast, slow = components(p), components(p, method="direct")
        for key in fast:
            assert abs(fast[key] - slow[key]) <= 1e-10 * max(1.0, abs(fast[key])), key

    def test_band_rule_exact_zero(self):
        p = make_params("real_large", 8)
        d = RegimeDispatch.for_params(p)
        h = p.eta.real
        assert th.discrete_root_energy(d, p, 1j * (h / 2 + 0.05)) == 0.0
        assert th.discrete_root_energy(d, p, 0.3 - 1j * (h / 2 + 0.1)) == 0.0
        assert th.discrete_root_energy(d, p, 0.5j * (1 - h)) != 0.0

    def test_fixed_root_contributes(self):
        p = make_params("real_large", 8)
        strings = select_boundary_strings(RegimeDispatch.for_params(p), p)
        assert strings.roots["w1"] in strings.contributing

    def test_realness_checked(self):
        # Re(beta3) = 0.3 leaves the Hermitian region and makes the field energy complex
        p = make_params("real_large", 8, beta_minus=(0.02, 0.02, 0.3 + 0.03j))
        d = RegimeDispatch.for_params(p)
        with pytest.raises(DomainError):
            th.field_boundary_energy(d, p, Side.MINUS)


class TestStringLaws:
    def test_real_large_even_ground(self):
        p = make_params("real_large", 8)
        roots = select_boundary_strings(RegimeDispatch.for_params(p), p).roots
        h, edge = p.eta.real, p.tau.imag / 2
        assert roots["w5g"] == complex(edge, min(h / 2 + p.beta_minus[1].real, 0.5))
        assert roots["w6g"] == complex(edge, -min(h / 2 + p.beta_plus[1].real, 0.5))

    def test_real_large_odd_ground(self):
        p = make_params("real_large", 9)
        roots = select_boundary_strings(RegimeDispatch.for_params(p), p).roots
        h, edge = p.eta.real, p.tau.imag / 2
        assert roots["w5g"] == complex(edge, max(h / 2 - p.beta_minus[1].real, 0.0))

    def test_imag_small_even_excited(self):
        p = make_params("imag_small", 8)
        d = RegimeDispatch.for_params(p, StateKind.FIRST_EXCITED)
        roots = select_boundary_strings(d, p).roots
        h = p.eta.imag
        upper = complex(0.5, max(h / 2 - p.beta_minus[2].imag, 0.0))
        lower = complex(0.5, -max(h / 2 - p.beta_plus[2].imag, 0.0))
        assert {roots["w_minus_e"], roots["w_plus_e"]} == {upper, lower}

    def test_fixed_pair_everywhere(self, regime):
        p = make_params(regime, 8)
        roots = select_boundary_strings(RegimeDispatch.for_params(p), p).roots
        cap, h = th.strip_cap(p), th.crossing_height(p)
        assert roots["w1"] == complex(0, cap - h / 2)
        assert roots["w2"] == complex(th.edge_line(p), cap - h / 2)

    def test_needs_canonical_region(self):
        p = make_params("real_large", 8, beta_plus=(1.04, 0.04, 0.04j))
        with pytest.raises(DomainError):
            select_boundary_strings(RegimeDispatch.for_params(p), p)

    @pytest.mark.parametrize("sub", list(SubRegime))
    @pytest.mark.parametrize("parity", list(Parity))
    @pytest.mark.parametrize("state", list(StateKind))
    def test_continuous_across_switches(self, sub, parity, state):
        h, cap, edge = (0.7, 0.5, 0.3) if sub is SubRegime.LARGE else (0.4, 0.5, 0.3)
        base = [0.02, 0.04, 0.03, 0.04]
        for slot in range(4):
            grid = np.linspace(0.0, cap, 4001)
            positions = []
            for b in grid:
                args = list(base)
                args[slot] = b
                roots, _ = string_laws(sub, parity, state, h, cap, edge, *args)
                positions.append([roots[k] for k in sorted(roots)])
            jumps = np.max(np.abs(np.diff(np.array(positions), axis=0)))
            # Lipschitz in beta: a jump would exceed the grid step by far
            assert jumps <= 1.5 * (grid[1] - grid[0]) + 1e-12


class TestTransformations:
    @pytest.mark.parametrize("regime,kind", [
        ("real_large", Transform.B1_REFLECT_HALF), ("real_large", Transform.B1_PLUS_TAU),
        ("real_small", Transform.B1_REFLECT_HALF), ("real_small", Transform.B1_PLUS_TAU),
        ("imag_large", Transform.B1_REFLECT_HALF), ("imag_large", Transform.B1_PLUS_ONE),
        ("imag_small", Transform.B1_REFLECT_HALF), ("imag_small", Transform.B1_PLUS_ONE),
    ])
    def test_invariance(self, regime, kind):
        for n in (8, 9):
            p = make_params(regime, n)
            q, _ = apply_parameter_transform(p, kind)
            a, b = energy_breakdown(p), energy_breakdown(q)
            assert abs(a.surface - b.surface) < 1e-10
            assert abs(a.excitation - b.excitation) < 1e-10

    @pytest.mark.parametrize("regime", sorted(REGIMES))
    def test_parity_swap(self, regime):
        kind = Transform.B1_PLUS_ONE if regime.startswith("real") else Transform.B1_PLUS_TAU
        for n in (8, 9):
            p = make_params(regime, n)
            q, _ = apply_parameter_transform(p, kind)
            for parity in Parity:
                a = energy_breakdown(q, parity=parity)
                b = energy_breakdown(p, parity=parity.swapped())
                assert abs(a.surface - b.surface) < 1e-10
                assert abs(a.excitation - b.excitation) < 1e-10

    def test_parity_matters(self):
        p = make_params("real_large", 8)
        even, odd = energy_breakdown(p, parity=Parity.EVEN), energy_breakdown(p, parity=Parity.ODD)
        assert abs(even.surface - odd.surface) > 1e-3


class TestAssembly:
    def test_surface_identity(self, regime):
        for n in (8, 9):
            b = energy_breakdown(make_params(regime, n))
            total = b.e_free + b.e_left + b.e_right + sum(b.e_strings.values()) - b.parity_term
            assert abs(b.surface - total) < 1e-13
            assert (b.parity_term == 0.0) == (n % 2 == 0)

    def test_record_columns(self):
        rec = energy_breakdown(make_params("real_large", 8)).as_record()
        for key in ("e_bulk", "E_free", "E_minus", "E_plus", "E_strings", "parity_term", "E_surface", "Delta_E"):
            assert np.isfinite(rec[key])

    def test_excitation_only_from_strings(self):
        p = make_params("imag_large", 8)
        d = RegimeDispatch.for_params(p)
        b = energy_breakdown(p)
        assert abs(th.excitation_energy(d, p) - b.excitation) < 1e-14

    def test_surface_needs_ground_dispatch(self):
        p = make_params("real_large", 8)
        with pytest.raises(DomainError):
            th.surface_energy(RegimeDispatch.for_params(p, StateKind.FIRST_EXCITED), p)

    @pytest.mark.parametrize("regime", sorted(REGIMES))
    def test_excitation_nonnegative_over_sweeps(self, regime):
        base = make_params(regime, 8)
        half_t = base.tau.imag / 2
        # canonical ranges: beta1 real (real eta) or imaginary, beta2 real, beta3 imaginary
        if regime.startswith("real"):
            ranges = [(0.5, 1.0), (0.5, 1.0), (half_t, 1j)]
        else:
            ranges = [(half_t, 1j), (0.5, 1.0), (half_t, 1j)]
        for n in (8, 9):
            for slot, (top, unit) in enumerate(ranges):
                for v in np.linspace(0.01, top - 0.01, 25):
                    bp = list(base.beta_plus)
                    bp[slot] = unit * v
                    b = energy_breakdown(base.with_(n_sites=n, beta_plus=bp))
                    assert b.excitation >= -1e-12, (slot, v, n)


class TestDensity:
    def test_zero_mode_counts_bulk_roots(self):
        p = make_params("real_large", 12)
        d = RegimeDispatch.for_params(p)
        strings = select_boundary_strings(d, p)
        rho0 = th.bulk_density_fourier(d, p, strings, 0)
        assert abs(rho0 * p.n_sites / 2 - (p.n_sites + 3 - len(strings.roots))) < 1e-12

    @pytest.mark.parametrize("regime", sorted(REGIMES))
    def test_large_n_limit(self, regime):
        p = make_params(regime, 8)
        d = RegimeDispatch.for_params(p)
        big = p.with_(n_sites=10 ** 7)
        strings = select_boundary_strings(d, p)
        denom, eta_shift, *_ = th._density_shifts(d, p, strings)
        kind = th._kernel_kinds(p)[0]
        for k in (1, 2, 5):
            f = lambda g: th._reduced_kernel(kind, g, k, p.tau)
            limit = 2 * f(eta_shift) / sum(f(g) for g in denom)
            assert abs(th.bulk_density_fourier(d, big, strings, k) - limit) < 1e-5 * max(1.0, abs(limit))

    @pytest.mark.parametrize("regime", ["real_large", "imag_large"])
    def test_counting_function_matches_bulk_roots(self, regime):
        from openxyz.spectrum import RootTag, Solver, classify_roots, diagonalize, find_zero_roots
        p = make_params(regime, 12)
        sl = diagonalize(p, Solver.ITERATIVE)
        rs = classify_roots(find_zero_roots(sl.state(0), p, tol=1e-4), p)
        xs = np.sort([abs(w.real) for w, t in zip(rs.display(), rs.tags) if t is RootTag.BULK_LINE])
        d = RegimeDispatch.for_params(p)
        counting = th.bulk_counting_function(xs, d, p, select_boundary_strings(d, p))
        assert np.max(np.abs(counting - (np.arange(len(xs)) + 0.5))) < 0.1


class TestTrigonometricDegeneration:
    def test_imaginary_bulk_at_large_tau(self):
        p = make_params("imag_large", 8, tau=20j)
        xp = XXZParams(p.eta, p.beta_minus, p.beta_plus, Parity.EVEN)
        ell, trig = energy_breakdown(p), xxz_energies(xp)
        for attr in ("e_bulk", "e_free", "e_left", "e_right", "surface", "excitation"):
            assert abs(getattr(ell, attr) - getattr(trig, attr)) < 1e-6, attr
        for label, value in trig.e_strings.items():
            assert abs(ell.e_strings[label] - value) < 1e-6
