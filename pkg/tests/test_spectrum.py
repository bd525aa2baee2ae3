import numpy as np
import pytest

from openxyz import spectrum
from openxyz.errors import PoleError, UnsupportedError
from openxyz.lattice import EtaKind
from openxyz.spectrum import (RootSet, RootTag, Solver, classify_roots, diagonalize, energy_from_roots,
                              find_zero_roots, lambda_at_zero, lambda_eval, reduce_display,
                              validate_functional_relations)

from conftest import make_params


def random_inhomogeneities(n, seed):
    rng = np.random.default_rng(seed)
    return tuple(0.05 * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)))


class TestDiagonalize:
    def test_sorted_and_eigenvectors(self):
        p = make_params("real_large", 4)
        sl = diagonalize(p)
        assert np.all(np.diff(sl.energies) >= -1e-12)
        for k in range(4):
            lambda_eval(0.2 + 0.05j, sl.state(k), p)

    def test_iterative_needs_hermitian(self):
        p = make_params("real_large", 4, beta_minus=(0.02, 0.02, 0.3 + 0.03j))
        with pytest.raises(UnsupportedError):
            diagonalize(p, Solver.ITERATIVE)

    def test_lambda_at_zero_is_state_independent(self):
        p = make_params("imag_large", 4)
        sl = diagonalize(p)
        vals = [lambda_eval(0.0, sl.state(k), p) for k in range(5)]
        assert max(abs(v - lambda_at_zero(p)) for v in vals) < 1e-10 * abs(lambda_at_zero(p))


class TestFunctionalRelations:
    @pytest.mark.parametrize("regime", ["real_large", "imag_large"])
    def test_all_states_inhomogeneous(self, regime):
        p = make_params(regime, 3, inhomogeneities=random_inhomogeneities(3, 7))
        sl = diagonalize(p)
        assert sl.states.shape[1] == 8
        for k in range(8):
            res = validate_functional_relations(sl.state(k), p)
            assert max(res.values()) < 1e-8, res


class TestZeroRoots:
    @pytest.mark.parametrize("regime", ["real_large", "imag_large"])
    def test_root_count_and_energy(self, regime):
        p = make_params(regime, 6)
        sl = diagonalize(p)
        for k in range(2):
            rs = find_zero_roots(sl.state(k), p)
            assert len(rs.roots) == p.n_sites + 3
            assert rs.reconstruction_error < 1e-7
            assert rs.lambda0_check < 1e-7
            assert abs(energy_from_roots(rs, p) - sl.energies[k]) < 1e-7

    def test_real_large_tags(self):
        p = make_params("real_large", 8)
        sl = diagonalize(p)
        rs = classify_roots(find_zero_roots(sl.state(0), p), p)
        tags = [r["tag"] for r in rs.records()]
        assert tags.count(RootTag.FIXED_PAIR.value) == 2
        assert tags.count(RootTag.BOUNDARY_STRING.value) == 4
        assert tags.count(RootTag.BULK_LINE.value) == 5
        bulk = rs.display()[[t == RootTag.BULK_LINE.value for t in tags]]
        assert np.all(np.abs(np.abs(bulk.imag) - 0.5) < 0.03)

    def test_small_eta_conjugate_pairs(self):
        p = make_params("real_small", 8)
        sl = diagonalize(p)
        rs = classify_roots(find_zero_roots(sl.state(0), p), p)
        tags = [r["tag"] for r in rs.records()]
        assert RootTag.CONJUGATE_PAIR.value in tags
        assert RootTag.UNKNOWN.value not in tags

    def test_imaginary_fixed_pair(self):
        p = make_params("imag_large", 8)
        sl = diagonalize(p)
        rs = find_zero_roots(sl.state(0), p)
        t, h = p.tau.imag, p.eta.imag
        for target in (0.5j * (t - h), 0.5 + 0.5j * (t - h)):
            dist = min(spectrum.display_distance(w, target, p.eta_kind, p.tau) for w in rs.display())
            assert dist < 5e-2

    def test_pole_at_half_eta(self):
        p = make_params("real_large", 2)
        rs = RootSet(np.array([p.eta / 2] + [0.1j] * 4), 1.0, p.eta_kind, p.tau)
        with pytest.raises(PoleError):
            energy_from_roots(rs, p)


class TestDisplay:
    def test_reduce_folds_sign_and_lattice(self):
        tau = 0.6j
        w = 0.13 + 0.21j
        images = [w, -w, w + 0.6, w - 1j, -w + 0.6 + 2j]
        reduced = reduce_display(np.array(images), EtaKind.REAL, tau)
        assert np.allclose(reduced, reduced[0], atol=1e-12)
        assert reduced[0].real >= 0

    def test_reduce_snaps_to_edge(self):
        reduced = reduce_display(np.array([-0.5 + 1e-8j]), EtaKind.IMAGINARY, 1.6j)
        assert reduced[0].imag == 0.0 and reduced[0].real == 0.5

    def test_display_round_trip(self):
        z = np.array([0.1 + 0.2j, -0.3j])
        for kind in EtaKind:
            assert np.allclose(spectrum.from_display(spectrum.to_display(z, kind), kind), z)
