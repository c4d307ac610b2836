"""
Tests for the Jordan-Wigner encoding of the lattice fermion.
"""
import itertools
import unittest

import ddt
import numpy as np
import pytest

from coulombqed.apps.lattice.geometry import LatticeGeometry
from coulombqed.apps.lattice.snake import snake_path

from ..fermion import (
    ALPHA,
    GAMMA,
    GAMMA0,
    FermionModeIndex,
    bilinear,
    charge_density,
    current_density,
    jw_lower,
    jw_raise,
    number_operator,
    occupations,
    site_charges,
    total_charge,
)

N_MODES = 8


def _mode(position):
    return FermionModeIndex(site=position // 4, alpha=position % 4, position=position)


class TestGammaMatrices(unittest.TestCase):
    """
    Clifford algebra of the Weyl-representation gamma matrices.
    """

    def test_clifford_algebra(self):
        metric = np.diag([1.0, -1.0, -1.0, -1.0])
        gammas = (GAMMA0,) + GAMMA
        for mu, nu in itertools.product(range(4), repeat=2):
            anticommutator = gammas[mu] @ gammas[nu] + gammas[nu] @ gammas[mu]
            np.testing.assert_allclose(anticommutator, 2 * metric[mu, nu] * np.eye(4), atol=1e-14)

    def test_alpha_hermitian_and_block_diagonal(self):
        for alpha in ALPHA:
            np.testing.assert_allclose(alpha, alpha.conj().T)
            np.testing.assert_allclose(alpha[:2, 2:], 0)
        np.testing.assert_allclose(np.diag(ALPHA[2]).real, [-1, 1, 1, -1])


class TestJordanWigner(unittest.TestCase):
    """
    Canonical anticommutation relations on eight modes.
    """

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.lower = [jw_lower(_mode(l), N_MODES).to_matrix(N_MODES) for l in range(N_MODES)]
        cls.raise_ = [jw_raise(_mode(l), N_MODES).to_matrix(N_MODES) for l in range(N_MODES)]

    def test_anticommutators(self):
        identity = np.eye(2 ** N_MODES)
        for a, b in itertools.product(range(N_MODES), repeat=2):
            mixed = (self.lower[a] @ self.raise_[b] + self.raise_[b] @ self.lower[a]).toarray()
            np.testing.assert_allclose(mixed, identity if a == b else 0, atol=1e-12)
            same = (self.lower[a] @ self.lower[b] + self.lower[b] @ self.lower[a]).toarray()
            np.testing.assert_allclose(same, 0, atol=1e-12)

    def test_bilinear_matches_product(self):
        for a, b in [(0, 0), (0, 3), (5, 2), (7, 7), (1, 6)]:
            product = (self.raise_[a] @ self.lower[b]).toarray()
            matrix = bilinear(_mode(a), _mode(b), N_MODES).to_matrix(N_MODES).toarray()
            np.testing.assert_allclose(matrix, product, atol=1e-14)

    def test_bilinear_z_string_between(self):
        string = bilinear(_mode(1), _mode(4), N_MODES).terms[0]
        assert string.factors == ((1, '-'), (2, 'Z'), (3, 'Z'), (4, '+'))

    def test_number_operator(self):
        matrix = number_operator(_mode(2), N_MODES).to_matrix(N_MODES).diagonal().real
        np.testing.assert_allclose(matrix, occupations(N_MODES)[:, 2])

    def test_position_out_of_range(self):
        with pytest.raises(ValueError):
            jw_lower(_mode(8), N_MODES)


@ddt.ddt
class TestDensities(unittest.TestCase):
    """
    Charge and current densities on a two-site lattice.
    """

    def setUp(self):
        super().setUp()
        self.path = snake_path(LatticeGeometry((2, 1, 1)))

    def test_occupations(self):
        bits = occupations(3)
        assert bits.shape == (8, 3)
        np.testing.assert_array_equal(bits[5], [1, 0, 1])

    def test_site_charges_sum_to_total(self):
        charges = site_charges(self.path)
        np.testing.assert_array_equal(charges.sum(axis=1), occupations(8).sum(axis=1))
        np.testing.assert_allclose(total_charge(self.path).diagonal().real, charges.sum(axis=1))

    @ddt.data(0, 1)
    def test_charge_density_counts_site(self, site):
        density = charge_density(self.path, site, g=0.5)
        assert density.is_diagonal()
        np.testing.assert_allclose(density.diagonal().real, 0.5 * site_charges(self.path)[:, site])

    def test_longitudinal_current_spin_pattern(self):
        current = current_density(self.path, 1, 3, g=2.0)
        assert current.is_diagonal()
        bits = occupations(8)[:, [self.path.position(1, alpha) for alpha in range(4)]]
        expected = 2.0 * (-bits[:, 0] + bits[:, 1] + bits[:, 2] - bits[:, 3])
        np.testing.assert_allclose(current.diagonal().real, expected)

    @ddt.data(1, 2, 3)
    def test_currents_hermitian(self, component):
        assert current_density(self.path, 0, component).is_hermitian()
