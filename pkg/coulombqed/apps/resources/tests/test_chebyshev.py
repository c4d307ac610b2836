"""
Tests for the Chebyshev tail check on the single-mode oscillator surrogate.
"""
import math
import unittest

import ddt
import numpy as np
import pytest

from coulombqed.apps.core.exceptions import DomainError
from coulombqed.apps.encoding.gauge import field_operator, make_field_grid, oscillator_hamiltonian
from coulombqed.apps.trotter.evolution import StateVector, truncation_fidelity

from ..chebyshev import chebyshev_verifier, field_cutoff, spectral_weights, tail_probability


def _ground_state(grid):
    _, vectors = np.linalg.eigh(oscillator_hamiltonian(grid, 1.0).dense())
    return StateVector(vectors[:, 0])


@ddt.ddt
class TestChebyshev(unittest.TestCase):
    """
    Tail probabilities from spectral weights.
    """

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.grid = make_field_grid(6.0, 6)
        cls.state = _ground_state(cls.grid)
        cls.field = field_operator(cls.grid)

    def test_ground_state_statistics(self):
        result = chebyshev_verifier(self.state, self.field, 2.0)
        assert result.mean == pytest.approx(0.0, abs=1e-8)
        assert result.std == pytest.approx(math.sqrt(0.5), rel=0.05)
        assert result.passed

    @ddt.data(0.3, 0.1, 0.03)
    def test_tail_within_budget(self, epsilon):
        budget = epsilon / 3.0
        kappa = math.sqrt(1.0 / budget)
        result = chebyshev_verifier(self.state, self.field, kappa)
        assert result.bound == pytest.approx(budget)
        assert result.probability < budget
        cutoff = min(field_cutoff(self.state, self.field, kappa), self.grid.a_max)
        assert tail_probability(self.state, self.field, cutoff) < budget
        assert truncation_fidelity(self.state, [self.grid], cutoff) >= 1.0 - budget

    def test_two_level_state(self):
        state = StateVector(np.array([1.0, 1.0]) / math.sqrt(2))
        result = chebyshev_verifier(state, field_operator(make_field_grid(1.0, 1)), 0.5)
        # Both outcomes sit exactly one standard deviation from the mean.
        assert result.probability == pytest.approx(1.0)
        assert result.bound == pytest.approx(4.0)

    def test_weights_sum_to_one(self):
        _, weights = spectral_weights(self.state, self.field)
        assert weights.sum() == pytest.approx(1.0)

    def test_unnormalized_state(self):
        with pytest.raises(DomainError):
            chebyshev_verifier(StateVector(np.ones(64)), self.field, 2.0)

    def test_bad_kappa(self):
        with pytest.raises(DomainError):
            chebyshev_verifier(self.state, self.field, 0.0)
