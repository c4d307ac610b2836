"""
Tests for Trotter step counts.
"""
import math
import unittest

import ddt
import pytest
from django.test import override_settings

from coulombqed.apps.core.constants import NormMode
from coulombqed.apps.core.exceptions import CapabilityError, DomainError
from coulombqed.apps.hamiltonian.tests.factories import FermionParamsFactory, ParamsFactory
from coulombqed.apps.trotter.partition import partition, piece_operators

from ..steps import (
    asymptotic_commutator_constant,
    commutator_constant,
    numeric_commutator_constant,
    steps_for_constant,
    trotter_steps,
)


@ddt.ddt
class TestStepCounts(unittest.TestCase):
    """
    N_t = ceil(C t^2 / epsilon).
    """

    def test_steps_for_constant(self):
        assert steps_for_constant(3.0, 0.5, 0.25) == 3
        assert steps_for_constant(3.0, 1.0, 0.25) == 12

    def test_at_least_one_step(self):
        assert steps_for_constant(0.0, 1.0, 0.5) == 1

    def test_zero_time_has_no_steps(self):
        assert steps_for_constant(3.0, 0.0, 0.25) == 0

    @ddt.data((0.5, 0.0), (0.5, 1.0), (-1.0, 0.1), (0.0, 0.0))
    @ddt.unpack
    def test_bad_inputs(self, time, epsilon):
        with pytest.raises(DomainError):
            steps_for_constant(1.0, time, epsilon)

    def test_asymptotic_without_charge(self):
        constant = asymptotic_commutator_constant(8, 0.0, 0.5, 1.0, 2.0, 3.0)
        assert constant == pytest.approx(8 ** (5.0 / 3.0) * 6.0)

    def test_asymptotic_formula(self):
        constant = asymptotic_commutator_constant(2, 1.0, 0.0, 1.0, 1.0, 1.0)
        # 4 * 2 + 4 + 2 * 2 + 2 + 2^(5/3)
        assert constant == pytest.approx(18.0 + 2 ** (5.0 / 3.0))

    def test_asymptotic_defaults_to_grid(self):
        params = ParamsFactory(a_max=1.0, n_a=1)
        pi_max = params.grids[0].conjugate.pi_max
        expected = asymptotic_commutator_constant(2, 0.3, 0.5, 1.0, 1.0, pi_max)
        assert commutator_constant(params) == pytest.approx(expected)

    def test_trotter_steps_quadruple_with_doubled_time(self):
        params = ParamsFactory()
        single = trotter_steps(1.0, 0.1, params)
        doubled = trotter_steps(2.0, 0.1, params)
        assert 4 * single - 3 <= doubled <= 4 * single

    def test_asymptotic_needs_grid(self):
        with pytest.raises(DomainError):
            commutator_constant(FermionParamsFactory())
        assert commutator_constant(FermionParamsFactory(), a_max=1.0, pi_max=2.0) > 0

    def test_unknown_mode(self):
        with pytest.raises(DomainError):
            commutator_constant(ParamsFactory(), mode='exact')


class TestNumericConstant(unittest.TestCase):
    """
    Commutator norms measured on assembled pieces.
    """

    def test_numeric_constant_positive(self):
        params = FermionParamsFactory()
        operators = piece_operators(partition(params))
        constant = numeric_commutator_constant(operators)
        assert constant > 0
        assert commutator_constant(params, NormMode.NUMERIC) == pytest.approx(constant, rel=1e-6)

    def test_commuting_pieces(self):
        params = FermionParamsFactory(dims=(1, 1, 1))
        # One site: only the mass piece survives.
        assert numeric_commutator_constant(piece_operators(partition(params))) == pytest.approx(0.0, abs=1e-10)

    def test_no_operators(self):
        assert numeric_commutator_constant([]) == 0.0

    @override_settings(QED_DENSE_DIMENSION_LIMIT=64)
    def test_numeric_capability(self):
        with pytest.raises(CapabilityError):
            commutator_constant(FermionParamsFactory(), NormMode.NUMERIC)

    def test_steps_from_numeric_constant(self):
        params = FermionParamsFactory()
        steps = trotter_steps(0.5, 0.1, params, mode=NormMode.NUMERIC)
        constant = commutator_constant(params, NormMode.NUMERIC)
        assert steps == max(1, math.ceil(constant * 0.25 / 0.1))
