"""
Tests for Hamiltonian parameters and the register layout.
"""
import math
import unittest

import ddt
import numpy as np
import pytest

from coulombqed.apps.core.constants import Sector
from coulombqed.apps.core.exceptions import ConfigurationError, DomainError
from coulombqed.apps.encoding.gauge import make_field_grid
from coulombqed.apps.lattice.geometry import LatticeGeometry

from ..params import HamiltonianParams, conjugate_configurations, field_configurations, level_indices
from .factories import FermionParamsFactory, GaugeParamsFactory, ParamsFactory


@ddt.ddt
class TestHamiltonianParams(unittest.TestCase):
    """
    Validation of couplings and field grids.
    """

    @ddt.data({'mass': -0.1}, {'wilson': 0.0}, {'g': math.inf}, {'mass': math.nan})
    def test_bad_couplings(self, overrides):
        with pytest.raises(DomainError):
            ParamsFactory(**overrides)

    def test_gauge_sector_needs_grid(self):
        with pytest.raises(ConfigurationError):
            HamiltonianParams(geometry=LatticeGeometry((2, 1, 1)), sector=Sector.GAUGE)

    def test_fermion_sector_needs_no_grid(self):
        params = FermionParamsFactory()
        assert params.n_a == 0
        assert not params.has_gauge
        assert params.has_fermion

    def test_per_mode_grids(self):
        geometry = LatticeGeometry((2, 1, 1))
        grids = [make_field_grid(1.0 + 0.1 * mode, 2) for mode in range(6)]
        params = HamiltonianParams(geometry=geometry, grid=grids, sector=Sector.GAUGE)
        assert params.n_a == 2
        assert params.grids[3].a_max == pytest.approx(1.3)

    def test_wrong_grid_count(self):
        with pytest.raises(ConfigurationError):
            HamiltonianParams(geometry=LatticeGeometry((2, 1, 1)), grid=[make_field_grid(1.0, 1)] * 5)

    def test_mixed_grid_qubits(self):
        grids = [make_field_grid(1.0, 1)] * 5 + [make_field_grid(1.0, 2)]
        with pytest.raises(ConfigurationError):
            HamiltonianParams(geometry=LatticeGeometry((2, 1, 1)), grid=grids)

    def test_unknown_sector(self):
        with pytest.raises(ValueError):
            ParamsFactory(sector='both')


class TestRegisterLayout(unittest.TestCase):
    """
    Qubit counts and positions on the combined register.
    """

    def test_coupled_layout(self):
        layout = ParamsFactory(n_a=2).layout
        assert layout.n_gauge_modes == 6
        assert layout.gauge_qubits == 12
        assert layout.n_fermion_modes == 8
        assert layout.total_qubits == 20
        assert layout.gauge_qubit_indices(1) == [2, 3]
        assert layout.fermion_qubit(0) == 12
        assert layout.gauge_shape == (4,) * 6 + (256,)

    def test_sector_layouts(self):
        assert GaugeParamsFactory().layout.total_qubits == 6
        assert FermionParamsFactory().layout.total_qubits == 8
        assert FermionParamsFactory().layout.gauge_dimension == 1

    def test_level_indices(self):
        layout = GaugeParamsFactory(n_a=2).layout
        levels = level_indices(layout)
        assert levels.shape == (4 ** 6, 6)
        np.testing.assert_array_equal(levels[0b110000000001], [3, 0, 0, 0, 0, 1])

    def test_configurations(self):
        params = GaugeParamsFactory(a_max=2.0)
        fields = field_configurations(params)
        np.testing.assert_allclose(fields[0], -2.0)
        np.testing.assert_allclose(fields[1], [-2.0] * 5 + [2.0])
        momenta = conjugate_configurations(params)
        pi_max = params.grids[0].conjugate.pi_max
        np.testing.assert_allclose(momenta[-1], pi_max)
