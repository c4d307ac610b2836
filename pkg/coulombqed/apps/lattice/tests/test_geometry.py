"""
Tests for lattice geometry, momentum modes and discrete kernels.
"""
import math
import unittest

import ddt
import numpy as np
import pytest

from coulombqed.apps.core.exceptions import DomainError

from ..geometry import (
    LatticeGeometry,
    MomentumMode,
    coulomb_kernel,
    difference_symbol,
    inverse_laplacian,
    laplacian_symbol,
    minimum_image_distance,
    momentum_modes,
    real_space_kernel,
    site_index,
)
from ..snake import snake_path


@ddt.ddt
class TestLatticeGeometry(unittest.TestCase):
    """
    Site numbering and neighbours on periodic lattices.
    """

    @ddt.data((0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 2, 1))
    def test_site_index_round_trip(self, coords):
        geom = LatticeGeometry((2, 3, 2))
        assert geom.site_coords(geom.site_index(coords)) == coords

    def test_site_index_row_major(self):
        geom = LatticeGeometry((2, 2, 2))
        assert site_index((1, 0, 0), geom) == 4
        assert site_index((0, 1, 0), geom) == 2
        assert site_index((0, 0, 1), geom) == 1

    @ddt.data((2, 0, 0), (0, -1, 0), (0, 0, 5))
    def test_site_index_out_of_range(self, coords):
        with pytest.raises(DomainError):
            site_index(coords, LatticeGeometry((2, 2, 2)))

    @ddt.data((0, 1, 1), (2, 2), (2, 2, -1))
    def test_bad_dims(self, dims):
        with pytest.raises(DomainError):
            LatticeGeometry(dims)

    def test_volume_and_gauge_modes(self):
        geom = LatticeGeometry((2, 2, 1))
        assert geom.volume == 4
        assert geom.n_gauge_modes == 12
        assert geom.active_axes == (0, 1)

    def test_neighbor_wraps(self):
        geom = LatticeGeometry((3, 1, 1))
        assert geom.neighbor(2, 0) == 0
        assert geom.neighbor(0, 0, step=-1) == 2
        # A length-one axis maps every site onto itself.
        assert geom.neighbor(1, 1) == 1


@ddt.ddt
class TestMomentum(unittest.TestCase):
    """
    Reciprocal lattice points and symbols.
    """

    def test_mode_count_and_zero_first(self):
        geom = LatticeGeometry((2, 3, 1))
        modes = momentum_modes(geom)
        assert len(modes) == geom.volume
        assert modes[0].is_zero
        assert sum(mode.is_zero for mode in modes) == 1

    def test_mode_values(self):
        mode = MomentumMode((1, 2, 0), (2, 4, 1))
        np.testing.assert_allclose(mode.p, [math.pi, math.pi, 0.0])

    @ddt.data([0.3, -1.2, 2.0], [math.pi, 0.0, 0.0], [0.1, 0.1, 0.1])
    def test_laplacian_is_squared_difference(self, p):
        symbol = difference_symbol(p)
        assert laplacian_symbol(p) == pytest.approx(float(np.sum(np.abs(symbol) ** 2)), abs=1e-12)

    def test_inverse_laplacian(self):
        assert inverse_laplacian([math.pi, 0.0, 0.0]) == pytest.approx(-0.25)

    def test_inverse_laplacian_zero_mode(self):
        with pytest.raises(DomainError):
            inverse_laplacian(MomentumMode((0, 0, 0), (2, 2, 2)))
        with pytest.raises(DomainError):
            inverse_laplacian([0.0, 2 * math.pi, 0.0])


class TestCoulombKernel(unittest.TestCase):
    """
    Minimum-image distance and the 1 / (4 pi d) kernel.
    """

    def test_minimum_image(self):
        geom = LatticeGeometry((4, 4, 1))
        assert minimum_image_distance((0, 0, 0), (3, 0, 0), geom) == pytest.approx(1.0)
        assert minimum_image_distance((0, 0, 0), (2, 2, 0), geom) == pytest.approx(math.sqrt(8.0))

    def test_kernel_value(self):
        geom = LatticeGeometry((2, 1, 1))
        assert coulomb_kernel((0, 0, 0), (1, 0, 0), geom) == pytest.approx(1.0 / (4.0 * math.pi))

    def test_kernel_symmetric(self):
        geom = LatticeGeometry((4, 3, 1))
        assert coulomb_kernel((0, 0, 0), (3, 2, 0), geom) == coulomb_kernel((3, 2, 0), (0, 0, 0), geom)

    def test_coincident_points(self):
        geom = LatticeGeometry((2, 2, 1))
        with pytest.raises(DomainError):
            coulomb_kernel((1, 1, 0), (1, 1, 0), geom)


class TestRealSpaceKernel(unittest.TestCase):
    """
    Inverse Fourier transforms of momentum symbols.
    """

    def test_identity_symbol_with_zero_mode(self):
        geom = LatticeGeometry((2, 2, 1))
        kernel = real_space_kernel(geom, lambda mode: np.eye(3), include_zero_mode=True)
        np.testing.assert_allclose(kernel, np.eye(3 * geom.volume), atol=1e-12)

    def test_identity_symbol_without_zero_mode(self):
        geom = LatticeGeometry((2, 1, 1))
        kernel = real_space_kernel(geom, lambda mode: np.eye(3))
        expected = np.eye(6) - np.kron(np.full((2, 2), 0.5), np.eye(3))
        np.testing.assert_allclose(kernel, expected, atol=1e-12)


class TestSnakePath(unittest.TestCase):
    """
    Boustrophedon ordering used by Jordan-Wigner.
    """

    def test_visits_every_site_once(self):
        geom = LatticeGeometry((2, 3, 2))
        path = snake_path(geom)
        assert sorted(path.order) == list(range(geom.volume))
        assert path.n_modes == 4 * geom.volume

    def test_consecutive_sites_are_neighbours(self):
        geom = LatticeGeometry((2, 2, 2))
        path = snake_path(geom)
        for first, second in zip(path.order, path.order[1:]):
            a, b = geom.site_coords(first), geom.site_coords(second)
            assert sum(abs(u - v) for u, v in zip(a, b)) == 1

    def test_positions(self):
        geom = LatticeGeometry((2, 2, 1))
        path = snake_path(geom)
        assert path.order == (0, 1, 3, 2)
        assert path.position(3, 2) == 4 * 2 + 2
        assert path.mode_at(10) == (3, 2)
        assert len(path.as_mapping()) == 16
