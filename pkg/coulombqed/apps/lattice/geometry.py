"""
Periodic lattice geometry, momentum modes and the discrete kernels built on them.

Sites are numbered row-major over (x, y, z) with x the slowest index. Gauge
modes are numbered ``3 * site + direction``. Every momentum-space kernel uses
the forward difference symbol ``D_i(p) = exp(i p_i) - 1`` and drops the zero
mode wherever the continuum expression would divide by ``|D|^2``.
"""
import itertools
import math

import attr
import numpy as np

from coulombqed.apps.core.exceptions import DomainError

AXES = (0, 1, 2)
AXIS_NAMES = ('x', 'y', 'z')


def _positive_dims(instance, attribute, value):
    if len(value) != 3 or any(int(extent) != extent or extent < 1 for extent in value):
        raise DomainError(f"dims must be three positive integers, got {value!r}")


@attr.s(frozen=True)
class LatticeGeometry:
    """
    A periodic lattice with extents (L_x, L_y, L_z).
    """
    dims = attr.ib(converter=lambda dims: tuple(int(extent) for extent in dims), validator=_positive_dims)

    @property
    def volume(self):
        return self.dims[0] * self.dims[1] * self.dims[2]

    @property
    def n_gauge_modes(self):
        return 3 * self.volume

    @property
    def active_axes(self):
        """Axes with at least two sites; hops along the others are suppressed."""
        return tuple(axis for axis in AXES if self.dims[axis] >= 2)

    def site_index(self, coords):
        return site_index(coords, self)

    def site_coords(self, index):
        """Inverse of ``site_index``."""
        if not 0 <= index < self.volume:
            raise DomainError(f"site index {index} outside lattice of volume {self.volume}")
        _, ly, lz = self.dims
        return (index // (ly * lz), (index // lz) % ly, index % lz)

    def sites(self):
        return [self.site_coords(index) for index in range(self.volume)]

    def neighbor(self, index, axis, step=1):
        """Index of the site ``step`` lattice units away along ``axis`` (periodic)."""
        coords = list(self.site_coords(index))
        coords[axis] = (coords[axis] + step) % self.dims[axis]
        return self.site_index(coords)

    def gauge_mode(self, site, direction):
        return 3 * site + direction

    def momentum_modes(self):
        return momentum_modes(self)


@attr.s(frozen=True)
class MomentumMode:
    """
    Reciprocal lattice point p_i = 2 pi l_i / L_i.
    """
    integers = attr.ib(converter=tuple)
    dims = attr.ib(converter=tuple)

    @property
    def p(self):
        return np.array([2 * math.pi * l / extent for l, extent in zip(self.integers, self.dims)])

    @property
    def is_zero(self):
        return all(l == 0 for l in self.integers)


def site_index(coords, geom):
    """
    Row-major linear index of the site at ``coords``.

    Raises DomainError if a coordinate is out of range.
    """
    if len(coords) != 3:
        raise DomainError(f"site coordinates must be a triple, got {coords!r}")
    for coord, extent in zip(coords, geom.dims):
        if not 0 <= coord < extent:
            raise DomainError(f"coordinate {tuple(coords)} outside dims {geom.dims}")
    x, y, z = coords
    _, ly, lz = geom.dims
    return (x * ly + y) * lz + z


def momentum_modes(geom):
    """
    All V momentum modes, zero mode first, in the same row-major order as sites.
    """
    ranges = [range(extent) for extent in geom.dims]
    return [MomentumMode(integers, geom.dims) for integers in itertools.product(*ranges)]


def _as_momentum(p):
    if isinstance(p, MomentumMode):
        return p.p, p.is_zero
    p = np.asarray(p, dtype=float)
    return p, bool(np.allclose(np.sin(p / 2), 0.0, atol=1e-15))


def laplacian_symbol(p):
    """|D(p)|^2 = 4 sum_i sin^2(p_i / 2)."""
    momentum, _ = _as_momentum(p)
    return 4.0 * float(np.sum(np.sin(momentum / 2) ** 2))


def difference_symbol(p):
    """Forward difference symbol D_i(p) = exp(i p_i) - 1."""
    momentum, _ = _as_momentum(p)
    return np.exp(1j * momentum) - 1.0


def inverse_laplacian(p):
    """
    Lattice inverse Laplacian -1 / (4 sum_i sin^2(p_i / 2)).

    Raises DomainError on the zero mode.
    """
    _, is_zero = _as_momentum(p)
    if is_zero:
        raise DomainError("the inverse Laplacian is undefined on the zero momentum mode")
    return -1.0 / laplacian_symbol(p)


def minimum_image_distance(x, y, geom):
    deltas = []
    for a, b, extent in zip(x, y, geom.dims):
        delta = abs(a - b) % extent
        deltas.append(min(delta, extent - delta))
    return math.sqrt(sum(delta * delta for delta in deltas))


def coulomb_kernel(x, y, geom):
    """
    1 / (4 pi d) with d the minimum-image distance between sites ``x`` and ``y``.

    Raises DomainError when the points coincide after wrapping.
    """
    distance = minimum_image_distance(x, y, geom)
    if distance == 0:
        raise DomainError(f"coulomb kernel is singular at coincident points {tuple(x)}, {tuple(y)}")
    return 1.0 / (4.0 * math.pi * distance)


def real_space_kernel(geom, symbol, include_zero_mode=False):
    """
    Inverse lattice Fourier transform of a 3x3 momentum symbol onto gauge modes.

    ``symbol(mode)`` returns a 3x3 complex matrix S(p). The result K satisfies
    K[(x,i), (y,j)] = (1/V) sum_p exp(i p.(x - y)) S_ij(p) and is returned as a
    real (3V, 3V) array; the imaginary part cancels between p and -p for every
    symbol used here.
    """
    volume = geom.volume
    coords = np.array(geom.sites(), dtype=float)
    kernel = np.zeros((volume, 3, volume, 3), dtype=complex)
    for mode in momentum_modes(geom):
        if mode.is_zero and not include_zero_mode:
            continue
        phases = np.exp(1j * coords @ mode.p)
        pair_phases = np.outer(phases, phases.conj())
        kernel += pair_phases[:, None, :, None] * np.asarray(symbol(mode))[None, :, None, :]
    kernel /= volume
    return kernel.reshape(3 * volume, 3 * volume).real
