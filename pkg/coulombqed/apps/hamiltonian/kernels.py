"""
Quadratic-form kernels over gauge modes.

Every kernel here is a real symmetric (3V, 3V) matrix indexed by gauge mode
``3 * site + direction``. The momentum-space forms go through
``real_space_kernel``; the position-space forms are written with explicit
finite differences and must agree with them.
"""
import logging

import numpy as np

from coulombqed.apps.core.exceptions import DomainError
from coulombqed.apps.lattice.geometry import (
    AXES,
    coulomb_kernel,
    difference_symbol,
    laplacian_symbol,
    real_space_kernel,
)

logger = logging.getLogger(__name__)


def transverse_projector(p):
    """
    P_ij(p) = delta_ij - D_i(p) D_j(p)^* / |D(p)|^2 with D the forward difference symbol.

    Raises DomainError on the zero mode.
    """
    if getattr(p, 'is_zero', False) or laplacian_symbol(p) == 0:
        raise DomainError("the transverse projector is undefined on the zero momentum mode")
    d = difference_symbol(p)
    return np.eye(3) - np.outer(d, d.conj()) / laplacian_symbol(p)


def magnetic_symbol(p):
    """|D|^2 I - D D^dagger; zero on the zero mode."""
    d = difference_symbol(p)
    return laplacian_symbol(p) * np.eye(3) - np.outer(d, d.conj())


def electric_symbol(p):
    """I on the zero mode, the transverse projector elsewhere."""
    if getattr(p, 'is_zero', False):
        return np.eye(3)
    return transverse_projector(p)


def magnetic_kernel(geom):
    """B with H_A = 1/2 A^T B A."""
    return real_space_kernel(geom, magnetic_symbol)


def electric_kernel(geom):
    """M with H_Pi = 1/2 Pi^T M Pi."""
    return real_space_kernel(geom, electric_symbol, include_zero_mode=True)


def transverse_kernel(geom):
    """Position-space transverse projector acting on gauge-mode vectors."""
    return real_space_kernel(geom, transverse_projector)


def transverse_green_kernel(geom):
    """W = P / |D|^2, the kernel of the current-current counterterm."""
    return real_space_kernel(geom, lambda p: transverse_projector(p) / laplacian_symbol(p))


def _displacement_grid(geom):
    return np.stack(np.meshgrid(*[np.arange(extent) for extent in geom.dims], indexing='ij'), axis=-1)


def lattice_green_function(geom):
    """
    G(r) = (1/V) sum_{p != 0} exp(i p r) / |D(p)|^2 on every displacement r.

    Returned as a real array of shape ``geom.dims``.
    """
    momenta = np.meshgrid(*[2 * np.pi * np.arange(extent) / extent for extent in geom.dims], indexing='ij')
    symbol = 4.0 * sum(np.sin(p / 2) ** 2 for p in momenta)
    inverse = np.zeros_like(symbol)
    nonzero = symbol > 1e-14
    inverse[nonzero] = 1.0 / symbol[nonzero]
    return np.fft.ifftn(inverse).real


def coulomb_green_function(geom):
    """1 / (4 pi |r|) with minimum-image |r|; coincident points get 0."""
    green = np.zeros(geom.dims)
    for displacement in _displacement_grid(geom).reshape(-1, 3):
        if not displacement.any():
            continue
        green[tuple(displacement)] = coulomb_kernel(displacement, (0, 0, 0), geom)
    return green


def electric_kernel_from_green(geom, green):
    """
    Position-space electric kernel built from a scalar Green function.

    M[(x,i),(y,j)] = delta_ij delta_xy
                     - [G(r + i - j) - G(r + i) - G(r - j) + G(r)],  r = x - y.
    """
    dims = np.array(geom.dims)
    coords = np.array(geom.sites())
    volume = geom.volume
    kernel = np.zeros((volume, 3, volume, 3))
    separation = coords[:, None, :] - coords[None, :, :]
    unit = np.eye(3, dtype=int)

    def lookup(offset):
        wrapped = np.mod(separation + offset, dims)
        return green[wrapped[..., 0], wrapped[..., 1], wrapped[..., 2]]

    for i in AXES:
        for j in AXES:
            bracket = lookup(unit[i] - unit[j]) - lookup(unit[i]) - lookup(-unit[j]) + lookup(0 * unit[i])
            kernel[:, i, :, j] -= bracket
    kernel = kernel.reshape(3 * volume, 3 * volume)
    return kernel + np.eye(3 * volume)


def electric_kernel_position(geom):
    """FFT rewrite of ``electric_kernel`` through the lattice Green function."""
    return electric_kernel_from_green(geom, lattice_green_function(geom))


def electric_kernel_coulomb(geom):
    """Comparison kernel using the continuum 1 / (4 pi |r|) Green function."""
    return electric_kernel_from_green(geom, coulomb_green_function(geom))


def _shift(field, axis, step):
    """result[x] = field[x + step * e_axis] on the periodic lattice."""
    return np.roll(field, -step, axis=axis)


def magnetic_energy(configurations, geom):
    """
    Classical magnetic energy of one or more field configurations.

    ``configurations`` has trailing dimension 3V (mode order). Evaluates

        -1/2 sum A_j Lap A_j
        + 1/2 sum A_i(x) [A_j(x+i) - A_j(x+i-j) - A_j(x) + A_j(x-j)]

    with the forward/backward difference pairing, which vanishes exactly on
    gradients A_j(x) = phi(x+j) - phi(x).
    """
    configurations = np.asarray(configurations, dtype=float)
    batch_shape = configurations.shape[:-1]
    field = configurations.reshape((-1,) + tuple(geom.dims) + (3,))
    energy = np.zeros(field.shape[0])
    for j in AXES:
        a_j = field[..., j]
        laplacian = sum(_shift(a_j, 1 + i, 1) + _shift(a_j, 1 + i, -1) - 2 * a_j for i in AXES)
        energy -= 0.5 * np.sum(a_j * laplacian, axis=(1, 2, 3))
        for i in AXES:
            a_i = field[..., i]
            bracket = (
                _shift(a_j, 1 + i, 1)
                - _shift(_shift(a_j, 1 + i, 1), 1 + j, -1)
                - a_j
                + _shift(a_j, 1 + j, -1)
            )
            energy += 0.5 * np.sum(a_i * bracket, axis=(1, 2, 3))
    return energy.reshape(batch_shape)


def quadratic_form(kernel, configurations):
    """1/2 c^T K c for every row c of ``configurations``."""
    configurations = np.asarray(configurations)
    return 0.5 * np.einsum('na,ab,nb->n', configurations, kernel, configurations)


def gradient_configuration(phi, geom):
    """A_j(x) = phi(x + j) - phi(x) as a flat mode vector."""
    phi = np.asarray(phi, dtype=float).reshape(geom.dims)
    field = np.stack([_shift(phi, axis, 1) - phi for axis in AXES], axis=-1)
    return field.reshape(-1)
