"""
Assembly of the lattice Hamiltonian pieces on the combined register.
"""
import logging

import attr
import numpy as np
import scipy.sparse as sp
from django.conf import settings

from coulombqed.apps.core.exceptions import CapabilityError, ConfigurationError
from coulombqed.apps.encoding.fermion import (
    ALPHA,
    GAMMA0,
    FermionModeIndex,
    current_density,
)
from coulombqed.apps.encoding.gauge import centered_dft, conjugate_operator
from coulombqed.apps.lattice.geometry import AXES, coulomb_kernel
from coulombqed.apps.lattice.snake import SPINOR_COMPONENTS

from .dispersion import shift_constant
from .kernels import (
    electric_kernel,
    electric_kernel_coulomb,
    magnetic_energy,
    magnetic_kernel,
    quadratic_form,
    transverse_green_kernel,
    transverse_kernel,
)
from .operators import KronTerm, OperatorMatrix, assemble, check_dense_capability, embed, identity
from .params import conjugate_configurations, field_configurations
from .terms import DensityTerm, FermionTerm

logger = logging.getLogger(__name__)


def _zeros(params, label):
    return OperatorMatrix.zeros(params.layout.dimension, label=label)


def _check_gauge_capability(params):
    dimension = params.layout.gauge_dimension
    if dimension > settings.QED_SPARSE_DIMENSION_LIMIT:
        raise CapabilityError(f"gauge register of dimension {dimension} is too large to tabulate")


def hop_terms(params):
    """
    Hopping and Wilson bonds x -> x + i along every active axis.

    Each bond carries -(i/2) alpha^i + h.c. and -(r/2) gamma^0 + h.c.; both
    bonds of a length-2 axis are kept even where their hopping parts cancel.
    """
    geom, path = params.geometry, params.path
    wilson_matrix = -0.5 * params.wilson * GAMMA0
    terms = []
    for axis in geom.active_axes:
        bond_matrix = -0.5j * ALPHA[axis] + wilson_matrix
        for site in range(geom.volume):
            neighbor = geom.neighbor(site, axis, 1)
            parity = 'even' if geom.site_coords(site)[axis] % 2 == 0 else 'odd'
            for a, b in zip(*np.nonzero(bond_matrix)):
                terms.append(FermionTerm(
                    source='H_f', kind='hop',
                    mode_a=FermionModeIndex.on_path(path, site, int(a)),
                    mode_b=FermionModeIndex.on_path(path, neighbor, int(b)),
                    coefficient=bond_matrix[a, b], axis=axis, parity=parity,
                ))
    return terms


def mass_terms(params):
    """On-site (m + r * #active axes) psi^dagger gamma^0 psi."""
    geom, path = params.geometry, params.path
    coefficient = params.mass + params.wilson * len(geom.active_axes)
    terms = []
    if coefficient == 0:
        return terms
    for site in range(geom.volume):
        for a, b in zip(*np.nonzero(np.triu(GAMMA0))):
            terms.append(FermionTerm(
                source='H_f', kind='onsite',
                mode_a=FermionModeIndex.on_path(path, site, int(a)),
                mode_b=FermionModeIndex.on_path(path, site, int(b)),
                coefficient=coefficient * GAMMA0[a, b],
            ))
    return terms


def coupling_terms(params):
    """
    H_I units: -g sum_i alpha^i_ab G_i(x) psi^dagger_a psi_b for a <= b.

    G_i(x) is A_i(x), or its transverse part when ``transverse_coupling`` is set.
    """
    if not (params.has_gauge and params.has_fermion) or params.g == 0:
        return []
    geom, path = params.geometry, params.path
    modes = np.eye(geom.n_gauge_modes)
    field_rows = transverse_kernel(geom) if params.transverse_coupling else modes
    terms = []
    for site in range(geom.volume):
        rows = [field_rows[geom.gauge_mode(site, axis)] for axis in AXES]
        for a in range(SPINOR_COMPONENTS):
            for b in range(a, SPINOR_COMPONENTS):
                weights = -params.g * sum(ALPHA[axis][a, b] * rows[axis] for axis in AXES)
                if not np.any(np.abs(weights) > 1e-14):
                    continue
                terms.append(FermionTerm(
                    source='H_I', kind='onsite',
                    mode_a=FermionModeIndex.on_path(path, site, a),
                    mode_b=FermionModeIndex.on_path(path, site, b),
                    gauge_weights=weights.astype(complex),
                ))
    return terms


def coulomb_matrix(geom):
    """V x V matrix 1 / (4 pi d(x, y)) with a zero diagonal."""
    sites = geom.sites()
    matrix = np.zeros((geom.volume, geom.volume))
    for x in range(geom.volume):
        for y in range(geom.volume):
            if x != y:
                matrix[x, y] = coulomb_kernel(sites[x], sites[y], geom)
    return matrix


def density_terms(params):
    """g^2 rho(x) rho(y) / (4 pi d) for every unordered site pair."""
    if not params.has_fermion or params.g == 0:
        return []
    kernel = coulomb_matrix(params.geometry)
    volume = params.geometry.volume
    return [
        DensityTerm(x, y, params.g ** 2 * kernel[x, y])
        for x in range(volume) for y in range(x + 1, volume)
    ]


def fermion_terms(params):
    """H_f units followed by H_I units."""
    if not params.has_fermion:
        return []
    return hop_terms(params) + mass_terms(params) + coupling_terms(params)


def assemble_terms(params, terms, label):
    """Sum of ``FermionTerm``/``DensityTerm`` units as an OperatorMatrix."""
    layout = params.layout
    configurations = field_configurations(params) if params.has_gauge else None
    kron_terms = []
    for term in terms:
        if isinstance(term, DensityTerm):
            kron_terms.extend(term.kron_terms(params.path, layout.n_fermion_modes))
        else:
            kron_terms.extend(term.kron_terms(layout.n_fermion_modes, configurations))
    return assemble(kron_terms, layout.gauge_dimension, layout.fermion_dimension, label=label)


def electric_diagonal(params, kernel=None):
    """H_Pi in the conjugate basis: 1/2 sum M_ab pi_a pi_b on every conjugate configuration."""
    _check_gauge_capability(params)
    kernel = electric_kernel(params.geometry) if kernel is None else kernel
    return quadratic_form(kernel, conjugate_configurations(params))


def magnetic_diagonal(params):
    """H_A in the field basis: the classical magnetic energy of every configuration."""
    _check_gauge_capability(params)
    return magnetic_energy(field_configurations(params), params.geometry)


def _electric_gauge_matrix(params, kernel):
    layout = params.layout
    n_modes, levels = layout.n_gauge_modes, layout.levels
    momenta = [
        embed(conjugate_operator(grid).sparse(), mode, n_modes, levels) for mode, grid in enumerate(params.grids)
    ]
    total = sp.csr_matrix((layout.gauge_dimension, layout.gauge_dimension), dtype=complex)
    for a in range(n_modes):
        for b in range(n_modes):
            if abs(kernel[a, b]) > 1e-14:
                total = total + 0.5 * kernel[a, b] * (momenta[a] @ momenta[b])
    return total


def build_H_Pi(params, kernel=None):
    """
    1/2 sum_ab M_ab Pi_a Pi_b with M the transverse electric kernel.

    ``kernel`` swaps in another position-space kernel (the FFT rewrite or the
    Coulomb comparison).
    """
    if not params.has_gauge:
        return _zeros(params, 'H_Pi')
    _check_gauge_capability(params)
    kernel = electric_kernel(params.geometry) if kernel is None else kernel
    layout = params.layout
    gauge = _electric_gauge_matrix(params, kernel)
    return assemble([KronTerm(gauge=gauge)], layout.gauge_dimension, layout.fermion_dimension, label='H_Pi')


def build_H_Pi_fourier(params):
    """
    H_Pi as F^dagger diag(electric_diagonal) F with F the tensor power of the local DFT.

    Dense; only for the dual-construction check on small gauge registers.
    """
    layout = params.layout
    check_dense_capability(layout.gauge_dimension, 'the Fourier-basis H_Pi')
    fourier = np.ones((1, 1), dtype=complex)
    for _ in range(layout.n_gauge_modes):
        fourier = np.kron(fourier, centered_dft(layout.n_a))
    gauge = fourier.conj().T @ np.diag(electric_diagonal(params)) @ fourier
    return OperatorMatrix(sp.kron(gauge, identity(layout.fermion_dimension), format='csr'), label='H_Pi')


def build_H_Pi_coulomb(params):
    """
    H_Pi with the continuum 1 / (4 pi |r|) Green function.

    Returns ``(operator, difference)`` where ``difference`` is the largest
    kernel entry by which it departs from the transverse build.
    """
    primary = electric_kernel(params.geometry)
    comparison = electric_kernel_coulomb(params.geometry)
    difference = float(np.max(np.abs(primary - comparison)))
    if difference > settings.QED_IDENTITY_TOLERANCE:
        logger.warning('COULOMBQED: Coulomb electric kernel differs from the lattice kernel by %.3e', difference)
    return build_H_Pi(params, kernel=comparison), difference


def build_H_A(params):
    """Diagonal magnetic energy in the field basis."""
    if not params.has_gauge:
        return _zeros(params, 'H_A')
    layout = params.layout
    term = KronTerm(gauge=magnetic_diagonal(params).astype(complex))
    return assemble([term], layout.gauge_dimension, layout.fermion_dimension, label='H_A')


def build_H_I(params):
    if not (params.has_gauge and params.has_fermion):
        return _zeros(params, 'H_I')
    return assemble_terms(params, coupling_terms(params), 'H_I')


def build_H_C(params):
    """(g^2 / 2) sum_{x != y} rho(x) rho(y) / (4 pi |x - y|); diagonal in the occupation basis."""
    if not params.has_fermion:
        return _zeros(params, 'H_C')
    return assemble_terms(params, density_terms(params), 'H_C')


def build_H_f(params):
    if not params.has_fermion:
        return _zeros(params, 'H_f')
    return assemble_terms(params, hop_terms(params) + mass_terms(params), 'H_f')


@attr.s(frozen=True)
class CompletedSquare:
    """
    H_A + H_I rewritten as ``square - counterterm + remainder``.

    ``square`` = 1/2 sum_ab B_ab X_a X_b with X = P A - W J is a sum of
    squares of Hermitian operators; ``counterterm`` = 1/2 sum W_cd J_c J_d;
    ``remainder`` is zero for the transverse coupling.
    """
    square = attr.ib(type=OperatorMatrix)
    counterterm = attr.ib(type=OperatorMatrix)
    remainder = attr.ib(type=OperatorMatrix)

    @property
    def total(self):
        return (self.square - self.counterterm + self.remainder).with_label('H_A+H_I')


def _current_operators(params):
    path = params.path
    return [
        current_density(path, site, 1 + axis, g=params.g).sparse()
        for site in range(params.geometry.volume) for axis in AXES
    ]


def build_HA_HI_momentum(params):
    """
    Completed-square form of H_A + H_I from the momentum-space kernels.

    The zero momentum mode drops out of B, P and W.
    """
    if not params.has_gauge:
        raise ConfigurationError("the completed-square form needs the gauge register")
    layout = params.layout
    if layout.dimension > settings.QED_SPARSE_DIMENSION_LIMIT:
        raise CapabilityError(f"completed-square build needs dimension <= {settings.QED_SPARSE_DIMENSION_LIMIT}")
    geom = params.geometry
    magnetic = magnetic_kernel(geom)
    projector = transverse_kernel(geom)
    green = transverse_green_kernel(geom)
    configurations = field_configurations(params)
    gauge_identity = identity(layout.gauge_dimension)
    fermion_identity = identity(layout.fermion_dimension)
    currents = _current_operators(params) if params.has_fermion else []

    def current_combination(weights):
        total = sp.csr_matrix((layout.fermion_dimension, layout.fermion_dimension), dtype=complex)
        for weight, current in zip(weights, currents):
            if abs(weight) > 1e-14:
                total = total + weight * current
        return total

    dimension = layout.dimension
    square = sp.csr_matrix((dimension, dimension), dtype=complex)
    eigenvalues, eigenvectors = np.linalg.eigh(magnetic)
    for value, vector in zip(eigenvalues, eigenvectors.T):
        if value <= 1e-12:
            continue
        field_part = sp.kron(sp.diags((configurations @ (projector @ vector)).astype(complex)), fermion_identity)
        operator = field_part
        if currents:
            operator = operator - sp.kron(gauge_identity, current_combination(green @ vector))
        square = square + 0.5 * value * (operator @ operator)

    counterterm = sp.csr_matrix((dimension, dimension), dtype=complex)
    remainder = sp.csr_matrix((dimension, dimension), dtype=complex)
    if currents:
        fermion_part = sp.csr_matrix((layout.fermion_dimension, layout.fermion_dimension), dtype=complex)
        for c, row in enumerate(green):
            fermion_part = fermion_part + currents[c] @ current_combination(row)
        counterterm = sp.kron(gauge_identity, 0.5 * fermion_part, format='csr')
        if not params.transverse_coupling:
            longitudinal = np.eye(geom.n_gauge_modes) - projector
            for a, current in enumerate(currents):
                field = configurations @ longitudinal[a]
                if np.any(np.abs(field) > 1e-14):
                    remainder = remainder - sp.kron(sp.diags(field.astype(complex)), current, format='csr')
    logger.debug('COULOMBQED: completed square built from %d magnetic eigenvectors', int(np.sum(eigenvalues > 1e-12)))
    return CompletedSquare(
        square=OperatorMatrix(square, label='square'),
        counterterm=OperatorMatrix(counterterm, label='counterterm'),
        remainder=OperatorMatrix(remainder, label='remainder'),
    )


@attr.s(frozen=True)
class HamiltonianPieces:
    """The five Hamiltonian pieces on one register, plus the Dirac-sea shift."""
    params = attr.ib()
    H_Pi = attr.ib(type=OperatorMatrix)
    H_A = attr.ib(type=OperatorMatrix)
    H_I = attr.ib(type=OperatorMatrix)
    H_C = attr.ib(type=OperatorMatrix)
    H_f = attr.ib(type=OperatorMatrix)
    shift_constant = attr.ib(type=float)

    def as_dict(self):
        return {'H_Pi': self.H_Pi, 'H_A': self.H_A, 'H_I': self.H_I, 'H_C': self.H_C, 'H_f': self.H_f}

    def total(self, shifted=False):
        total = self.H_Pi + self.H_A + self.H_I + self.H_C + self.H_f
        if shifted and self.params.has_fermion:
            total = total + OperatorMatrix(self.shift_constant * identity(total.dimension))
        return total.with_label('H')


def build_pieces(params):
    """Build all five pieces for ``params``."""
    volume = params.geometry.volume
    pieces = HamiltonianPieces(
        params=params,
        H_Pi=build_H_Pi(params),
        H_A=build_H_A(params),
        H_I=build_H_I(params),
        H_C=build_H_C(params),
        H_f=build_H_f(params),
        shift_constant=shift_constant(volume, params.mass, params.wilson) if params.has_fermion else 0.0,
    )
    logger.info(
        'COULOMBQED: built %s Hamiltonian on dims %s: %d qubits, dimension %d',
        params.sector, params.geometry.dims, params.layout.total_qubits, params.layout.dimension,
    )
    return pieces


def total_hamiltonian(params, shifted=False):
    return build_pieces(params).total(shifted=shifted)


def magnetic_momentum_diagonal(params):
    """H_A diagonal from the momentum-space kernel, for comparison with ``magnetic_diagonal``."""
    return quadratic_form(magnetic_kernel(params.geometry), field_configurations(params))

