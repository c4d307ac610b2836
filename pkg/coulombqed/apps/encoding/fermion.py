"""
Jordan-Wigner images of the four-component lattice fermion field.

Mode (site, alpha) sits at JW position l = 4 n + alpha along the snake path.
An empty mode is the Z = +1 qubit state, so the annihilator's single-qubit
factor is ``+`` = |0><1| and the creator's is ``-`` = |1><0|; both carry Z
factors on every lower JW position.

Gamma matrices are in the Weyl representation,

    gamma^0 = [[0, 1], [1, 0]],   gamma^i = [[0, sigma^i], [-sigma^i, 0]],

so alpha^i = gamma^0 gamma^i = diag(-sigma^i, sigma^i).
"""
import attr
import numpy as np
import scipy.sparse as sp

from coulombqed.apps.hamiltonian.operators import OperatorMatrix
from coulombqed.apps.lattice.snake import SPINOR_COMPONENTS

from .pauli import PauliString, PauliSum

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_ZERO2 = np.zeros((2, 2), dtype=complex)
_ONE2 = np.eye(2, dtype=complex)

GAMMA0 = np.block([[_ZERO2, _ONE2], [_ONE2, _ZERO2]])
GAMMA = tuple(np.block([[_ZERO2, sigma], [-sigma, _ZERO2]]) for sigma in SIGMA)
ALPHA = tuple(GAMMA0 @ gamma for gamma in GAMMA)

# gamma^0 gamma^mu for mu = 0..3: the matrices contracted into J^mu = g psi^dagger (.) psi.
CURRENT_MATRICES = (np.eye(SPINOR_COMPONENTS, dtype=complex),) + ALPHA


@attr.s(frozen=True)
class FermionModeIndex:
    """
    One fermion mode and its place on the Jordan-Wigner line.
    """
    site = attr.ib(type=int)
    alpha = attr.ib(type=int, validator=attr.validators.in_(range(SPINOR_COMPONENTS)))
    position = attr.ib(type=int)

    @classmethod
    def on_path(cls, path, site, alpha):
        return cls(site=site, alpha=alpha, position=path.position(site, alpha))


def _check_position(mode, total_modes):
    if not 0 <= mode.position < total_modes:
        raise ValueError(f"JW position {mode.position} outside {total_modes} modes")


def jw_lower(mode, total_modes):
    """Image of psi: Z on every lower position, ``+`` at the mode."""
    _check_position(mode, total_modes)
    return PauliString(1.0, [(k, 'Z') for k in range(mode.position)] + [(mode.position, '+')])


def jw_raise(mode, total_modes):
    """Image of psi^dagger."""
    return jw_lower(mode, total_modes).adjoint()


def bilinear(mode_a, mode_b, total_modes):
    """
    Image of psi^dagger_A psi_B.

    The lower-position Z strings cancel, leaving Z only strictly between the
    two positions; the same mode gives the number operator (I - Z)/2.
    """
    _check_position(mode_a, total_modes)
    _check_position(mode_b, total_modes)
    la, lb = mode_a.position, mode_b.position
    if la == lb:
        return PauliSum([PauliString(0.5, []), PauliString(-0.5, [(la, 'Z')])])
    low, high = sorted((la, lb))
    factors = [(la, '-'), (lb, '+')] + [(k, 'Z') for k in range(low + 1, high)]
    return PauliSum([PauliString(1.0, factors)])


def number_operator(mode, total_modes):
    return bilinear(mode, mode, total_modes)


def occupations(n_modes):
    """(2^n, n) array of occupation numbers of every basis state, JW order."""
    indices = np.arange(2 ** n_modes)[:, None]
    shifts = np.arange(n_modes - 1, -1, -1)[None, :]
    return (indices >> shifts) & 1


def site_charges(path, n_modes=None):
    """(2^n, V) array: sum_alpha n_alpha(x) for every basis state and site."""
    n_modes = path.n_modes if n_modes is None else n_modes
    occupied = occupations(n_modes)
    charges = np.zeros((occupied.shape[0], len(path.order)), dtype=int)
    for site in path.order:
        columns = [path.position(site, alpha) for alpha in range(SPINOR_COMPONENTS)]
        charges[:, site] = occupied[:, columns].sum(axis=1)
    return charges


def site_bilinear_matrix(path, site, matrix, total_modes=None):
    """Sparse matrix of sum_ab matrix[a, b] psi^dagger_a(site) psi_b(site)."""
    total_modes = path.n_modes if total_modes is None else total_modes
    dimension = 2 ** total_modes
    result = sp.csr_matrix((dimension, dimension), dtype=complex)
    for a in range(SPINOR_COMPONENTS):
        for b in range(SPINOR_COMPONENTS):
            if matrix[a, b] == 0:
                continue
            term = bilinear(
                FermionModeIndex.on_path(path, site, a), FermionModeIndex.on_path(path, site, b), total_modes,
            )
            result = result + matrix[a, b] * term.to_matrix(total_modes)
    return result


def current_density(path, site, component, g=1.0):
    """J^mu(site) = g psi^dagger gamma^0 gamma^mu psi on the fermion register."""
    matrix = site_bilinear_matrix(path, site, CURRENT_MATRICES[component])
    return OperatorMatrix(g * matrix, label=f'J{component}({site})')


def charge_density(path, site, g=1.0, component=0):
    """
    Charge (component 0) or current (1..3) density at ``site``.

    Components 0 and 3 are diagonal in the occupation basis; J^3 has
    eigenvalues g * (-n1 + n2 + n3 - n4).
    """
    return current_density(path, site, component, g=g)


def total_charge(path):
    """Q = sum_x rho(x), the total occupation number."""
    return OperatorMatrix.diagonal_of(occupations(path.n_modes).sum(axis=1), label='Q')
