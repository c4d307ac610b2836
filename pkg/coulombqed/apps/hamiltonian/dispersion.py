"""
Free Wilson-Dirac fermion: dispersion, single-particle matrix and the Dirac-sea shift.
"""
import itertools
import math

import numpy as np
import scipy.sparse as sp

from coulombqed.apps.lattice.geometry import momentum_modes
from coulombqed.apps.lattice.snake import SPINOR_COMPONENTS


def _momentum(p):
    return np.asarray(getattr(p, 'p', p), dtype=float)


def dispersion(p, mass, wilson):
    """E_p = sqrt(sum_i sin^2 p_i + (m + 2 r sum_j sin^2(p_j / 2))^2)."""
    momentum = _momentum(p)
    kinetic = float(np.sum(np.sin(momentum) ** 2))
    effective_mass = mass + 2.0 * wilson * float(np.sum(np.sin(momentum / 2) ** 2))
    return math.sqrt(kinetic + effective_mass ** 2)


def energy_bound_squared(mass, wilson):
    """Upper bound 3 + m^2 + 12 m r + 36 r^2 on E_p^2 over the Brillouin zone."""
    return 3.0 + mass ** 2 + 12.0 * mass * wilson + 36.0 * wilson ** 2


def shift_constant(volume, mass, wilson):
    """2 V sqrt(3 + m^2 + 12 m r + 36 r^2); makes H_f + shift positive semidefinite."""
    return 2.0 * volume * math.sqrt(energy_bound_squared(mass, wilson))


def dispersion_spectrum(geom, mass, wilson):
    """Sorted single-particle energies: +-E_p for every mode, each twice."""
    energies = []
    for mode in momentum_modes(geom):
        energy = dispersion(mode, mass, wilson)
        energies.extend([energy, energy, -energy, -energy])
    return np.sort(np.array(energies))


def single_particle_hamiltonian(terms, volume):
    """
    The 4V x 4V matrix h with H_f = sum psi^dagger_a h_ab psi_b.

    Rows and columns are ``4 * site + alpha``; ``terms`` are the field-free
    ``FermionTerm`` units of H_f.
    """
    size = SPINOR_COMPONENTS * volume
    matrix = np.zeros((size, size), dtype=complex)
    for term in terms:
        a = SPINOR_COMPONENTS * term.mode_a.site + term.mode_a.alpha
        b = SPINOR_COMPONENTS * term.mode_b.site + term.mode_b.alpha
        if term.is_number:
            matrix[a, a] += term.coefficient.real
        else:
            matrix[a, b] += term.coefficient
            matrix[b, a] += term.coefficient.conjugate()
    return matrix


def free_fermion_ground_energy(single_particle):
    """Sum of the negative single-particle eigenvalues (filled Dirac sea)."""
    values = np.linalg.eigvalsh(single_particle)
    return float(values[values < 0].sum())


def many_body_spectrum(single_particle_energies):
    """Every sum over subsets of the single-particle energies, sorted."""
    energies = np.asarray(single_particle_energies, dtype=float)
    levels = [0.0]
    for energy in energies:
        levels = levels + [level + energy for level in levels]
    return np.sort(np.array(levels))


def particle_number_indices(n_modes, number):
    """Basis-state indices of the fixed particle-number sector."""
    return np.array([
        sum(1 << (n_modes - 1 - position) for position in occupied)
        for occupied in itertools.combinations(range(n_modes), number)
    ], dtype=int)


def restrict_to_particle_number(matrix, n_modes, number):
    """Dense block of a fermion-register matrix inside one particle-number sector."""
    indices = np.sort(particle_number_indices(n_modes, number))
    block = sp.csr_matrix(matrix)[indices][:, indices]
    return block.toarray()
