"""
Field-basis encoding of one gauge degree of freedom on n_A qubits.

Level k of an n-qubit register holds the field value -a_max + k * spacing and
is stored as the big-endian binary encoding of k, so |00...0> is -a_max.
The conjugate momentum is Pi = F^dagger D F with F the centered discrete
Fourier transform and D the diagonal of conjugate eigenvalues.
"""
import math

import attr
import numpy as np

from coulombqed.apps.core.exceptions import DomainError
from coulombqed.apps.hamiltonian.operators import OperatorMatrix


def _positive(instance, attribute, value):
    if not value > 0:
        raise DomainError(f"{attribute.name} must be positive, got {value}")


def _at_least_one(instance, attribute, value):
    if int(value) != value or value < 1:
        raise DomainError(f"{attribute.name} must be an integer >= 1, got {value}")


@attr.s(frozen=True)
class FieldGrid:
    """
    2^n field values spread evenly over [-a_max, a_max].
    """
    a_max = attr.ib(type=float, converter=float, validator=_positive)
    n_qubits = attr.ib(type=int, validator=_at_least_one)

    @property
    def levels(self):
        return 2 ** self.n_qubits

    @property
    def spacing(self):
        return 2.0 * self.a_max / (self.levels - 1)

    def value(self, k):
        return -self.a_max + k * self.spacing

    @property
    def values(self):
        return -self.a_max + np.arange(self.levels) * self.spacing

    def window(self, a_cut):
        """Level indices whose field value lies inside [-a_cut, a_cut]."""
        if a_cut > self.a_max * (1 + 1e-12):
            raise DomainError(f"window {a_cut} exceeds the grid span {self.a_max}")
        return np.flatnonzero(np.abs(self.values) <= a_cut * (1 + 1e-12))

    @property
    def conjugate(self):
        return ConjugateGrid(self)


@attr.s(frozen=True)
class ConjugateGrid:
    """
    Eigenvalues of the conjugate momentum paired with a ``FieldGrid``.
    """
    field = attr.ib(type=FieldGrid)

    @property
    def pi_max(self):
        return math.pi / self.field.spacing

    @property
    def levels(self):
        return self.field.levels

    @property
    def spacing(self):
        return 2.0 * self.pi_max / (self.levels - 1)

    @property
    def values(self):
        return -self.pi_max + np.arange(self.levels) * self.spacing


def make_field_grid(a_max, n_qubits):
    """
    Grid with exactly 2^n_qubits levels on [-a_max, a_max].

    Raises DomainError if a_max is not positive or n_qubits < 1.
    """
    return FieldGrid(a_max=a_max, n_qubits=n_qubits)


def centered_dft(n_qubits):
    """
    F[k, j] = exp(-2 pi i (k - c)(j - c) / d) / sqrt(d), c = (d - 1) / 2.

    Rows are conjugate levels, columns field levels.
    """
    levels = 2 ** n_qubits
    offsets = np.arange(levels) - (levels - 1) / 2.0
    return np.exp(-2j * math.pi * np.outer(offsets, offsets) / levels) / math.sqrt(levels)


def field_operator(grid):
    return OperatorMatrix.diagonal_of(grid.values, label='A')


def conjugate_operator(grid):
    fourier = centered_dft(grid.n_qubits)
    matrix = fourier.conj().T @ np.diag(grid.conjugate.values) @ fourier
    # Exact Hermitian symmetrization removes rounding asymmetry.
    return OperatorMatrix(0.5 * (matrix + matrix.conj().T), label='Pi')


def local_fourier_swap(n_qubits):
    """The centered DFT as a unitary OperatorMatrix."""
    return OperatorMatrix(centered_dft(n_qubits), hermitian=False, label='F')


def oscillator_hamiltonian(grid, omega):
    """Single-mode surrogate 1/2 Pi^2 + 1/2 omega^2 A^2 on ``grid``."""
    pi = conjugate_operator(grid).dense()
    field = np.diag(grid.values)
    return OperatorMatrix(0.5 * pi @ pi + 0.5 * omega ** 2 * field @ field, label='oscillator')
