"""
Operator containers shared by every builder.

An ``OperatorMatrix`` wraps either an explicit ``scipy.sparse`` matrix or, for
builds above ``QED_SPARSE_DIMENSION_LIMIT``, a matrix-free
``scipy.sparse.linalg.LinearOperator``. Operators on the combined register are
sums of ``KronTerm`` objects: a gauge factor tensored with a fermion factor,
either of which may be a sparse matrix, a diagonal given as a vector, or the
identity.
"""
import logging

import attr
import numpy as np
import scipy.sparse as sp
from django.conf import settings
from scipy.sparse.linalg import ArpackError, LinearOperator, aslinearoperator, eigsh

from coulombqed.apps.core.exceptions import CapabilityError

logger = logging.getLogger(__name__)

# Entries at or below this are roundoff in a commutator of O(1) operators.
ZERO_COMMUTATOR_ENTRY = 1e-14


def check_dense_capability(dimension, action):
    """Raises CapabilityError if ``dimension`` is above the dense limit."""
    limit = settings.QED_DENSE_DIMENSION_LIMIT
    if dimension > limit:
        raise CapabilityError(f"{action} needs dimension {dimension} <= {limit}")


@attr.s(frozen=True, eq=False)
class OperatorMatrix:
    """
    A (usually Hermitian) operator with sparse or matrix-free storage.
    """
    matrix = attr.ib(default=None)
    operator = attr.ib(default=None, repr=False)
    hermitian = attr.ib(type=bool, default=True)
    label = attr.ib(type=str, default='')

    def __attrs_post_init__(self):
        if self.matrix is None and self.operator is None:
            raise ValueError("OperatorMatrix needs a matrix or a LinearOperator")
        if self.matrix is not None:
            object.__setattr__(self, 'matrix', sp.csr_matrix(self.matrix, dtype=complex))

    @classmethod
    def zeros(cls, dimension, label=''):
        return cls(sp.csr_matrix((dimension, dimension), dtype=complex), label=label)

    @classmethod
    def diagonal_of(cls, values, label=''):
        return cls(sp.diags(np.asarray(values, dtype=complex), format='csr'), label=label)

    @property
    def dimension(self):
        return (self.matrix if self.matrix is not None else self.operator).shape[0]

    @property
    def is_matrix_free(self):
        return self.matrix is None

    def sparse(self):
        if self.matrix is None:
            raise CapabilityError(f"{self.label or 'operator'} was built matrix-free (dimension {self.dimension})")
        return self.matrix

    def dense(self):
        check_dense_capability(self.dimension, f"densifying {self.label or 'operator'}")
        return self.sparse().toarray()

    def linear_operator(self):
        if self.operator is not None:
            return self.operator
        return aslinearoperator(self.matrix)

    def apply(self, vector):
        if self.matrix is not None:
            return self.matrix @ vector
        return self.operator.matvec(vector)

    def diagonal(self):
        return self.sparse().diagonal()

    def is_diagonal(self):
        matrix = self.sparse()
        return matrix.nnz == 0 or bool(np.all(matrix.tocoo().row == matrix.tocoo().col))

    def hermiticity_defect(self):
        """max |H - H^dagger| over all entries."""
        matrix = self.sparse()
        difference = matrix - matrix.conj().T
        return float(abs(difference).max()) if difference.nnz else 0.0

    def is_hermitian(self, tolerance=None):
        tolerance = settings.QED_HERMITICITY_TOLERANCE if tolerance is None else tolerance
        return self.hermiticity_defect() <= tolerance

    def expectation(self, vector):
        return complex(np.vdot(vector, self.apply(vector)))

    def _combine(self, other, sign):
        if self.matrix is not None and other.matrix is not None:
            return OperatorMatrix(self.matrix + sign * other.matrix, hermitian=self.hermitian and other.hermitian)
        combined = self.linear_operator() + sign * other.linear_operator()
        return OperatorMatrix(operator=combined, hermitian=self.hermitian and other.hermitian)

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def scaled(self, factor):
        if self.matrix is not None:
            return OperatorMatrix(
                factor * self.matrix, hermitian=self.hermitian and np.isreal(factor), label=self.label,
            )
        return OperatorMatrix(
            operator=factor * self.operator, hermitian=self.hermitian and np.isreal(factor), label=self.label,
        )

    def with_label(self, label):
        return attr.evolve(self, label=label)


def identity(dimension):
    return sp.identity(dimension, dtype=complex, format='csr')


def embed(local, position, n_positions, local_dimension):
    """
    ``local`` acting on slot ``position`` of ``n_positions`` equal slots.

    Slot 0 is the most significant (big-endian) factor.
    """
    left = identity(local_dimension ** position)
    right = identity(local_dimension ** (n_positions - position - 1))
    return sp.kron(sp.kron(left, sp.csr_matrix(local), format='csr'), right, format='csr')


@attr.s(frozen=True, eq=False)
class KronTerm:
    """
    ``gauge`` tensor ``fermion``; a 1-D array means a diagonal, ``None`` the identity.
    """
    gauge = attr.ib(default=None)
    fermion = attr.ib(default=None)

    def factor_matrix(self, factor, dimension):
        if factor is None:
            return identity(dimension)
        if isinstance(factor, np.ndarray) and factor.ndim == 1:
            return sp.diags(factor.astype(complex), format='csr')
        return sp.csr_matrix(factor, dtype=complex)

    def to_sparse(self, gauge_dimension, fermion_dimension):
        return sp.kron(
            self.factor_matrix(self.gauge, gauge_dimension),
            self.factor_matrix(self.fermion, fermion_dimension),
            format='csr',
        )

    def apply_block(self, block):
        """Apply to a state reshaped as (gauge_dimension, fermion_dimension)."""
        result = block
        if self.fermion is not None:
            if isinstance(self.fermion, np.ndarray) and self.fermion.ndim == 1:
                result = result * self.fermion[None, :]
            else:
                result = (self.fermion @ result.T).T
        if self.gauge is not None:
            if isinstance(self.gauge, np.ndarray) and self.gauge.ndim == 1:
                result = self.gauge[:, None] * result
            else:
                result = self.gauge @ result
        return result


def assemble(terms, gauge_dimension, fermion_dimension, label='', hermitian=True):
    """
    Sum of Kronecker terms as an ``OperatorMatrix``.

    Above ``QED_SPARSE_DIMENSION_LIMIT`` the sum is returned matrix-free.
    """
    terms = list(terms)
    dimension = gauge_dimension * fermion_dimension
    if dimension <= settings.QED_SPARSE_DIMENSION_LIMIT:
        total = sp.csr_matrix((dimension, dimension), dtype=complex)
        for term in terms:
            total = total + term.to_sparse(gauge_dimension, fermion_dimension)
        logger.debug('COULOMBQED: assembled %s from %d terms, nnz=%d', label, len(terms), total.nnz)
        return OperatorMatrix(total, hermitian=hermitian, label=label)

    def matvec(vector):
        block = np.asarray(vector, dtype=complex).reshape(gauge_dimension, fermion_dimension)
        result = np.zeros_like(block)
        for term in terms:
            result += term.apply_block(block)
        return result.reshape(-1)

    def rmatvec(vector):
        # Every assembled operator is Hermitian by construction.
        return matvec(vector)

    logger.info('COULOMBQED: %s built matrix-free at dimension %d', label, dimension)
    operator = LinearOperator((dimension, dimension), matvec=matvec, rmatvec=rmatvec, dtype=complex)
    return OperatorMatrix(operator=operator, hermitian=hermitian, label=label)


def max_abs_difference(first, second):
    difference = sp.csr_matrix(first.sparse() - second.sparse())
    return float(abs(difference).max()) if difference.nnz else 0.0


def commutator(first, second):
    a, b = first.sparse(), second.sparse()
    return OperatorMatrix(a @ b - b @ a, hermitian=False)


def commutator_norm(first, second, tolerance=1e-8):
    """
    Spectral norm of [first, second] from Lanczos on the Hermitian i[first, second].

    Commuting pairs give 0.0 without calling ARPACK.
    """
    dimension = first.dimension
    if not dimension:
        return 0.0
    if first.is_matrix_free or second.is_matrix_free:
        a, b = first.linear_operator(), second.linear_operator()

        def matvec(vector):
            return 1j * (a.matvec(b.matvec(vector)) - b.matvec(a.matvec(vector)))

        operator = LinearOperator((dimension, dimension), matvec=matvec, dtype=complex)
        return _largest_magnitude(operator, tolerance)
    matrix = sp.csr_matrix(1j * commutator(first, second).sparse())
    matrix.eliminate_zeros()
    if not matrix.nnz or float(abs(matrix).max()) <= ZERO_COMMUTATOR_ENTRY:
        return 0.0
    if dimension <= 64:
        return float(np.max(np.abs(np.linalg.eigvalsh(matrix.toarray()))))
    try:
        return _largest_magnitude(aslinearoperator(matrix), tolerance)
    except ArpackError:
        logger.warning('COULOMBQED: Lanczos failed on a commutator at dimension %d, using the dense norm', dimension)
        check_dense_capability(dimension, 'dense commutator norm')
        return float(np.max(np.abs(np.linalg.eigvalsh(matrix.toarray()))))


def _largest_magnitude(operator, tolerance):
    start = np.random.default_rng(0).standard_normal(operator.shape[0]).astype(complex)
    values = eigsh(operator, k=1, which='LM', tol=tolerance, v0=start, return_eigenvectors=False)
    return float(np.max(np.abs(values)))


def lowest_eigenvalue(op, dense_limit=2048):
    """Smallest eigenvalue of a Hermitian operator."""
    if op.dimension <= dense_limit:
        return float(np.linalg.eigvalsh(op.dense())[0])
    values = eigsh(op.linear_operator(), k=1, which='SA', tol=1e-10, return_eigenvectors=False)
    return float(values[0])
