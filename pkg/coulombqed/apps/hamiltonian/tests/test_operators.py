"""
Tests for operator containers.
"""
import unittest

import numpy as np
import pytest
import scipy.sparse as sp
from django.test import override_settings

from coulombqed.apps.core.exceptions import CapabilityError

from ..operators import (
    KronTerm,
    OperatorMatrix,
    assemble,
    commutator,
    commutator_norm,
    embed,
    lowest_eigenvalue,
    max_abs_difference,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


class TestOperatorMatrix(unittest.TestCase):
    """
    Sparse and matrix-free storage.
    """

    def test_needs_storage(self):
        with pytest.raises(ValueError):
            OperatorMatrix()

    def test_arithmetic(self):
        first = OperatorMatrix(X, label='X')
        second = OperatorMatrix.diagonal_of([1.0, -1.0])
        np.testing.assert_allclose((first + second).dense(), X + Z)
        np.testing.assert_allclose((first - second).dense(), X - Z)
        assert first.scaled(2.0).label == 'X'
        assert not first.scaled(1j).hermitian

    def test_hermiticity(self):
        skew = OperatorMatrix(np.array([[0, 1], [0, 0]]), hermitian=False)
        assert skew.hermiticity_defect() == pytest.approx(1.0)
        assert not skew.is_hermitian()
        assert OperatorMatrix(X).is_hermitian()

    def test_expectation(self):
        vector = np.array([1.0, 1.0]) / np.sqrt(2)
        assert OperatorMatrix(X).expectation(vector) == pytest.approx(1.0)

    @override_settings(QED_DENSE_DIMENSION_LIMIT=2)
    def test_dense_capability(self):
        with pytest.raises(CapabilityError):
            OperatorMatrix.zeros(4).dense()

    def test_embed_is_big_endian(self):
        np.testing.assert_allclose(embed(X, 0, 2, 2).toarray(), np.kron(X, np.eye(2)))
        np.testing.assert_allclose(embed(X, 1, 2, 2).toarray(), np.kron(np.eye(2), X))


class TestAssemble(unittest.TestCase):
    """
    Kronecker sums in sparse and matrix-free form.
    """

    def setUp(self):
        super().setUp()
        self.terms = [
            KronTerm(gauge=np.array([1.0, 2.0, 3.0, 4.0]), fermion=None),
            KronTerm(gauge=None, fermion=sp.csr_matrix(X)),
            KronTerm(gauge=sp.csr_matrix(np.kron(X, Z)), fermion=np.array([0.5, -0.5])),
        ]

    def test_sparse_sum(self):
        operator = assemble(self.terms, 4, 2, label='H')
        expected = np.kron(np.diag([1.0, 2.0, 3.0, 4.0]), np.eye(2)) + np.kron(np.eye(4), X)
        expected = expected + np.kron(np.kron(X, Z), np.diag([0.5, -0.5]))
        np.testing.assert_allclose(operator.dense(), expected)
        assert operator.label == 'H'

    @override_settings(QED_SPARSE_DIMENSION_LIMIT=4)
    def test_matrix_free_matches_sparse(self):
        operator = assemble(self.terms, 4, 2, label='H')
        assert operator.is_matrix_free
        with pytest.raises(CapabilityError):
            operator.sparse()
        rng = np.random.default_rng(3)
        vector = rng.normal(size=8) + 1j * rng.normal(size=8)
        with override_settings(QED_SPARSE_DIMENSION_LIMIT=1024):
            reference = assemble(self.terms, 4, 2).sparse() @ vector
        np.testing.assert_allclose(operator.apply(vector), reference, atol=1e-12)


class TestSpectralHelpers(unittest.TestCase):
    """
    Commutators and extremal eigenvalues.
    """

    def test_commutator(self):
        result = commutator(OperatorMatrix(X), OperatorMatrix(Z))
        np.testing.assert_allclose(result.sparse().toarray(), X @ Z - Z @ X)
        assert commutator_norm(OperatorMatrix(X), OperatorMatrix(Z)) == pytest.approx(2.0)

    def test_commutator_norm_lanczos(self):
        # 128 x 128 takes the iterative branch.
        first = OperatorMatrix(embed(X, 0, 7, 2))
        second = OperatorMatrix(embed(Z, 0, 7, 2))
        assert commutator_norm(first, second) == pytest.approx(2.0, rel=1e-6)

    def test_commuting_pair_has_zero_norm(self):
        # X on the first and last qubit of seven: off-diagonal, commuting, iterative branch.
        first = OperatorMatrix(embed(X, 0, 7, 2))
        second = OperatorMatrix(embed(X, 6, 7, 2))
        assert not first.is_diagonal()
        assert commutator_norm(first, second) == 0.0
        assert commutator_norm(first, first) == 0.0

    def test_max_abs_difference(self):
        assert max_abs_difference(OperatorMatrix(X), OperatorMatrix(X)) == 0.0
        assert max_abs_difference(OperatorMatrix(X), OperatorMatrix(Z)) == pytest.approx(1.0)

    def test_lowest_eigenvalue(self):
        operator = OperatorMatrix(embed(Z, 2, 4, 2) + 0.5 * embed(X, 0, 4, 2))
        assert lowest_eigenvalue(operator) == pytest.approx(-1.5)
