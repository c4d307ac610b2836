"""
Weighted Pauli strings over a register of qubits.

Qubit 0 is the most significant bit of a basis-state index. Besides X, Y and Z a
factor may be ``+`` = (X + iY)/2 = |0><1| or ``-`` = (X - iY)/2 = |1><0|.
"""
import cmath
from collections import defaultdict

import attr
import numpy as np
import scipy.sparse as sp

PAULI_OPERATORS = ('X', 'Y', 'Z', '+', '-')
_ADJOINT = {'X': 'X', 'Y': 'Y', 'Z': 'Z', '+': '-', '-': '+'}
_LADDER_EXPANSION = {
    '+': (('X', 0.5), ('Y', 0.5j)),
    '-': (('X', 0.5), ('Y', -0.5j)),
}


def _check_factors(instance, attribute, value):
    indices = [index for index, _ in value]
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise ValueError(f"factor indices must be strictly increasing, got {indices}")
    for index, operator in value:
        if operator not in PAULI_OPERATORS or index < 0:
            raise ValueError(f"bad Pauli factor ({index}, {operator!r})")


def _check_coefficient(instance, attribute, value):
    if value == 0 or not cmath.isfinite(value):
        raise ValueError(f"coefficient must be finite and nonzero, got {value}")


@attr.s(frozen=True)
class PauliString:
    """
    coefficient * (tensor product of single-qubit factors).
    """
    coefficient = attr.ib(type=complex, converter=complex, validator=_check_coefficient)
    factors = attr.ib(converter=lambda factors: tuple(sorted((int(i), op) for i, op in factors)),
                      validator=_check_factors)

    @property
    def support(self):
        return tuple(index for index, _ in self.factors)

    def count(self, operator):
        return sum(1 for _, op in self.factors if op == operator)

    def adjoint(self):
        return PauliString(self.coefficient.conjugate(), [(i, _ADJOINT[op]) for i, op in self.factors])

    def expand(self):
        """
        Plain X/Y/Z strings as ``{((index, op), ...): coefficient}``.

        A string with k ladder factors expands into at most 2^k terms.
        """
        terms = {(): self.coefficient}
        for index, operator in self.factors:
            options = _LADDER_EXPANSION.get(operator, ((operator, 1.0),))
            expanded = defaultdict(complex)
            for label, coefficient in terms.items():
                for plain, weight in options:
                    expanded[label + ((index, plain),)] += coefficient * weight
            terms = expanded
        return {label: value for label, value in terms.items() if value != 0}

    def to_matrix(self, n_qubits):
        """Sparse 2^n x 2^n matrix of this string."""
        dimension = 2 ** n_qubits
        columns = np.arange(dimension)
        rows = columns.copy()
        values = np.full(dimension, self.coefficient, dtype=complex)
        for index, operator in self.factors:
            if index >= n_qubits:
                raise ValueError(f"qubit {index} outside a {n_qubits}-qubit register")
            mask = 1 << (n_qubits - 1 - index)
            bit = (columns & mask) != 0
            if operator == 'Z':
                values = values * np.where(bit, -1.0, 1.0)
                continue
            rows = rows ^ mask
            if operator == 'Y':
                values = values * np.where(bit, -1j, 1j)
            elif operator == '+':
                values = values * bit
            elif operator == '-':
                values = values * ~bit
        keep = values != 0
        return sp.csr_matrix((values[keep], (rows[keep], columns[keep])), shape=(dimension, dimension))


@attr.s(frozen=True)
class PauliSum:
    """
    A sum of ``PauliString`` terms.
    """
    terms = attr.ib(converter=tuple, factory=tuple)

    def __add__(self, other):
        return PauliSum(self.terms + other.terms)

    def adjoint(self):
        return PauliSum(term.adjoint() for term in self.terms)

    def scaled(self, factor):
        return PauliSum(
            PauliString(term.coefficient * factor, term.factors) for term in self.terms if term.coefficient * factor
        )

    def expand(self):
        merged = defaultdict(complex)
        for term in self.terms:
            for label, coefficient in term.expand().items():
                merged[label] += coefficient
        return {label: value for label, value in merged.items() if abs(value) > 1e-15}

    def to_matrix(self, n_qubits):
        dimension = 2 ** n_qubits
        total = sp.csr_matrix((dimension, dimension), dtype=complex)
        for term in self.terms:
            total = total + term.to_matrix(n_qubits)
        return total


def pauli_label(label):
    """Readable form of an expanded label, e.g. ``X0 Z1 Y2``; ``I`` for the identity."""
    return ' '.join(f'{op}{index}' for index, op in label) or 'I'
