"""
Term-level form of the fermionic part of the Hamiltonian.

H_f, H_I and H_C are stored as lists of Hermitian units so that assembly,
the Trotter partition and circuit emission all read the same terms.
"""
import attr
import numpy as np

from coulombqed.apps.core.exceptions import PartitionError
from coulombqed.apps.encoding.fermion import FermionModeIndex, bilinear, site_charges
from coulombqed.apps.hamiltonian.operators import KronTerm

PAIR_CLASSES = ('11', '12', '13')
_PAIR_CLASS_OF = {
    (0, 1): '12', (2, 3): '12',
    (0, 2): '13', (1, 3): '13',
}


def pair_class(alpha, beta):
    """
    Spinor-pair class of a bilinear psi^dagger_alpha psi_beta.

    Raises PartitionError for pairs outside the three commuting classes.
    """
    if alpha == beta:
        return '11'
    try:
        return _PAIR_CLASS_OF[tuple(sorted((alpha, beta)))]
    except KeyError as exc:
        raise PartitionError(f"spinor pair ({alpha}, {beta}) belongs to no Trotter class") from exc


@attr.s(frozen=True, eq=False)
class FermionTerm:
    """
    One Hermitian unit ``c psi^dagger_a psi_b + h.c.`` (or ``c n_a`` when a == b).

    With ``gauge_weights`` set, ``c`` is replaced by the field functional
    ``sum_m w_m A_m`` and the Hermitian conjugate carries ``w^*``.
    """
    source = attr.ib(type=str)
    kind = attr.ib(type=str, validator=attr.validators.in_(('hop', 'onsite')))
    mode_a = attr.ib(type=FermionModeIndex)
    mode_b = attr.ib(type=FermionModeIndex)
    coefficient = attr.ib(type=complex, converter=complex, default=1.0)
    gauge_weights = attr.ib(default=None)
    axis = attr.ib(default=None)
    parity = attr.ib(default=None)

    @property
    def pair_class(self):
        return pair_class(self.mode_a.alpha, self.mode_b.alpha)

    @property
    def is_number(self):
        return self.mode_a.position == self.mode_b.position

    @property
    def is_diagonal(self):
        return self.is_number

    @property
    def label(self):
        a, b = self.mode_a, self.mode_b
        return f'{self.source}:{a.site}.{a.alpha}-{b.site}.{b.alpha}'

    def fermion_components(self, n_modes):
        """
        ``[(weight, matrix), ...]`` whose weighted sum is this unit.

        ``weight`` is a complex scalar for field-free units and a gauge
        weight vector otherwise.
        """
        forward = bilinear(self.mode_a, self.mode_b, n_modes).to_matrix(n_modes)
        if self.is_number:
            weight = self.coefficient.real if self.gauge_weights is None else np.real(self.gauge_weights)
            return [(weight, forward)]
        backward = bilinear(self.mode_b, self.mode_a, n_modes).to_matrix(n_modes)
        if self.gauge_weights is None:
            return [(self.coefficient, forward), (self.coefficient.conjugate(), backward)]
        return [(self.gauge_weights, forward), (np.conj(self.gauge_weights), backward)]

    def kron_terms(self, n_modes, configurations=None):
        """Kronecker terms on the combined register; ``configurations`` from ``field_configurations``."""
        terms = []
        for weight, matrix in self.fermion_components(n_modes):
            if self.gauge_weights is None:
                terms.append(KronTerm(gauge=None, fermion=weight * matrix))
            else:
                terms.append(KronTerm(gauge=configurations @ weight, fermion=matrix))
        return terms

    def fermion_matrix(self, n_modes):
        """The unit on the fermion register alone; only for field-free units."""
        if self.gauge_weights is not None:
            raise ValueError(f"{self.label} depends on the gauge field")
        components = self.fermion_components(n_modes)
        return sum(weight * matrix for weight, matrix in components)

    def expanded_pauli(self):
        """
        ``{plain Pauli label: weight}`` of the expanded unit.

        Weights are real scalars for field-free units and real gauge weight
        vectors otherwise. Qubit indices are JW positions.
        """
        forward = bilinear(self.mode_a, self.mode_b, _modes_needed(self)).expand()
        if self.is_number:
            pairs = [(forward, self.coefficient.real if self.gauge_weights is None else np.real(self.gauge_weights))]
        else:
            backward = bilinear(self.mode_b, self.mode_a, _modes_needed(self)).expand()
            if self.gauge_weights is None:
                pairs = [(forward, self.coefficient), (backward, self.coefficient.conjugate())]
            else:
                pairs = [(forward, self.gauge_weights), (backward, np.conj(self.gauge_weights))]
        combined = {}
        for expansion, weight in pairs:
            for label, value in expansion.items():
                combined[label] = combined.get(label, 0) + value * weight
        # Imaginary parts cancel between a unit and its Hermitian conjugate.
        result = {}
        for label, weight in combined.items():
            weight = np.real(weight)
            if np.any(np.abs(weight) > 1e-14):
                result[label] = weight
        return result


def _modes_needed(term):
    return max(term.mode_a.position, term.mode_b.position) + 1


@attr.s(frozen=True)
class DensityTerm:
    """``coefficient * rho(x) rho(y)`` with rho the site occupation number."""
    site_x = attr.ib(type=int)
    site_y = attr.ib(type=int)
    coefficient = attr.ib(type=float, converter=float)

    source = 'H_C'
    kind = 'onsite'
    axis = None
    parity = None
    pair_class = '11'
    is_diagonal = True
    gauge_weights = None

    @property
    def label(self):
        return f'H_C:{self.site_x}-{self.site_y}'

    def diagonal(self, path, n_modes):
        charges = site_charges(path, n_modes)
        return self.coefficient * charges[:, self.site_x] * charges[:, self.site_y]

    def kron_terms(self, path, n_modes):
        return [KronTerm(gauge=None, fermion=self.diagonal(path, n_modes).astype(complex))]

    def expanded_pauli(self, path):
        """rho(x) rho(y) written as Z and ZZ strings over JW positions."""
        result = {}

        def add(label, value):
            key = tuple(sorted(label))
            result[key] = result.get(key, 0.0) + value

        # n = (1 - Z) / 2 for every mode of both sites.
        for alpha in range(4):
            for beta in range(4):
                la, lb = path.position(self.site_x, alpha), path.position(self.site_y, beta)
                weight = self.coefficient / 4.0
                add((), weight)
                add(((la, 'Z'),), -weight)
                add(((lb, 'Z'),), -weight)
                add(((la, 'Z'), (lb, 'Z')), weight)
        return {label: value for label, value in result.items() if abs(value) > 1e-14}
