"""
Split the Hamiltonian into pieces whose terms mutually commute.

The order is fixed: H_Pi, H_A, even bonds by axis and spinor-pair class, odd
bonds the same way, then the three on-site classes. An axis of extent one has
no bonds; an odd extent of three or more cannot be split into commuting even
and odd bond sets and is rejected.
"""
import logging

import attr
import scipy.sparse as sp

from coulombqed.apps.core.exceptions import ConfigurationError, PartitionError
from coulombqed.apps.hamiltonian.builders import (
    assemble_terms,
    build_H_A,
    build_H_Pi,
    build_pieces,
    density_terms,
    fermion_terms,
)
from coulombqed.apps.hamiltonian.operators import OperatorMatrix, max_abs_difference
from coulombqed.apps.hamiltonian.terms import PAIR_CLASSES, DensityTerm
from coulombqed.apps.lattice.geometry import AXIS_NAMES

logger = logging.getLogger(__name__)

ELECTRIC = 'electric'
MAGNETIC = 'magnetic'
HOP = 'hop'
ONSITE = 'onsite'
PARITIES = ('even', 'odd')


@attr.s(frozen=True)
class PieceDescriptor:
    """
    One Trotter piece: its kind, position in the lattice classification and its terms.
    """
    kind = attr.ib(type=str, validator=attr.validators.in_((ELECTRIC, MAGNETIC, HOP, ONSITE)))
    axis = attr.ib(default=None)
    parity = attr.ib(default=None)
    pair_class = attr.ib(default=None)
    terms = attr.ib(converter=tuple, factory=tuple, eq=False, repr=False)
    empty = attr.ib(type=bool, default=False)

    @property
    def name(self):
        if self.kind == ELECTRIC:
            return 'H_Pi'
        if self.kind == MAGNETIC:
            return 'H_A'
        if self.kind == HOP:
            return f'hop_{self.parity}_{AXIS_NAMES[self.axis]}_{self.pair_class}'
        return f'onsite_{self.pair_class}'

    @property
    def term_count(self):
        return len(self.terms)

    @property
    def key(self):
        return (self.kind, self.axis, self.parity, self.pair_class)


@attr.s(frozen=True)
class TrotterPlan:
    """
    Ordered pieces plus the step count N_t and the total time t.
    """
    params = attr.ib()
    pieces = attr.ib(converter=tuple)
    n_steps = attr.ib(type=int, default=1)
    time = attr.ib(type=float, converter=float, default=0.0)

    @n_steps.validator
    def _check_steps(self, attribute, value):
        if int(value) != value or value < 1:
            raise ConfigurationError(f"n_steps must be a positive integer, got {value}")

    @property
    def step(self):
        return self.time / self.n_steps

    @property
    def piece_count(self):
        return len(self.pieces)

    @property
    def empty_pieces(self):
        return [piece for piece in self.pieces if piece.empty]

    def with_steps(self, n_steps, time):
        return attr.evolve(self, n_steps=n_steps, time=time)

    def piece(self, name):
        for piece in self.pieces:
            if piece.name == name:
                return piece
        raise KeyError(name)


def _check_extents(geom):
    for axis in geom.active_axes:
        extent = geom.dims[axis]
        if extent % 2:
            raise ConfigurationError(
                f"axis {AXIS_NAMES[axis]} has odd extent {extent}; even/odd bond classes need an even extent"
            )


def _classify(term):
    if term.kind == HOP:
        return (HOP, term.axis, term.parity, term.pair_class)
    return (ONSITE, None, None, term.pair_class)


def partition(params, n_steps=1, time=0.0):
    """
    Build the TrotterPlan for ``params``.

    Raises ConfigurationError for odd extents >= 3 and PartitionError for a
    term that matches no class.
    """
    geom = params.geometry
    _check_extents(geom)
    keys = [(ELECTRIC, None, None, None), (MAGNETIC, None, None, None)]
    for parity in PARITIES:
        for axis in geom.active_axes:
            keys.extend((HOP, axis, parity, pair) for pair in PAIR_CLASSES)
    keys.extend((ONSITE, None, None, pair) for pair in PAIR_CLASSES)

    grouped = {key: [] for key in keys}
    for term in fermion_terms(params) + density_terms(params):
        key = _classify(term)
        if key not in grouped:
            raise PartitionError(f"term {term.label} matches no Trotter piece")
        grouped[key].append(term)

    pieces = []
    for key in keys:
        kind, axis, parity, pair = key
        if kind in (ELECTRIC, MAGNETIC):
            empty = not params.has_gauge
        else:
            empty = not grouped[key]
        pieces.append(PieceDescriptor(kind, axis, parity, pair, terms=grouped[key], empty=empty))

    plan = TrotterPlan(params=params, pieces=pieces, n_steps=n_steps, time=time)
    logger.info(
        'COULOMBQED: partitioned dims %s into %d pieces (%d empty, %d active axes)',
        geom.dims, plan.piece_count, len(plan.empty_pieces), len(geom.active_axes),
    )
    for piece in plan.empty_pieces:
        logger.info('COULOMBQED: piece %s holds no terms and acts as the identity', piece.name)
    return plan


def piece_operator(params, piece):
    """The piece as an OperatorMatrix on the full register."""
    if piece.kind == ELECTRIC:
        return build_H_Pi(params).with_label(piece.name)
    if piece.kind == MAGNETIC:
        return build_H_A(params).with_label(piece.name)
    return assemble_terms(params, piece.terms, piece.name)


def piece_operators(plan):
    return [piece_operator(plan.params, piece) for piece in plan.pieces]


def _unit_components(term, params):
    layout = params.layout
    if isinstance(term, DensityTerm):
        return [sp.diags(term.diagonal(params.path, layout.n_fermion_modes).astype(complex), format='csr')]
    return [matrix for _, matrix in term.fermion_components(layout.n_fermion_modes)]


def audit_commutation(plan):
    """
    Largest commutator entry between distinct terms of every fermionic piece.

    Field factors are diagonal in the field basis and commute among
    themselves, so the audit compares the fermion-register factors of every
    pair of units.
    """
    results = {}
    for piece in plan.pieces:
        if piece.kind in (ELECTRIC, MAGNETIC) or piece.empty:
            continue
        components = [_unit_components(term, plan.params) for term in piece.terms]
        worst = 0.0
        for first in range(len(components)):
            for second in range(first + 1, len(components)):
                for a in components[first]:
                    for b in components[second]:
                        commutator = a @ b - b @ a
                        if commutator.nnz:
                            worst = max(worst, float(abs(commutator).max()))
        results[piece.name] = worst
    return results


def check_completeness(plan, pieces=None, operators=None):
    """
    max |sum of piece operators - H_total| over all entries.

    ``pieces`` is a HamiltonianPieces for the same params; ``operators`` the
    precomputed piece operators.
    """
    pieces = build_pieces(plan.params) if pieces is None else pieces
    operators = piece_operators(plan) if operators is None else operators
    total = OperatorMatrix.zeros(plan.params.layout.dimension)
    for operator in operators:
        total = total + operator
    return max_abs_difference(total, pieces.total())


def pieces_commute(first, second):
    """True when both operators are diagonal (and so commute exactly)."""
    return first.is_diagonal() and second.is_diagonal()

