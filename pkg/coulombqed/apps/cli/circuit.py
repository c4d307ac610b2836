"""
Abstract circuit emission for a TrotterPlan.

Operations stop above gate synthesis: a diagonal phase or a Pauli exponential
is one operation no matter how many elementary gates it would need.
"""
import json

import attr
from django.conf import settings

from coulombqed.apps.encoding.pauli import pauli_label
from coulombqed.apps.hamiltonian.terms import DensityTerm
from coulombqed.apps.trotter.partition import ELECTRIC, MAGNETIC

DIAGONAL_PHASE = 'diagonal-phase'
FOURIER_BLOCK = 'fourier-block'
PAULI_EXPONENTIAL = 'pauli-exponential'


@attr.s(frozen=True)
class CircuitOperation:
    """
    One abstract operation tagged with the piece it implements.
    """
    step = attr.ib(type=int)
    piece = attr.ib(type=str)
    kind = attr.ib(type=str, validator=attr.validators.in_((DIAGONAL_PHASE, FOURIER_BLOCK, PAULI_EXPONENTIAL)))
    targets = attr.ib(converter=tuple)
    angle = attr.ib(default=None)
    phase_function = attr.ib(default=None)
    pauli = attr.ib(default=None)
    functional = attr.ib(default=None)
    inverse = attr.ib(type=bool, default=False)

    def as_dict(self):
        record = attr.asdict(self)
        record['targets'] = list(self.targets)
        if self.functional is not None:
            record['functional'] = [list(pair) for pair in self.functional]
        record['schema_version'] = settings.QED_REPORT_SCHEMA_VERSION
        return record


def _merge_expansions(params, piece):
    """Merge the expanded Pauli labels of every unit; scalar and field parts kept apart."""
    scalars, functionals = {}, {}
    for term in piece.terms:
        if isinstance(term, DensityTerm):
            expansion = term.expanded_pauli(params.path)
        else:
            expansion = term.expanded_pauli()
        for label, weight in expansion.items():
            if term.gauge_weights is None:
                scalars[label] = scalars.get(label, 0.0) + float(weight)
            else:
                functionals[label] = functionals.get(label, 0.0) + weight
    return scalars, functionals


def _fermion_operations(params, piece, step, dt):
    layout = params.layout
    scalars, functionals = _merge_expansions(params, piece)
    operations = []
    for label in sorted(scalars):
        weight = scalars[label]
        # Identity strings are global phases.
        if not label or abs(weight) <= 1e-14:
            continue
        operations.append(CircuitOperation(
            step=step, piece=piece.name, kind=PAULI_EXPONENTIAL,
            targets=[layout.fermion_qubit(index) for index, _ in label],
            angle=weight * dt, pauli=pauli_label(label),
        ))
    for label in sorted(functionals):
        weights = functionals[label]
        support = [(mode, float(weights[mode])) for mode in range(len(weights)) if abs(weights[mode]) > 1e-14]
        if not support:
            continue
        gauge_targets = [qubit for mode, _ in support for qubit in layout.gauge_qubit_indices(mode)]
        operations.append(CircuitOperation(
            step=step, piece=piece.name, kind=PAULI_EXPONENTIAL,
            targets=gauge_targets + [layout.fermion_qubit(index) for index, _ in label],
            angle=dt, pauli=pauli_label(label), phase_function='field-linear', functional=support,
        ))
    return operations


def piece_operations(plan, piece, step=0):
    """The operations implementing exp(-i H_piece dt) once."""
    params = plan.params
    if piece.empty:
        return []
    layout = params.layout
    gauge_qubits = list(range(layout.gauge_qubits))
    if piece.kind == ELECTRIC:
        return [
            CircuitOperation(step=step, piece=piece.name, kind=FOURIER_BLOCK, targets=gauge_qubits),
            CircuitOperation(
                step=step, piece=piece.name, kind=DIAGONAL_PHASE, targets=gauge_qubits,
                angle=plan.step, phase_function='H_Pi',
            ),
            CircuitOperation(step=step, piece=piece.name, kind=FOURIER_BLOCK, targets=gauge_qubits, inverse=True),
        ]
    if piece.kind == MAGNETIC:
        return [CircuitOperation(
            step=step, piece=piece.name, kind=DIAGONAL_PHASE, targets=gauge_qubits,
            angle=plan.step, phase_function='H_A',
        )]
    return _fermion_operations(params, piece, step, plan.step)


def structural_counts(plan):
    """Operations per Trotter step for every piece, in plan order."""
    return {piece.name: len(piece_operations(plan, piece)) for piece in plan.pieces}


def emit(plan):
    """Every operation of every Trotter step, steps outermost and pieces in plan order."""
    per_step = [piece_operations(plan, piece) for piece in plan.pieces]
    operations = []
    for step in range(plan.n_steps):
        for piece_ops in per_step:
            operations.extend(attr.evolve(operation, step=step) for operation in piece_ops)
    return operations


def to_json_lines(operations):
    return '\n'.join(json.dumps(operation.as_dict(), sort_keys=True) for operation in operations)
