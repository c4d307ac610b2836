"""
State vectors and their exact or first-order Trotterized time evolution.
"""
import logging

import attr
import numpy as np
from django.conf import settings
from scipy.sparse.linalg import expm_multiply

from coulombqed.apps.core.exceptions import DomainError
from coulombqed.apps.encoding.gauge import centered_dft
from coulombqed.apps.hamiltonian.builders import electric_diagonal
from coulombqed.apps.hamiltonian.operators import check_dense_capability

from .partition import ELECTRIC, piece_operator

logger = logging.getLogger(__name__)


@attr.s(frozen=True, eq=False)
class StateVector:
    """
    Complex amplitudes over the computational basis of the combined register.
    """
    amplitudes = attr.ib(converter=lambda values: np.asarray(values, dtype=complex))

    @property
    def dimension(self):
        return self.amplitudes.shape[0]

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    @classmethod
    def normalized(cls, amplitudes):
        amplitudes = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise DomainError("cannot normalize the zero vector")
        return cls(amplitudes / norm)

    @classmethod
    def basis(cls, dimension, index):
        amplitudes = np.zeros(dimension, dtype=complex)
        amplitudes[index] = 1.0
        return cls(amplitudes)

    @classmethod
    def random(cls, dimension, rng):
        return cls.normalized(rng.normal(size=dimension) + 1j * rng.normal(size=dimension))

    def check_normalized(self, tolerance=None):
        tolerance = settings.QED_IDENTITY_TOLERANCE if tolerance is None else tolerance
        if abs(self.norm - 1.0) > tolerance:
            raise DomainError(f"state has norm {self.norm}, expected 1")

    def overlap(self, other):
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other):
        """|<self|other>|^2."""
        return abs(self.overlap(other)) ** 2

    def expectation(self, operator):
        return operator.expectation(self.amplitudes).real


def exact_evolve(state, hamiltonian, time):
    """
    exp(-i H t) |state> by Krylov action of the sparse exponential.

    Raises CapabilityError above ``QED_DENSE_DIMENSION_LIMIT``.
    """
    check_dense_capability(hamiltonian.dimension, 'exact evolution')
    if time == 0:
        return StateVector(state.amplitudes.copy())
    logger.debug('COULOMBQED: exact evolution to t=%s at dimension %d', time, hamiltonian.dimension)
    return StateVector(expm_multiply(-1j * time * hamiltonian.sparse(), state.amplitudes))


def _apply_local(tensor, matrix, n_modes):
    for axis in range(n_modes):
        tensor = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [axis])), 0, axis)
    return tensor


def _electric_propagator(params, step):
    """exp(-i H_Pi dt): local DFT on every gauge register, conjugate-basis phases, inverse DFT."""
    layout = params.layout
    fourier = centered_dft(layout.n_a)
    inverse = fourier.conj().T
    shape = layout.gauge_shape
    phases = np.exp(-1j * step * electric_diagonal(params)).reshape(shape[:-1] + (1,))

    def apply(vector):
        tensor = _apply_local(vector.reshape(shape), fourier, layout.n_gauge_modes)
        tensor = _apply_local(tensor * phases, inverse, layout.n_gauge_modes)
        return tensor.reshape(-1)

    return apply


def _operator_propagator(operator, step):
    if operator.is_diagonal():
        phases = np.exp(-1j * step * operator.diagonal())
        return lambda vector: phases * vector
    matrix = -1j * step * operator.sparse()
    return lambda vector: expm_multiply(matrix, vector)


def piece_propagators(plan, operators=None):
    """
    One callable per non-empty piece applying exp(-i H_piece dt).

    Field-diagonal and occupation-diagonal pieces are pure phases; H_Pi is
    diagonalized by the local Fourier transform; the rest use the Krylov action.
    """
    params = plan.params
    propagators = []
    for index, piece in enumerate(plan.pieces):
        if piece.empty:
            continue
        if piece.kind == ELECTRIC:
            propagators.append(_electric_propagator(params, plan.step))
            continue
        operator = operators[index] if operators is not None else piece_operator(params, piece)
        propagators.append(_operator_propagator(operator, plan.step))
    return propagators


def trotter_evolve(state, plan, operators=None):
    """
    Apply (prod_i exp(-i H_i dt))^N_t in plan order.

    Raises CapabilityError above ``QED_DENSE_DIMENSION_LIMIT``.
    """
    check_dense_capability(plan.params.layout.dimension, 'Trotter evolution')
    vector = state.amplitudes.copy()
    if plan.time == 0:
        return StateVector(vector)
    propagators = piece_propagators(plan, operators)
    for _ in range(plan.n_steps):
        for propagate in propagators:
            vector = propagate(vector)
    return StateVector(vector)


def truncation_fidelity(state, grids, a_cut, fermion_dimension=1):
    """
    Probability weight of ``state`` with every gauge mode inside [-a_cut, a_cut].

    ``grids`` lists the field grid of each gauge register in register order.
    Raises DomainError when a_cut exceeds a grid's span.
    """
    grids = list(grids)
    probabilities = np.abs(state.amplitudes) ** 2
    shape = tuple(grid.levels for grid in grids) + (fermion_dimension,)
    weights = probabilities.reshape(shape)
    for axis, grid in enumerate(grids):
        mask = np.zeros(grid.levels)
        mask[grid.window(a_cut)] = 1.0
        weights = weights * mask.reshape((1,) * axis + (grid.levels,) + (1,) * (len(shape) - axis - 1))
    return float(weights.sum())


@attr.s(frozen=True)
class EvolutionPoint:
    """
    The Trotterized state after ``step`` steps compared with exact evolution to the same time.
    """
    step = attr.ib(type=int)
    time = attr.ib(type=float)
    fidelity = attr.ib(type=float)
    energy = attr.ib(type=float)
    exact_energy = attr.ib(type=float)
    charge = attr.ib(default=None)


def evolution_series(state, plan, hamiltonian, charge=None, operators=None):
    """
    One EvolutionPoint per Trotter step, starting with the initial state.

    ``charge`` is an optional OperatorMatrix whose expectation is recorded on
    the Trotterized state. A zero evolution time gives the initial point only.
    """
    check_dense_capability(plan.params.layout.dimension, 'Trotter evolution')
    state.check_normalized()

    def point(step, trotterized, exact):
        return EvolutionPoint(
            step=step,
            time=step * plan.step,
            fidelity=min(1.0, exact.fidelity(trotterized)),
            energy=trotterized.expectation(hamiltonian),
            exact_energy=exact.expectation(hamiltonian),
            charge=trotterized.expectation(charge) if charge is not None else None,
        )

    points = [point(0, state, state)]
    if plan.time == 0:
        return points
    propagators = piece_propagators(plan, operators)
    vector = state.amplitudes.copy()
    exact = state
    for step in range(1, plan.n_steps + 1):
        for propagate in propagators:
            vector = propagate(vector)
        exact = exact_evolve(exact, hamiltonian, plan.step)
        points.append(point(step, StateVector(vector), exact))
    logger.debug('COULOMBQED: evolved %d steps, final fidelity %.12f', plan.n_steps, points[-1].fidelity)
    return points
