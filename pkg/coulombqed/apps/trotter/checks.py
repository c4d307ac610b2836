"""
Numerical checks of the structural properties of the lattice Hamiltonian.
"""
import logging
import math

import attr
import numpy as np
import scipy.sparse as sp

from coulombqed.apps.encoding.fermion import current_density, occupations, total_charge
from coulombqed.apps.hamiltonian.builders import build_H_A, build_H_Pi
from coulombqed.apps.hamiltonian.kernels import gradient_configuration
from coulombqed.apps.hamiltonian.operators import OperatorMatrix, identity, max_abs_difference
from coulombqed.apps.lattice.geometry import momentum_modes
from coulombqed.apps.lattice.snake import SPINOR_COMPONENTS

from .evolution import StateVector, exact_evolve, trotter_evolve
from .partition import partition, piece_operators

logger = logging.getLogger(__name__)


def charge_operator(params):
    """Q = total fermion occupation on the combined register."""
    layout = params.layout
    charge = total_charge(params.path).sparse()
    return OperatorMatrix(sp.kron(identity(layout.gauge_dimension), charge, format='csr'), label='Q')


def charge_commutator(params, hamiltonian):
    """max |[H, Q]| entry."""
    charge = charge_operator(params)
    product = OperatorMatrix(hamiltonian.sparse() @ charge.sparse())
    reverse = OperatorMatrix(charge.sparse() @ hamiltonian.sparse())
    return max_abs_difference(product, reverse)


@attr.s(frozen=True)
class TrotterScaling:
    """
    Trotter errors at several step counts and the fitted log-log slope.

    ``errors`` are the state distances sqrt(1 - F); a first-order product
    formula gives a slope of -1.
    """
    steps = attr.ib(converter=tuple)
    fidelities = attr.ib(converter=tuple)
    errors = attr.ib(converter=tuple)
    slope = attr.ib(type=float)

    @property
    def scaled_errors(self):
        """error * N_t; approaches a constant for a first-order formula."""
        return tuple(error * steps for error, steps in zip(self.errors, self.steps))

    @property
    def doubling_ratios(self):
        scaled = self.scaled_errors
        return tuple(later / earlier for earlier, later in zip(scaled, scaled[1:]) if earlier > 0)


def trotter_error(state, hamiltonian, plan, operators=None):
    """Fidelity of the Trotterized state against exact evolution and the distance sqrt(1 - F)."""
    exact = exact_evolve(state, hamiltonian, plan.time)
    approximate = trotter_evolve(state, plan, operators)
    fidelity = min(1.0, exact.fidelity(approximate))
    return fidelity, math.sqrt(max(0.0, 1.0 - fidelity))


def trotter_slope(params, state, time, steps=(8, 16, 32, 64), plan=None, operators=None):
    """Measure Trotter errors at every step count and fit log(error) against log(N_t)."""
    plan = partition(params) if plan is None else plan
    operators = piece_operators(plan) if operators is None else operators
    hamiltonian = operators[0]
    for operator in operators[1:]:
        hamiltonian = hamiltonian + operator
    fidelities, errors = [], []
    for n_steps in steps:
        fidelity, error = trotter_error(state, hamiltonian, plan.with_steps(n_steps, time), operators)
        fidelities.append(fidelity)
        errors.append(error)
    errors_array = np.array(errors)
    if np.all(errors_array > 1e-13):
        slope = float(np.polyfit(np.log(steps), np.log(errors_array), 1)[0])
    else:
        slope = float('nan')
    logger.info('COULOMBQED: Trotter errors %s at steps %s, slope %.3f', errors, steps, slope)
    return TrotterScaling(steps=steps, fidelities=fidelities, errors=errors, slope=slope)


def charge_drift(params, state, time, n_steps, plan=None, operators=None):
    """
    Largest change of <Q> under exact and under Trotterized evolution.
    """
    plan = partition(params) if plan is None else plan
    operators = piece_operators(plan) if operators is None else operators
    hamiltonian = operators[0]
    for operator in operators[1:]:
        hamiltonian = hamiltonian + operator
    charge = charge_operator(params)
    initial = state.expectation(charge)
    exact = exact_evolve(state, hamiltonian, time)
    trotterized = trotter_evolve(state, plan.with_steps(n_steps, time), operators)
    return max(abs(exact.expectation(charge) - initial), abs(trotterized.expectation(charge) - initial))


@attr.s(frozen=True)
class TimelikeCurrentResult:
    """
    Pointwise margins n(x) - |j3(x)| on sampled occupation states and the
    momentum-resolved margins <|J0(p)|^2> - sum_j <|Jj(p)|^2>.
    """
    pointwise_margin = attr.ib(type=float)
    momentum_margin = attr.ib(type=float)
    samples = attr.ib(type=int)

    @property
    def passed(self):
        return self.pointwise_margin >= 0


def timelike_current_check(params, n_samples, rng):
    """
    Sample occupation basis states and test |<J0(x)>|^2 >= sum_j |<Jj(x)>|^2 at every site.

    On a basis state <J1> = <J2> = 0 and <J3> = g(-n1 + n2 + n3 - n4), so the
    pointwise margin is g^2 (n^2 - s^2). The momentum margins are informational.
    """
    path = params.path
    geom = params.geometry
    n_modes = path.n_modes
    states = rng.integers(0, 2 ** n_modes, size=n_samples)
    occupied = occupations(n_modes)[states]
    positions = np.array([
        [path.position(site, alpha) for alpha in range(SPINOR_COMPONENTS)] for site in range(geom.volume)
    ])
    per_site = occupied[:, positions]
    density = per_site.sum(axis=2)
    spin = -per_site[..., 0] + per_site[..., 1] + per_site[..., 2] - per_site[..., 3]
    pointwise = float(np.min(params.g ** 2 * (density ** 2 - spin ** 2))) if n_samples else 0.0

    currents = [
        [current_density(path, site, mu, g=params.g).sparse() for site in range(geom.volume)] for mu in range(4)
    ]
    coords = np.array(geom.sites())
    momentum_margin = math.inf
    for mode in momentum_modes(geom):
        phases = np.exp(-1j * coords @ mode.p)
        transformed = [sum(phase * current for phase, current in zip(phases, row)) for row in currents]
        for index in states:
            vector = np.zeros(2 ** n_modes, dtype=complex)
            vector[index] = 1.0
            norms = [float(np.linalg.norm(operator @ vector)) ** 2 for operator in transformed]
            momentum_margin = min(momentum_margin, norms[0] - sum(norms[1:]))
    if momentum_margin < 0:
        logger.info('COULOMBQED: momentum-resolved timelike margin %.3e is negative on a basis state', momentum_margin)
    return TimelikeCurrentResult(pointwise_margin=pointwise, momentum_margin=momentum_margin, samples=n_samples)


def _shift_levels(amplitudes, layout, shifts):
    tensor = amplitudes.reshape(layout.gauge_shape)
    for mode, shift in enumerate(shifts):
        if shift:
            tensor = np.roll(tensor, int(shift), axis=mode)
    return tensor.reshape(-1)


def longitudinal_invariance_check(params, rng):
    """
    Change of <H_A + H_Pi> when the field register is shifted by a pure-gradient offset.

    The state lives on interior levels and the offset moves each mode by at most
    one level, so no amplitude wraps around the grid. Needs a gauge-only
    ``params`` with n_A >= 2.
    """
    layout = params.layout
    levels = layout.levels
    interior = np.zeros(layout.gauge_shape[:-1])
    interior[tuple(slice(1, levels - 1) for _ in range(layout.n_gauge_modes))] = 1.0
    amplitudes = (rng.normal(size=interior.shape) + 1j * rng.normal(size=interior.shape)) * interior
    state = StateVector.normalized(amplitudes.reshape(-1))

    phi = rng.integers(0, 2, size=params.geometry.volume)
    shifts = np.rint(gradient_configuration(phi, params.geometry)).astype(int)
    shifted = StateVector(_shift_levels(state.amplitudes, layout, shifts))

    hamiltonian = build_H_A(params) + build_H_Pi(params)
    before = state.expectation(hamiltonian)
    after = shifted.expectation(hamiltonian)
    return abs(after - before)
