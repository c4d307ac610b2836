"""
API methods driving resource estimates, verification, evolution and circuit export
"""
import logging

import attr
import numpy as np
from django.conf import settings

from coulombqed.apps.cli.circuit import emit, structural_counts
from coulombqed.apps.core.constants import NormMode
from coulombqed.apps.core.exceptions import ConfigurationError, VerificationFailure
from coulombqed.apps.encoding.gauge import make_field_grid
from coulombqed.apps.hamiltonian.operators import check_dense_capability
from coulombqed.apps.hamiltonian.params import HamiltonianParams
from coulombqed.apps.lattice.geometry import LatticeGeometry
from coulombqed.apps.resources.bounds import resource_estimate
from coulombqed.apps.resources.costs import gate_cost_report
from coulombqed.apps.resources.steps import commutator_constant, steps_for_constant
from coulombqed.apps.trotter.checks import charge_operator
from coulombqed.apps.trotter.evolution import StateVector, evolution_series
from coulombqed.apps.trotter.partition import partition, piece_operators
from coulombqed.apps.trotter.suite import verify_suite

from .data import (
    AUTO,
    CircuitData,
    EvolutionRecordData,
    EvolutionReportData,
    ResourceReportData,
    VerificationReportData,
)

logger = logging.getLogger(__name__)


def build_params(config):
    """
    HamiltonianParams for a configuration whose ``n_a`` is resolved.

    Raises ConfigurationError if ``n_a`` is still "auto".
    """
    if config.n_a == AUTO:
        raise ConfigurationError("n_a must be resolved before building the Hamiltonian")
    return HamiltonianParams(
        geometry=LatticeGeometry(config.dims),
        g=config.g,
        mass=config.mass,
        wilson=config.wilson,
        grid=make_field_grid(config.a_max, config.n_a),
        sector=config.sector,
        transverse_coupling=config.transverse_hi,
    )


def _norm_mode(config):
    return NormMode.NUMERIC if config.numeric_norms else NormMode.ASYMPTOTIC


def _estimate(config):
    volume = LatticeGeometry(config.dims).volume
    return resource_estimate(
        config.energy, volume, config.g, config.mass, config.wilson, config.epsilon, kappa=config.kappa,
    )


def _resolve(config, estimate=None):
    """
    Replace "auto" fields: n_a by the qubit-count bound, steps by the first-order step count.

    Returns the resolved config, the estimate and the commutator constant
    used for the steps (None when the steps were given).
    """
    if config.resolved and estimate is None:
        return config, None, None
    estimate = _estimate(config) if estimate is None else estimate
    if config.n_a == AUTO:
        config = attr.evolve(config, n_a=estimate.n_a)
        logger.info('COULOMBQED: resolved n_a=auto to %d', config.n_a)
    constant = commutator_constant(
        build_params(config), _norm_mode(config), a_max=estimate.a_max, pi_max=estimate.pi_max,
    )
    if config.steps == AUTO:
        # A run config always carries at least one step; at t = 0 it is the identity.
        config = attr.evolve(config, steps=max(1, steps_for_constant(constant, config.time, config.epsilon)))
        logger.info('COULOMBQED: resolved steps=auto to %d', config.steps)
    return config, estimate, constant


def estimate_resources(config):
    """
    Truncation bounds, qubit counts, the Trotter step count and the gate-cost breakdown.

    Raises DomainError for out of range inputs and CapabilityError if numeric
    norms are requested on a register above the dense limit.
    """
    estimate = _estimate(config)
    config, estimate, constant = _resolve(config, estimate)
    params = build_params(config)
    n_steps = steps_for_constant(constant, config.time, config.epsilon)
    try:
        plan = partition(params, n_steps=max(1, n_steps), time=config.time)
    except ConfigurationError as exc:
        logger.info('COULOMBQED: no structural gate counts for dims %s: %s', config.dims, exc)
        plan = None
    costs = gate_cost_report(params, config.n_a, plan)
    estimate = attr.evolve(estimate, n_steps=n_steps, commutator_constant=constant, gate_costs=costs.as_dict())
    return ResourceReportData(config=config, estimate=estimate, n_a=config.n_a, norm_mode=_norm_mode(config))


def run_verification(config, raise_on_failure=False):
    """
    Run the verification suite for a configuration.

    Raises VerificationFailure if ``raise_on_failure`` and any check fails.
    """
    config, _, _ = _resolve(config)
    params = build_params(config)
    report = verify_suite(params, fault=config.inject_fault, seed=config.seed, epsilon=config.epsilon, time=config.time)
    data = VerificationReportData(config=config, report=report)
    if raise_on_failure and not report.passed:
        raise VerificationFailure(data)
    return data


def run_evolution(config):
    """
    Trotterized evolution of a seeded random state against exact evolution.

    Raises CapabilityError above ``QED_DENSE_DIMENSION_LIMIT``.
    """
    config, _, _ = _resolve(config)
    params = build_params(config)
    check_dense_capability(params.layout.dimension, 'evolution')
    plan = partition(params, n_steps=config.steps, time=config.time)
    operators = piece_operators(plan)
    hamiltonian = operators[0]
    for operator in operators[1:]:
        hamiltonian = hamiltonian + operator
    seed = settings.QED_DEFAULT_SEED if config.seed is None else config.seed
    state = StateVector.random(params.layout.dimension, np.random.default_rng(seed))
    charge = charge_operator(params) if params.has_fermion else None
    points = evolution_series(state, plan, hamiltonian, charge=charge, operators=operators)
    records = [EvolutionRecordData(**attr.asdict(point)) for point in points]
    return EvolutionReportData(config=config, n_steps=plan.n_steps, piece_count=plan.piece_count, records=records)


def emit_circuit(config):
    """
    Abstract circuit operations for every Trotter step of the configuration's plan.
    """
    config, _, _ = _resolve(config)
    plan = partition(build_params(config), n_steps=config.steps, time=config.time)
    return CircuitData(config=config, operations=emit(plan), counts=structural_counts(plan))
