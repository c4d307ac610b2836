"""
The verification suite: structural properties of the lattice Hamiltonian
checked by exact numerics on a small instance.
"""
import logging
import math

import attr
import numpy as np
import scipy.sparse as sp
from django.conf import settings

from coulombqed.apps.core.constants import CheckStatus, NormMode, Sector
from coulombqed.apps.core.exceptions import CapabilityError, DomainError
from coulombqed.apps.encoding.gauge import make_field_grid, oscillator_hamiltonian
from coulombqed.apps.hamiltonian.builders import (
    build_H_A,
    build_H_f,
    build_H_I,
    build_H_Pi,
    build_H_Pi_coulomb,
    build_H_Pi_fourier,
    build_HA_HI_momentum,
    build_pieces,
    hop_terms,
    magnetic_diagonal,
    magnetic_momentum_diagonal,
    mass_terms,
)
from coulombqed.apps.hamiltonian.dispersion import (
    dispersion,
    dispersion_spectrum,
    energy_bound_squared,
    many_body_spectrum,
    shift_constant,
    single_particle_hamiltonian,
)
from coulombqed.apps.hamiltonian.kernels import (
    electric_kernel_position,
    gradient_configuration,
    magnetic_energy,
    transverse_projector,
)
from coulombqed.apps.hamiltonian.operators import (
    OperatorMatrix,
    check_dense_capability,
    identity,
    lowest_eigenvalue,
    max_abs_difference,
)
from coulombqed.apps.lattice.geometry import LatticeGeometry, difference_symbol
from coulombqed.apps.resources.chebyshev import chebyshev_verifier, field_cutoff
from coulombqed.apps.resources.steps import commutator_constant

from .checks import (
    charge_commutator,
    charge_drift,
    longitudinal_invariance_check,
    timelike_current_check,
    trotter_slope,
)
from .evolution import StateVector, truncation_fidelity
from .partition import audit_commutation, check_completeness, partition, piece_operators

logger = logging.getLogger(__name__)

HERMITICITY_FAULT = 'hermiticity'
FAULTS = (HERMITICITY_FAULT,)

FERMION_CHECKS = ('dispersion', 'charge_conservation', 'timelike_current')
GAUGE_CHECKS = ('transversality', 'dual_construction', 'longitudinal_invariance')


@attr.s(frozen=True)
class CheckResult:
    """
    Outcome of one verification check.

    ``value`` is the measured quantity compared against ``tolerance``;
    ``details`` holds informational numbers that do not gate the outcome.
    """
    name = attr.ib(type=str)
    status = attr.ib(type=str)
    value = attr.ib(default=None)
    tolerance = attr.ib(default=None)
    details = attr.ib(factory=dict)

    @property
    def passed(self):
        return self.status != CheckStatus.FAILED

    def as_dict(self):
        return attr.asdict(self)


@attr.s(frozen=True)
class SuiteReport:
    """
    Every check run for one set of Hamiltonian parameters.
    """
    dims = attr.ib(converter=tuple)
    sector = attr.ib(type=str)
    checks = attr.ib(converter=tuple)
    fault = attr.ib(default=None)
    seed = attr.ib(default=None)

    @property
    def failed_checks(self):
        return [check for check in self.checks if check.status == CheckStatus.FAILED]

    @property
    def passed(self):
        return not self.failed_checks

    def check(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def as_dict(self):
        return {
            'dims': list(self.dims),
            'sector': self.sector,
            'fault': self.fault,
            'seed': self.seed,
            'passed': self.passed,
            'failed': [check.name for check in self.failed_checks],
            'checks': [check.as_dict() for check in self.checks],
        }


def _status(ok):
    return CheckStatus.PASSED if ok else CheckStatus.FAILED


def _result(name, value, tolerance, ok=None, **details):
    if ok is None:
        ok = value <= tolerance
    return CheckResult(name=name, status=_status(ok), value=value, tolerance=tolerance, details=details)


def _skipped(name, reason):
    logger.info('COULOMBQED: skipping check %s: %s', name, reason)
    return CheckResult(name=name, status=CheckStatus.SKIPPED, details={'reason': reason})


def _inject_hermiticity_fault(operator):
    """Add i (|0><1| + |1><0|) * 1e-3, an anti-Hermitian perturbation."""
    dimension = operator.dimension
    perturbation = sp.csr_matrix(([1e-3j, 1e-3j], ([0, 1], [1, 0])), shape=(dimension, dimension))
    return OperatorMatrix(operator.sparse() + perturbation, hermitian=False, label=operator.label)


class _Context:
    """Objects shared between checks of one suite run."""

    def __init__(self, params, seed, epsilon, time, steps, charge_time, samples):
        self.params = params
        self.rng = np.random.default_rng(seed)
        self.epsilon = epsilon
        self.time = time
        self.steps = tuple(steps)
        self.charge_time = charge_time
        self.samples = samples
        self._plan = None
        self._operators = None

    @property
    def plan(self):
        if self._plan is None:
            self._plan = partition(self.params)
        return self._plan

    @property
    def operators(self):
        if self._operators is None:
            self._operators = piece_operators(self.plan)
        return self._operators

    @property
    def gauge_params(self):
        return attr.evolve(self.params, sector=Sector.GAUGE)

    @property
    def fermion_params(self):
        return attr.evolve(self.params, sector=Sector.FERMION)

    def random_state(self):
        return StateVector.random(self.params.layout.dimension, self.rng)


def check_hermiticity(context, fault=None):
    operators = list(context.operators)
    if fault == HERMITICITY_FAULT:
        target = next(index for index, piece in enumerate(context.plan.pieces) if not piece.empty)
        operators[target] = _inject_hermiticity_fault(operators[target])
        logger.warning('COULOMBQED: injected a Hermiticity fault into piece %s', context.plan.pieces[target].name)
    defects = {
        piece.name: operator.hermiticity_defect()
        for piece, operator in zip(context.plan.pieces, operators) if not piece.empty
    }
    worst = max(defects.values(), default=0.0)
    return _result('hermiticity', worst, settings.QED_HERMITICITY_TOLERANCE, pieces=defects)


def check_psd_after_shift(context):
    """Minimum eigenvalues of H_f + shift and of H_Pi + H_A, each on its own register."""
    params = context.params
    tolerance = settings.QED_PSD_TOLERANCE
    minima = {}
    if params.has_fermion:
        fermion = context.fermion_params
        shift = shift_constant(params.geometry.volume, params.mass, params.wilson)
        shifted = build_H_f(fermion) + OperatorMatrix(shift * identity(fermion.layout.dimension))
        minima['fermion'] = lowest_eigenvalue(shifted)
    if params.has_gauge:
        gauge = context.gauge_params
        minima['gauge'] = lowest_eigenvalue(build_H_Pi(gauge) + build_H_A(gauge))
    worst = min(minima.values())
    return _result('psd_after_shift', -worst, tolerance, minima=minima)


def check_dispersion(context):
    """
    Single-particle eigenvalues against +-E_p, the many-body spectrum against
    subset sums when the register is small, and the bound on E_p^2.
    """
    params = context.params
    geom = params.geometry
    fermion = context.fermion_params
    single = single_particle_hamiltonian(hop_terms(fermion) + mass_terms(fermion), geom.volume)
    expected = dispersion_spectrum(geom, params.mass, params.wilson)
    difference = float(np.max(np.abs(np.linalg.eigvalsh(single) - expected)))
    details = {'single_particle_difference': difference}
    if fermion.layout.n_fermion_modes <= 8:
        many_body = np.linalg.eigvalsh(build_H_f(fermion).dense())
        many_body_difference = float(np.max(np.abs(many_body - many_body_spectrum(expected))))
        details['many_body_difference'] = many_body_difference
        difference = max(difference, many_body_difference)
    momenta = context.rng.uniform(-math.pi, math.pi, size=(1000, 3))
    largest = max(dispersion(p, params.mass, params.wilson) ** 2 for p in momenta)
    bound = energy_bound_squared(params.mass, params.wilson)
    details.update(largest_energy_squared=largest, energy_bound_squared=bound)
    return _result(
        'dispersion', difference, settings.QED_IDENTITY_TOLERANCE,
        ok=difference <= settings.QED_IDENTITY_TOLERANCE and largest <= bound, **details
    )


# The projector needs two active axes to be tested at all.
PROJECTOR_DIMS = (2, 2, 1)


def projector_defect(geom):
    """max |P D| and |P P - P| over the nonzero momentum modes of ``geom``."""
    worst = 0.0
    for mode in geom.momentum_modes()[1:]:
        projector = transverse_projector(mode)
        worst = max(
            worst,
            float(np.max(np.abs(projector @ difference_symbol(mode)))),
            float(np.max(np.abs(projector @ projector - projector))),
        )
    return worst


def _gradient_energy(context, geom, samples):
    configurations = np.array([
        gradient_configuration(context.rng.normal(size=geom.volume), geom) for _ in range(samples)
    ])
    return float(np.max(np.abs(magnetic_energy(configurations, geom))))


def check_transversality(context, samples=50):
    """
    The classical magnetic energy vanishes on pure-gradient field configurations,
    and the momentum-space projector annihilates the difference symbol.

    Both are also evaluated on a 2x2x1 lattice when the instance has fewer
    than two active axes.
    """
    geometries = [context.params.geometry]
    if len(context.params.geometry.active_axes) < 2:
        geometries.append(LatticeGeometry(PROJECTOR_DIMS))
    gradient = max(_gradient_energy(context, geom, samples) for geom in geometries)
    projector = max(projector_defect(geom) for geom in geometries)
    return _result(
        'transversality', max(gradient, projector), settings.QED_IDENTITY_TOLERANCE,
        samples=samples, gradient=gradient, projector=projector, projector_dims=list(geometries[-1].dims),
    )


def check_charge_conservation(context):
    """[H, Q] = 0 and <Q> stays put under exact and Trotterized evolution."""
    params = context.params
    hamiltonian = build_pieces(params).total()
    commutator = charge_commutator(params, hamiltonian)
    tolerance = settings.QED_IDENTITY_TOLERANCE
    details = {'commutator': commutator}
    drift = 0.0
    try:
        n_steps = max(1, int(math.ceil(10 * context.charge_time)))
        drift = charge_drift(
            params, context.random_state(), context.charge_time, n_steps,
            plan=context.plan, operators=context.operators,
        )
        details['drift'] = drift
    except CapabilityError as exc:
        details['drift_skipped'] = str(exc)
    return _result(
        'charge_conservation', commutator, tolerance, ok=commutator <= tolerance and drift <= 1e-8, **details
    )


def check_chebyshev(context):
    """
    Single-mode oscillator surrogate: the tail bound and the truncation
    fidelity at the Chebyshev field cutoff, with kappa = sqrt(3 V / epsilon).
    """
    volume = context.params.geometry.volume
    budget = context.epsilon / (3.0 * volume)
    kappa = math.sqrt(1.0 / budget)
    grid = make_field_grid(6.0, 6)
    oscillator = oscillator_hamiltonian(grid, 1.0)
    _, vectors = np.linalg.eigh(oscillator.dense())
    state = StateVector(vectors[:, 0])
    field = OperatorMatrix.diagonal_of(grid.values, label='A')
    result = chebyshev_verifier(state, field, kappa)
    cutoff = min(field_cutoff(state, field, kappa), grid.a_max)
    fidelity = truncation_fidelity(state, [grid], cutoff)
    ok = result.passed and result.probability < budget and fidelity >= 1.0 - budget
    return _result(
        'chebyshev', result.probability, budget, ok=ok,
        kappa=kappa, mean=result.mean, std=result.std, rms=result.rms, cutoff=cutoff, truncation_fidelity=fidelity,
    )


def check_dual_construction(context):
    """
    Independent builds that must agree: H_Pi from the momentum and position
    kernels and through the Fourier basis, H_A from the classical functional
    and the kernel, and the completed square of H_A + H_I.
    """
    params = context.params
    tolerance = settings.QED_IDENTITY_TOLERANCE
    primary = build_H_Pi(params)
    differences = {
        'H_Pi_position': max_abs_difference(
            build_H_Pi(params, kernel=electric_kernel_position(params.geometry)), primary,
        ),
        'H_A_kernel': float(np.max(np.abs(magnetic_diagonal(params) - magnetic_momentum_diagonal(params)))),
    }
    gauge = context.gauge_params
    try:
        differences['H_Pi_fourier'] = max_abs_difference(build_H_Pi_fourier(gauge), build_H_Pi(gauge))
    except CapabilityError as exc:
        logger.info('COULOMBQED: Fourier-basis H_Pi comparison skipped: %s', exc)
    square = build_HA_HI_momentum(params)
    differences['completed_square'] = max_abs_difference(square.total, build_H_A(params) + build_H_I(params))
    _, coulomb_difference = build_H_Pi_coulomb(gauge)
    worst = max(differences.values())
    return _result(
        'dual_construction', worst, tolerance, differences=differences, coulomb_kernel_difference=coulomb_difference,
    )


def check_partition(context):
    """Zero commutators inside every piece and pieces summing to the total Hamiltonian."""
    audit = audit_commutation(context.plan)
    completeness = check_completeness(context.plan, operators=context.operators)
    worst = max([completeness] + list(audit.values()))
    return _result(
        'partition', worst, 1e-12,
        piece_count=context.plan.piece_count, empty_pieces=[piece.name for piece in context.plan.empty_pieces],
        completeness=completeness, audit=audit,
    )


def check_trotter_scaling(context):
    """
    Log-log slope of sqrt(1 - F) against N_t near -1, and error * N_t under the
    first-order bound C t^2 / 2 with C from the measured commutator norms.
    """
    params = context.params
    check_dense_capability(params.layout.dimension, 'Trotter scaling')
    scaling = trotter_slope(
        params, context.random_state(), context.time, steps=context.steps,
        plan=context.plan, operators=context.operators,
    )
    constant = commutator_constant(params, NormMode.NUMERIC, operators=context.operators)
    bound = constant * context.time ** 2 / 2.0
    within_bound = all(scaled <= bound * (1 + 1e-6) + 1e-12 for scaled in scaling.scaled_errors)
    details = {
        'steps': list(scaling.steps),
        'fidelities': list(scaling.fidelities),
        'errors': list(scaling.errors),
        'scaled_errors': list(scaling.scaled_errors),
        'doubling_ratios': list(scaling.doubling_ratios),
        'commutator_constant': constant,
        'bound': bound,
    }
    if math.isnan(scaling.slope):
        # All pieces commute on this instance; the product formula is exact.
        return _result('trotter_scaling', max(scaling.errors), 1e-12, **details)
    deviation = abs(scaling.slope + 1.0)
    return _result(
        'trotter_scaling', deviation, 0.2, ok=deviation <= 0.2 and within_bound, slope=scaling.slope, **details
    )


def check_timelike_current(context):
    result = timelike_current_check(context.params, context.samples, context.rng)
    return _result(
        'timelike_current', -result.pointwise_margin, 0.0, ok=result.passed,
        momentum_margin=result.momentum_margin, samples=result.samples,
    )


def check_longitudinal_invariance(context):
    """<H_A + H_Pi> under a gradient shift of the field register, gauge-only with two qubits per mode."""
    params = context.params
    grid = params.grids[0]
    gauge = attr.evolve(context.gauge_params, grid=make_field_grid(grid.a_max, max(2, grid.n_qubits)))
    check_dense_capability(gauge.layout.dimension, 'the longitudinal invariance check')
    change = longitudinal_invariance_check(gauge, context.rng)
    return _result('longitudinal_invariance', change, settings.QED_IDENTITY_TOLERANCE)


CHECKS = (
    ('hermiticity', check_hermiticity),
    ('psd_after_shift', check_psd_after_shift),
    ('dispersion', check_dispersion),
    ('transversality', check_transversality),
    ('charge_conservation', check_charge_conservation),
    ('chebyshev', check_chebyshev),
    ('dual_construction', check_dual_construction),
    ('partition', check_partition),
    ('trotter_scaling', check_trotter_scaling),
    ('timelike_current', check_timelike_current),
    ('longitudinal_invariance', check_longitudinal_invariance),
)


def verify_suite(
        params, fault=None, seed=None, epsilon=0.1, time=0.5, steps=(8, 16, 32, 64), charge_time=5.0, samples=50,
):
    """
    Run every check that applies to ``params`` and collect a SuiteReport.

    Checks needing the missing register are skipped and logged. ``fault``
    names a deliberate corruption (only ``"hermiticity"``) used to exercise
    the failure path. Build errors other than capability limits propagate.
    """
    if fault is not None and fault not in FAULTS:
        raise DomainError(f"unknown fault {fault!r}")
    seed = settings.QED_DEFAULT_SEED if seed is None else seed
    context = _Context(params, seed, epsilon, time, steps, charge_time, samples)
    reduced = []
    results = []
    for name, check in CHECKS:
        if name in FERMION_CHECKS and not params.has_fermion:
            reduced.append(name)
            results.append(_skipped(name, 'no fermion register'))
            continue
        if name in GAUGE_CHECKS and not params.has_gauge:
            reduced.append(name)
            results.append(_skipped(name, 'no gauge register'))
            continue
        try:
            result = check(context, fault) if name == 'hermiticity' else check(context)
        except CapabilityError as exc:
            result = _skipped(name, str(exc))
        if result.status == CheckStatus.FAILED:
            logger.warning('COULOMBQED: check %s failed with value %s', name, result.value)
        results.append(result)
    if reduced:
        logger.info('COULOMBQED: reduced %s check set, skipped %s', params.sector, ', '.join(reduced))
    report = SuiteReport(dims=params.geometry.dims, sector=params.sector, checks=results, fault=fault, seed=seed)
    logger.info(
        'COULOMBQED: verification on dims %s %s with %d failed checks',
        params.geometry.dims, 'passed' if report.passed else 'failed', len(report.failed_checks),
    )
    return report
