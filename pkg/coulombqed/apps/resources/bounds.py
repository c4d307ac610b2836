"""
Field truncation bounds and qubit counts.

Every bound takes the shifted state energy E' (the target energy plus the
Dirac-sea shift), the lattice volume V, the coupling g and the infidelity
budget epsilon.
"""
import logging
import math

import attr

from coulombqed.apps.core.exceptions import DomainError
from coulombqed.apps.hamiltonian.dispersion import shift_constant

logger = logging.getLogger(__name__)


def _check_budget(epsilon):
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")


def _check_positive(**values):
    for name, value in values.items():
        if not value > 0:
            raise DomainError(f"{name} must be positive, got {value}")


def default_kappa(volume, epsilon):
    """Chebyshev multiplier sqrt(3 V / epsilon): a per-mode tail budget of epsilon / (3 V)."""
    _check_budget(epsilon)
    return math.sqrt(3.0 * volume / epsilon)


def a_max_bound(energy_prime, volume, g, epsilon):
    """
    sqrt(3 E' V^(5/3) / (2 pi^2 epsilon)) + g V^(2/3) / (2 pi^2).

    Raises DomainError unless 0 < epsilon < 1 and E', V > 0.
    """
    _check_budget(epsilon)
    _check_positive(energy_prime=energy_prime, volume=volume)
    return (
        math.sqrt(3.0 * energy_prime * volume ** (5.0 / 3.0) / (2.0 * math.pi ** 2 * epsilon))
        + abs(g) * volume ** (2.0 / 3.0) / (2.0 * math.pi ** 2)
    )


def pi_max_bound(energy_prime, volume, epsilon):
    """sqrt(6 E' V / epsilon)."""
    _check_budget(epsilon)
    _check_positive(energy_prime=energy_prime, volume=volume)
    return math.sqrt(6.0 * energy_prime * volume / epsilon)


def n_a_argument(energy_prime, volume, g, epsilon):
    """Argument of the logarithm in the qubit count per gauge register."""
    _check_budget(epsilon)
    _check_positive(energy_prime=energy_prime, volume=volume)
    return (
        6.0 * energy_prime * volume ** (4.0 / 3.0) / (math.pi ** 2 * epsilon)
        + math.sqrt(6.0) * abs(g) * math.sqrt(energy_prime) * volume ** (5.0 / 6.0)
        / (math.pi ** 3 * math.sqrt(epsilon))
    )


def n_A_bound(energy_prime, volume, g, epsilon):
    """
    ceil(log2(6 E' V^(4/3) / (pi^2 eps) + sqrt(6) g sqrt(E') V^(5/6) / (pi^3 sqrt(eps)))), at least 1.
    """
    argument = n_a_argument(energy_prime, volume, g, epsilon)
    if argument <= 2:
        return 1
    return max(1, math.ceil(math.log2(argument)))


@attr.s(frozen=True)
class GridResolution:
    """
    Register size with the field spacing it implies.

    ``levels_needed`` = 2 a_max / delta_a + 1 is the level count of a grid
    with spacing ``delta_a`` spanning [-a_max, a_max].
    """
    n_a = attr.ib(type=int)
    a_max = attr.ib(type=float)
    pi_max = attr.ib(type=float)
    delta_a = attr.ib(type=float)
    levels_needed = attr.ib(type=float)

    @property
    def consistent(self):
        return self.levels_needed <= 2 ** self.n_a

    @property
    def n_a_from_levels(self):
        return max(1, math.ceil(math.log2(self.levels_needed)))


def grid_resolution(energy_prime, volume, g, epsilon):
    a_max = a_max_bound(energy_prime, volume, g, epsilon)
    pi_max = pi_max_bound(energy_prime, volume, epsilon)
    delta_a = math.pi / pi_max
    return GridResolution(
        n_a=n_A_bound(energy_prime, volume, g, epsilon),
        a_max=a_max,
        pi_max=pi_max,
        delta_a=delta_a,
        levels_needed=2.0 * a_max / delta_a + 1.0,
    )


def total_qubits(n_a, volume):
    """3 n_A V gauge qubits plus 4 V fermion qubits."""
    if n_a < 1:
        raise DomainError(f"n_A must be >= 1, got {n_a}")
    return 3 * n_a * volume + 4 * volume


def x_max_exact(energy_prime, extent, kappa):
    """
    (kappa + 1) sqrt(E' / (2 sin^2(pi / L))): the field cutoff before the large-L approximation.
    """
    _check_positive(energy_prime=energy_prime, kappa=kappa)
    if extent < 2:
        raise DomainError(f"the lowest nonzero momentum needs an extent >= 2, got {extent}")
    return (kappa + 1.0) * math.sqrt(energy_prime / (2.0 * math.sin(math.pi / extent) ** 2))


def gradient_source_bound(g, extent):
    """g L^2 / (2 pi^2): the largest field shift sourced by a unit charge gradient."""
    return abs(g) * extent ** 2 / (2.0 * math.pi ** 2)


@attr.s(frozen=True)
class ResourceEstimate:
    """
    Every truncation and cost figure for one target energy and budget.
    """
    energy = attr.ib(type=float)
    energy_prime = attr.ib(type=float)
    epsilon = attr.ib(type=float)
    volume = attr.ib(type=int)
    a_max = attr.ib(type=float)
    pi_max = attr.ib(type=float)
    delta_a = attr.ib(type=float)
    n_a = attr.ib(type=int)
    total_qubits = attr.ib(type=int)
    kappa = attr.ib(type=float)
    n_steps = attr.ib(default=None)
    commutator_constant = attr.ib(default=None)
    gate_costs = attr.ib(default=None)

    def as_dict(self):
        return attr.asdict(self, recurse=True)


def resource_estimate(energy, volume, g, mass, wilson, epsilon, kappa=None):
    """
    Compose every bound into a ResourceEstimate.

    E' = E + shift_constant(V, m, r). ``n_steps`` and ``gate_costs`` are left
    for the caller to attach.
    """
    _check_budget(epsilon)
    energy_prime = energy + shift_constant(volume, mass, wilson)
    resolution = grid_resolution(energy_prime, volume, g, epsilon)
    kappa = default_kappa(volume, epsilon) if kappa is None else kappa
    if not resolution.consistent:
        logger.info(
            'COULOMBQED: grid of 2^%d levels holds %.1f of the %.1f levels the bounds ask for',
            resolution.n_a, 2 ** resolution.n_a, resolution.levels_needed,
        )
    return ResourceEstimate(
        energy=energy,
        energy_prime=energy_prime,
        epsilon=epsilon,
        volume=volume,
        a_max=resolution.a_max,
        pi_max=resolution.pi_max,
        delta_a=resolution.delta_a,
        n_a=resolution.n_a,
        total_qubits=total_qubits(resolution.n_a, volume),
        kappa=kappa,
    )
