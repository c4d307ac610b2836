"""
First-order Trotter step counts.
"""
import logging
import math

from coulombqed.apps.core.constants import NormMode
from coulombqed.apps.core.exceptions import DomainError
from coulombqed.apps.hamiltonian.operators import check_dense_capability, commutator_norm
from coulombqed.apps.trotter.partition import partition, piece_operators

logger = logging.getLogger(__name__)


def asymptotic_commutator_constant(volume, g, mass, wilson, a_max, pi_max):
    """
    Sum of the commutator-norm scalings with every constant set to one:

        g^2 V^2 (1 + m + r) + g^3 V^2 A + g V A (1 + m + r) + g V Pi + V^(5/3) Pi A
    """
    g = abs(g)
    fermion = 1.0 + mass + wilson
    return (
        g ** 2 * volume ** 2 * fermion
        + g ** 3 * volume ** 2 * a_max
        + g * volume * a_max * fermion
        + g * volume * pi_max
        + volume ** (5.0 / 3.0) * pi_max * a_max
    )


def numeric_commutator_constant(operators, tolerance=1e-8):
    """
    sum_{i<j} ||[H_i, H_j]||_2 over the assembled piece operators.

    Pairs of diagonal pieces commute and are skipped. Raises CapabilityError
    above ``QED_DENSE_DIMENSION_LIMIT``.
    """
    operators = [operator for operator in operators if operator.sparse().nnz]
    if not operators:
        return 0.0
    check_dense_capability(operators[0].dimension, 'numeric commutator norms')
    diagonal = [operator.is_diagonal() for operator in operators]
    total = 0.0
    for i in range(len(operators)):
        for j in range(i + 1, len(operators)):
            if diagonal[i] and diagonal[j]:
                continue
            total += commutator_norm(operators[i], operators[j], tolerance=tolerance)
    logger.debug('COULOMBQED: numeric commutator constant %.6g over %d pieces', total, len(operators))
    return total


def steps_for_constant(constant, time, epsilon):
    """N_t = ceil(C t^2 / epsilon), at least one step for t > 0 and none for t = 0."""
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if time < 0:
        raise DomainError(f"time must be non-negative, got {time}")
    if time == 0:
        return 0
    return max(1, math.ceil(constant * time ** 2 / epsilon))


def trotter_steps(time, epsilon, params, mode=NormMode.ASYMPTOTIC, a_max=None, pi_max=None, operators=None):
    """
    Number of first-order Trotter steps for evolution time ``time`` at budget ``epsilon``.

    Asymptotic mode uses the unit-constant scalings with ``a_max``/``pi_max``
    (defaulting to the params' field grid); numeric mode measures the
    commutator norms of the assembled pieces (``operators``, built from the
    plan when omitted).
    """
    return steps_for_constant(
        commutator_constant(params, mode, a_max=a_max, pi_max=pi_max, operators=operators), time, epsilon,
    )


def commutator_constant(params, mode=NormMode.ASYMPTOTIC, a_max=None, pi_max=None, operators=None):
    if mode == NormMode.NUMERIC:
        if operators is None:
            check_dense_capability(params.layout.dimension, 'numeric commutator norms')
            operators = piece_operators(partition(params))
        return numeric_commutator_constant(operators)
    if mode != NormMode.ASYMPTOTIC:
        raise DomainError(f"unknown norm mode {mode!r}")
    if a_max is None or pi_max is None:
        grid = params.grids[0] if params.grids else None
        if grid is None:
            raise DomainError("asymptotic mode needs a_max and pi_max or a field grid")
        a_max = grid.a_max if a_max is None else a_max
        pi_max = grid.conjugate.pi_max if pi_max is None else pi_max
    return asymptotic_commutator_constant(params.geometry.volume, params.g, params.mass, params.wilson, a_max, pi_max)
