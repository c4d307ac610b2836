"""
Numerical check of the Chebyshev tail bound used to pick field cutoffs.
"""
import math

import attr
import numpy as np
from django.conf import settings

from coulombqed.apps.core.exceptions import DomainError


@attr.s(frozen=True)
class ChebyshevResult:
    """
    Spectral statistics of an observable in a state and the tail probability.
    """
    kappa = attr.ib(type=float)
    mean = attr.ib(type=float)
    std = attr.ib(type=float)
    rms = attr.ib(type=float)
    probability = attr.ib(type=float)
    bound = attr.ib(type=float)

    @property
    def passed(self):
        return (
            self.probability < self.bound
            and abs(self.mean) <= self.rms + 1e-12
            and self.std <= self.rms + 1e-12
        )


def spectral_weights(state, observable):
    """Eigenvalues of ``observable`` and the state's weight on each."""
    amplitudes = np.asarray(getattr(state, 'amplitudes', state), dtype=complex)
    norm = np.linalg.norm(amplitudes)
    if abs(norm - 1.0) > settings.QED_IDENTITY_TOLERANCE:
        raise DomainError(f"state has norm {norm}, expected 1")
    values, vectors = np.linalg.eigh(observable.dense())
    weights = np.abs(vectors.conj().T @ amplitudes) ** 2
    return values, weights


def chebyshev_verifier(state, observable, kappa, tolerance=1e-12):
    """
    P(|O - mu| > kappa sigma) from spectral weights, against the bound 1 / kappa^2.

    Raises DomainError for an unnormalized state or a non-positive kappa.
    """
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    values, weights = spectral_weights(state, observable)
    mean = float(np.dot(weights, values))
    variance = float(np.dot(weights, (values - mean) ** 2))
    std = math.sqrt(max(variance, 0.0))
    rms = math.sqrt(float(np.dot(weights, values ** 2)))
    outside = np.abs(values - mean) > kappa * std + tolerance
    return ChebyshevResult(
        kappa=kappa,
        mean=mean,
        std=std,
        rms=rms,
        probability=float(weights[outside].sum()),
        bound=1.0 / kappa ** 2,
    )


def field_cutoff(state, observable, kappa):
    """(kappa + 1) sqrt(<O^2>): beyond it |O - mu| > kappa sigma must hold."""
    values, weights = spectral_weights(state, observable)
    return (kappa + 1.0) * math.sqrt(float(np.dot(weights, values ** 2)))


def tail_probability(state, observable, cutoff):
    """P(|O| > cutoff)."""
    values, weights = spectral_weights(state, observable)
    return float(weights[np.abs(values) > cutoff].sum())
