"""
API for Coulomb-gauge lattice QED simulation and resource estimation

Every method takes a RunConfigData and returns an attrs record with an
``as_dict()`` suitable for JSON reports.
"""
from .data import (
    AUTO,
    RunConfigData,
    ResourceReportData,
    VerificationReportData,
    EvolutionRecordData,
    EvolutionReportData,
    CircuitData,
)
from .methods import (
    build_params,
    estimate_resources,
    run_verification,
    run_evolution,
    emit_circuit,
)
from coulombqed.apps.core.exceptions import (
    QEDException,
    DomainError,
    ConfigurationError,
    CapabilityError,
    PartitionError,
    VerificationFailure,
)
