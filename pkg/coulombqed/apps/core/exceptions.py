"""
Exceptions raised across the Coulomb QED apps
"""


class QEDException(Exception):
    pass


class DomainError(QEDException, ValueError):
    """An input lies outside the domain of the requested operation."""


class ConfigurationError(QEDException):
    """Parameters are individually valid but inconsistent with each other."""


class CapabilityError(QEDException):
    """The requested build or evolution exceeds the configured dimension limits."""


class PartitionError(QEDException):
    """A Hamiltonian term does not belong to any Trotter piece."""


class VerificationFailure(QEDException):

    def __init__(self, report):
        failed = ', '.join(check.name for check in report.failed_checks)
        super().__init__(f"verification failed: {failed}")
        self.report = report
