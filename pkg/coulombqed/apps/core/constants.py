""" Constants for the core app. """


class Sector:
    """Which registers a run carries."""
    COUPLED = "coupled"
    GAUGE = "gauge"
    FERMION = "fermion"

    CHOICES = (COUPLED, GAUGE, FERMION)


class CheckStatus:
    """Verification check outcomes."""
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


class ExitCode:
    """Process exit codes of the qed command."""
    OK = 0
    VERIFICATION_FAILED = 1
    CONFIGURATION_ERROR = 2
    CAPABILITY_ERROR = 3


class NormMode:
    """How trotter_steps evaluates the commutator constant."""
    ASYMPTOTIC = "asymptotic"
    NUMERIC = "numeric"
