"""
Data records returned by the Coulomb QED API
"""
import attr
from django.conf import settings

from coulombqed.apps.cli.circuit import to_json_lines
from coulombqed.apps.core.constants import Sector

AUTO = 'auto'


def _schema_version():
    return settings.QED_REPORT_SCHEMA_VERSION


@attr.s(frozen=True)
class RunConfigData:
    """
    One experiment configuration.

    ``steps`` and ``n_a`` may be ``"auto"`` until resolved by the resource
    estimate; every other field is final.
    """
    dims = attr.ib(converter=tuple, default=(2, 1, 1))
    g = attr.ib(type=float, default=0.3)
    mass = attr.ib(type=float, default=0.5)
    wilson = attr.ib(type=float, default=1.0)
    energy = attr.ib(type=float, default=10.0)
    epsilon = attr.ib(type=float, default=0.1)
    time = attr.ib(type=float, default=0.5)
    steps = attr.ib(default=16)  # int or "auto"
    n_a = attr.ib(default=1)  # int or "auto"
    a_max = attr.ib(type=float, default=1.0)
    sector = attr.ib(type=str, default=Sector.COUPLED)
    numeric_norms = attr.ib(type=bool, default=False)
    transverse_hi = attr.ib(type=bool, default=True)
    seed = attr.ib(default=None)
    kappa = attr.ib(default=None)
    inject_fault = attr.ib(default=None)

    @property
    def resolved(self):
        return AUTO not in (self.steps, self.n_a)

    def as_dict(self):
        record = attr.asdict(self)
        record['dims'] = list(self.dims)
        return record


@attr.s(frozen=True)
class ResourceReportData:
    """
    Bounds, step count and gate costs for one configuration.

    ``estimate`` is a ResourceEstimate whose ``n_a`` is the bound; ``n_a`` is
    the register size the costs were instantiated with.
    """
    config = attr.ib(type=RunConfigData)
    estimate = attr.ib()
    n_a = attr.ib(type=int)
    norm_mode = attr.ib(type=str)
    schema_version = attr.ib(type=str, factory=_schema_version)

    def as_dict(self):
        return {
            'schema_version': self.schema_version,
            'config': self.config.as_dict(),
            'estimate': self.estimate.as_dict(),
            'n_a': self.n_a,
            'norm_mode': self.norm_mode,
        }


@attr.s(frozen=True)
class VerificationReportData:
    """
    The verification suite outcome for one configuration.
    """
    config = attr.ib(type=RunConfigData)
    report = attr.ib()
    schema_version = attr.ib(type=str, factory=_schema_version)

    @property
    def passed(self):
        return self.report.passed

    @property
    def failed_checks(self):
        return self.report.failed_checks

    def as_dict(self):
        record = self.report.as_dict()
        record['schema_version'] = self.schema_version
        record['config'] = self.config.as_dict()
        return record


@attr.s(frozen=True)
class EvolutionRecordData:
    step = attr.ib(type=int)
    time = attr.ib(type=float)
    fidelity = attr.ib(type=float)
    energy = attr.ib(type=float)
    exact_energy = attr.ib(type=float)
    charge = attr.ib(default=None)


@attr.s(frozen=True)
class EvolutionReportData:
    """
    Time series of a Trotterized run against exact evolution.
    """
    config = attr.ib(type=RunConfigData)
    n_steps = attr.ib(type=int)
    piece_count = attr.ib(type=int)
    records = attr.ib(converter=tuple)
    schema_version = attr.ib(type=str, factory=_schema_version)

    @property
    def final_infidelity(self):
        return 1.0 - self.records[-1].fidelity

    @property
    def energy_drift(self):
        """Largest change of the exactly evolved energy expectation."""
        initial = self.records[0].exact_energy
        return max(abs(record.exact_energy - initial) for record in self.records)

    def as_dict(self):
        return {
            'schema_version': self.schema_version,
            'config': self.config.as_dict(),
            'n_steps': self.n_steps,
            'piece_count': self.piece_count,
            'final_infidelity': self.final_infidelity,
            'energy_drift': self.energy_drift,
            'records': [attr.asdict(record) for record in self.records],
        }


@attr.s(frozen=True)
class CircuitData:
    """
    Abstract circuit operations for a Trotter plan, and their per-piece counts.
    """
    config = attr.ib(type=RunConfigData)
    operations = attr.ib(converter=tuple)
    counts = attr.ib(type=dict)

    def as_json_lines(self):
        return to_json_lines(self.operations)
