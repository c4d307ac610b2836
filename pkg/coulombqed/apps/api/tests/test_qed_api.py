"""
Tests for the api.
"""
import json
import os
import unittest

import jsonschema
import pytest
from django.conf import settings

from coulombqed.apps import api
from coulombqed.apps.cli.circuit import DIAGONAL_PHASE, FOURIER_BLOCK, PAULI_EXPONENTIAL
from coulombqed.apps.core.constants import Sector


def _validator(schema_name):
    with open(os.path.join(settings.QED_SCHEMA_ROOT, schema_name), encoding='utf-8') as schema_file:
        return jsonschema.Draft7Validator(json.load(schema_file))


def _validate(record, schema_name):
    """Validates the record as it is written out, after a JSON round trip."""
    _validator(schema_name).validate(json.loads(json.dumps(record)))


class QEDApiTest(unittest.TestCase):
    """
    Test for the Coulomb QED API methods.
    """

    # Configuration

    def test_build_params_needs_resolved_n_a(self):
        """ n_a="auto" cannot build a Hamiltonian -> ConfigurationError """
        with pytest.raises(api.ConfigurationError):
            api.build_params(api.RunConfigData(n_a=api.AUTO))

    def test_build_params(self):
        params = api.build_params(api.RunConfigData(dims=(2, 2, 1), n_a=2, sector=Sector.GAUGE))
        assert params.geometry.volume == 4
        assert params.layout.total_qubits == 24
        assert not params.has_fermion

    # Resources

    def test_resources_auto(self):
        """ Both "auto" fields are resolved from the bounds """
        report = api.estimate_resources(api.RunConfigData(dims=(2, 2, 2), n_a=api.AUTO, steps=api.AUTO))
        assert report.config.resolved
        assert report.n_a == report.estimate.n_a
        assert report.estimate.volume == 8
        assert report.estimate.n_steps >= 1
        assert report.estimate.commutator_constant > 0
        assert report.estimate.gate_costs['structural']
        assert report.norm_mode == 'asymptotic'

    def test_resources_explicit_n_a(self):
        """ An explicit register size is kept; the bound is still reported """
        report = api.estimate_resources(api.RunConfigData(n_a=1, steps=16))
        assert report.n_a == 1
        assert report.config.steps == 16
        assert report.estimate.n_a >= 1
        assert report.estimate.gate_costs['qft_per_register'] == 1

    def test_resources_report_shape(self):
        record = api.estimate_resources(api.RunConfigData()).as_dict()
        _validate(record, 'resources.schema.json')
        assert record['schema_version'] == '1.0'

    def test_resources_bad_budget(self):
        with pytest.raises(api.DomainError):
            api.estimate_resources(api.RunConfigData(epsilon=2.0))

    def test_resources_numeric_norms_capability(self):
        """ Numeric commutator norms above the dense limit -> CapabilityError """
        with pytest.raises(api.CapabilityError):
            api.estimate_resources(api.RunConfigData(dims=(2, 2, 1), numeric_norms=True))

    def test_resources_odd_extent(self):
        """ Odd extents have no Trotter plan but still get the asymptotic costs """
        report = api.estimate_resources(api.RunConfigData(dims=(3, 1, 1), sector=Sector.FERMION))
        assert report.estimate.gate_costs['structural'] is None

    # Verification

    def test_verification(self):
        result = api.run_verification(api.RunConfigData(sector=Sector.GAUGE, seed=11))
        assert result.passed
        record = result.as_dict()
        _validate(record, 'verify.schema.json')
        assert record['seed'] == 11

    def test_verification_failure(self):
        """ An injected fault fails the report, and raises on request """
        config = api.RunConfigData(sector=Sector.GAUGE, inject_fault='hermiticity')
        result = api.run_verification(config)
        assert not result.passed
        assert [check.name for check in result.failed_checks] == ['hermiticity']
        with pytest.raises(api.VerificationFailure) as excinfo:
            api.run_verification(config, raise_on_failure=True)
        assert 'hermiticity' in str(excinfo.value)
        assert not excinfo.value.report.passed

    # Evolution

    def test_evolution(self):
        report = api.run_evolution(api.RunConfigData(sector=Sector.FERMION, steps=4, time=0.4, seed=2))
        assert report.n_steps == 4
        assert report.piece_count == 11
        assert [record.step for record in report.records] == [0, 1, 2, 3, 4]
        assert 0.0 <= report.final_infidelity < 0.1
        assert report.energy_drift <= 1e-8
        charges = [record.charge for record in report.records]
        assert charges == pytest.approx([charges[0]] * 5)
        record = report.as_dict()
        _validate(record, 'evolve.schema.json')

    def test_gauge_evolution_has_no_charge(self):
        report = api.run_evolution(api.RunConfigData(dims=(1, 1, 1), sector=Sector.GAUGE, steps=2))
        assert all(record.charge is None for record in report.records)

    def test_evolution_capability(self):
        """ A coupled 2x2x1 register is too large for dense evolution -> CapabilityError """
        with pytest.raises(api.CapabilityError):
            api.run_evolution(api.RunConfigData(dims=(2, 2, 1)))

    # Circuits

    def test_gauge_circuit(self):
        circuit = api.emit_circuit(api.RunConfigData(dims=(1, 1, 1), sector=Sector.GAUGE, steps=1))
        assert [operation.kind for operation in circuit.operations] == [
            FOURIER_BLOCK, DIAGONAL_PHASE, FOURIER_BLOCK, DIAGONAL_PHASE,
        ]
        assert circuit.operations[2].inverse
        assert circuit.counts['H_Pi'] == 3

    def test_fermion_circuit(self):
        circuit = api.emit_circuit(api.RunConfigData(sector=Sector.FERMION, steps=2))
        assert circuit.operations
        assert {operation.kind for operation in circuit.operations} == {PAULI_EXPONENTIAL}
        assert {operation.step for operation in circuit.operations} == {0, 1}
        assert len(circuit.operations) == 2 * sum(circuit.counts.values())

    def test_circuit_json_lines(self):
        circuit = api.emit_circuit(api.RunConfigData(steps=1))
        lines = circuit.as_json_lines().splitlines()
        assert len(lines) == len(circuit.operations)
        validator = _validator('circuit.schema.json')
        for line in lines:
            validator.validate(json.loads(line))

    # Published schemas

    def test_failed_verification_matches_schema(self):
        result = api.run_verification(api.RunConfigData(sector=Sector.GAUGE, inject_fault='hermiticity'))
        record = result.as_dict()
        _validate(record, 'verify.schema.json')
        assert record['failed'] == ['hermiticity']

    def test_zero_time_resources(self):
        """ t = 0 needs no Trotter steps; the config keeps one identity step """
        report = api.estimate_resources(api.RunConfigData(time=0.0, steps=api.AUTO, n_a=api.AUTO))
        assert report.estimate.n_steps == 0
        assert report.config.steps == 1
        _validate(report.as_dict(), 'resources.schema.json')

    def test_schema_constraints_reject_bad_records(self):
        record = json.loads(json.dumps(api.estimate_resources(api.RunConfigData()).as_dict()))
        validator = _validator('resources.schema.json')
        for path, value in (
            (('schema_version',), '0.9'),
            (('config', 'steps'), 0),
            (('config', 'epsilon'), 1.0),
            (('config', 'sector'), 'photon'),
            (('estimate', 'n_steps'), 2.5),
        ):
            broken = json.loads(json.dumps(record))
            target = broken
            for key in path[:-1]:
                target = target[key]
            target[path[-1]] = value
            with pytest.raises(jsonschema.ValidationError):
                validator.validate(broken)

    def test_circuit_schema_rejects_bad_operations(self):
        circuit = api.emit_circuit(api.RunConfigData(dims=(1, 1, 1), sector=Sector.GAUGE, steps=1))
        operation = json.loads(circuit.as_json_lines().splitlines()[0])
        validator = _validator('circuit.schema.json')
        validator.validate(operation)
        for key, value in (('kind', 'toffoli'), ('functional', [['0', 1.0]]), ('step', -1)):
            with pytest.raises(jsonschema.ValidationError):
                validator.validate(dict(operation, **{key: value}))
