"""
Tests for the qed management command.
"""
import json
import os
import tempfile
import unittest
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from coulombqed.apps.core.constants import ExitCode


def _run(*args):
    out = StringIO()
    call_command('qed', *args, stdout=out)
    return out.getvalue()


class QEDCommandTest(unittest.TestCase):
    """
    Subcommands, report output and exit codes.
    """

    def test_resources(self):
        record = json.loads(_run('resources', '--dims', '2,1,1', '--n-a', 'auto', '--steps', 'auto'))
        assert record['config']['dims'] == [2, 1, 1]
        assert record['n_a'] == record['estimate']['n_a']
        assert record['norm_mode'] == 'asymptotic'

    def test_resources_zero_time(self):
        record = json.loads(_run('resources', '--time', '0', '--steps', 'auto'))
        assert record['estimate']['n_steps'] == 0
        assert record['config']['time'] == 0.0

    def test_evolve(self):
        record = json.loads(_run('evolve', '--sector', 'fermion', '--steps', '2', '--time', '0.2', '--seed', '3'))
        assert record['n_steps'] == 2
        assert len(record['records']) == 3
        assert record['config']['seed'] == 3

    def test_emit_circuit(self):
        lines = _run('emit-circuit', '--dims', '1,1,1', '--sector', 'gauge', '--steps', '1').splitlines()
        assert [json.loads(line)['kind'] for line in lines] == [
            'fourier-block', 'diagonal-phase', 'fourier-block', 'diagonal-phase',
        ]

    def test_verify(self):
        record = json.loads(_run('verify', '--sector', 'gauge'))
        assert record['passed']
        assert record['fault'] is None

    def test_verify_fault(self):
        """ A failed check exits with 1 after writing the report """
        out = StringIO()
        with pytest.raises(CommandError) as excinfo:
            call_command('qed', 'verify', '--sector', 'gauge', '--inject-fault', 'hermiticity', stdout=out)
        assert excinfo.value.returncode == ExitCode.VERIFICATION_FAILED
        record = json.loads(out.getvalue())
        assert record['failed'] == ['hermiticity']

    def test_invalid_flag(self):
        with pytest.raises(CommandError) as excinfo:
            _run('resources', '--epsilon', '2')
        assert excinfo.value.returncode == ExitCode.CONFIGURATION_ERROR

    def test_unknown_fault(self):
        with pytest.raises(CommandError) as excinfo:
            _run('verify', '--inject-fault', 'unitarity')
        assert excinfo.value.returncode == ExitCode.CONFIGURATION_ERROR

    def test_missing_config_file(self):
        with pytest.raises(CommandError) as excinfo:
            _run('resources', '--config', '/nonexistent/run.json')
        assert excinfo.value.returncode == ExitCode.CONFIGURATION_ERROR

    def test_capability(self):
        with pytest.raises(CommandError) as excinfo:
            _run('evolve', '--dims', '2,2,1')
        assert excinfo.value.returncode == ExitCode.CAPABILITY_ERROR

    def test_config_file_and_out(self):
        """ Flags override the config file; --out receives the report """
        with tempfile.TemporaryDirectory() as directory:
            config_path = os.path.join(directory, 'run.json')
            out_path = os.path.join(directory, 'report.json')
            with open(config_path, 'w', encoding='utf-8') as config_file:
                json.dump({'dims': [2, 2, 2], 'g': 1.0, 'epsilon': 0.2}, config_file)
            assert _run('resources', '--config', config_path, '--epsilon', '0.1', '--out', out_path) == ''
            with open(out_path, encoding='utf-8') as out_file:
                record = json.load(out_file)
        assert record['config']['dims'] == [2, 2, 2]
        assert record['config']['g'] == 1.0
        assert record['config']['epsilon'] == 0.1

    def test_config_file_not_an_object(self):
        with tempfile.TemporaryDirectory() as directory:
            config_path = os.path.join(directory, 'run.json')
            with open(config_path, 'w', encoding='utf-8') as config_file:
                json.dump([2, 1, 1], config_file)
            with pytest.raises(CommandError) as excinfo:
                _run('resources', '--config', config_path)
        assert excinfo.value.returncode == ExitCode.CONFIGURATION_ERROR
