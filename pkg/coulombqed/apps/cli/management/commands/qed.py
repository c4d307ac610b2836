""" Command to estimate resources, verify, evolve or emit circuits for a lattice QED configuration. """

import json
import logging

from django.core.management.base import BaseCommand, CommandError

from coulombqed.apps.api import (
    CapabilityError,
    ConfigurationError,
    DomainError,
    VerificationFailure,
    emit_circuit,
    estimate_resources,
    run_evolution,
    run_verification,
)
from coulombqed.apps.core.constants import ExitCode, Sector

from ...serializers import RunConfigSerializer

logger = logging.getLogger(__name__)

RESOURCES = 'resources'
VERIFY = 'verify'
EVOLVE = 'evolve'
EMIT_CIRCUIT = 'emit-circuit'
SUBCOMMANDS = (RESOURCES, VERIFY, EVOLVE, EMIT_CIRCUIT)

# option name -> RunConfig key
FLAGS = {
    'dims': 'dims',
    'g': 'g',
    'mass': 'mass',
    'wilson': 'wilson',
    'energy': 'energy',
    'epsilon': 'epsilon',
    'time': 'time',
    'steps': 'steps',
    'n_a': 'n_a',
    'a_max': 'a_max',
    'seed': 'seed',
    'sector': 'sector',
    'kappa': 'kappa',
    'numeric_norms': 'numeric_norms',
    'transverse_hi': 'transverse_hi',
    'inject_fault': 'inject_fault',
}


class Command(BaseCommand):
    """ Command to run one lattice QED experiment and write its JSON report. """

    help = 'Runs resources | verify | evolve | emit-circuit for a lattice QED configuration'

    def add_arguments(self, parser):
        parser.add_argument('subcommand', choices=SUBCOMMANDS)
        parser.add_argument('--config', help='JSON file with RunConfig keys; flags override it')
        parser.add_argument('--dims', help='lattice extents X,Y,Z')
        parser.add_argument('--g', type=float)
        parser.add_argument('--mass', type=float)
        parser.add_argument('--wilson', type=float)
        parser.add_argument('--energy', type=float)
        parser.add_argument('--epsilon', type=float)
        parser.add_argument('--time', type=float)
        parser.add_argument('--steps', help='Trotter steps or "auto"')
        parser.add_argument('--n-a', dest='n_a', help='qubits per gauge register or "auto"')
        parser.add_argument('--a-max', dest='a_max', type=float)
        parser.add_argument('--seed', type=int)
        parser.add_argument('--sector', choices=Sector.CHOICES)
        parser.add_argument('--kappa', type=float)
        parser.add_argument('--numeric-norms', dest='numeric_norms', action='store_true', default=None)
        parser.add_argument('--transverse-hi', dest='transverse_hi', action='store_true', default=None)
        parser.add_argument('--no-transverse-hi', dest='transverse_hi', action='store_false')
        parser.add_argument('--inject-fault', dest='inject_fault')
        parser.add_argument('--out', help='write the report here instead of stdout')

    def handle(self, *args, **options):
        config = self._load_config(options)
        subcommand = options['subcommand']
        logger.info('COULOMBQED: running %s on dims %s', subcommand, config.dims)
        try:
            if subcommand == RESOURCES:
                output = self._json(estimate_resources(config).as_dict())
            elif subcommand == VERIFY:
                output = self._verify(config, options)
            elif subcommand == EVOLVE:
                output = self._json(run_evolution(config).as_dict())
            else:
                output = emit_circuit(config).as_json_lines()
        except CapabilityError as exc:
            raise CommandError(str(exc), returncode=ExitCode.CAPABILITY_ERROR) from exc
        except (DomainError, ConfigurationError) as exc:
            raise CommandError(str(exc), returncode=ExitCode.CONFIGURATION_ERROR) from exc
        self._write(output, options)

    def _verify(self, config, options):
        try:
            return self._json(run_verification(config, raise_on_failure=True).as_dict())
        except VerificationFailure as exc:
            self._write(self._json(exc.report.as_dict()), options)
            raise CommandError(str(exc), returncode=ExitCode.VERIFICATION_FAILED) from exc

    def _load_config(self, options):
        """Defaults, then the --config file, then explicit flags."""
        data = {}
        if options.get('config'):
            try:
                with open(options['config'], encoding='utf-8') as config_file:
                    data = json.load(config_file)
            except (OSError, ValueError) as exc:
                raise CommandError(
                    f"cannot read config {options['config']}: {exc}", returncode=ExitCode.CONFIGURATION_ERROR,
                ) from exc
            if not isinstance(data, dict):
                raise CommandError("the config file must hold a JSON object", returncode=ExitCode.CONFIGURATION_ERROR)
        for option, key in FLAGS.items():
            if options.get(option) is not None:
                data[key] = options[option]
        serializer = RunConfigSerializer(data=data)
        if not serializer.is_valid():
            raise CommandError(
                f"invalid configuration: {json.dumps(serializer.errors, sort_keys=True)}",
                returncode=ExitCode.CONFIGURATION_ERROR,
            )
        return serializer.to_config()

    @staticmethod
    def _json(record):
        return json.dumps(record, sort_keys=True, indent=2)

    def _write(self, output, options):
        if options.get('out'):
            with open(options['out'], 'w', encoding='utf-8') as out_file:
                out_file.write(output + '\n')
        else:
            self.stdout.write(output)
