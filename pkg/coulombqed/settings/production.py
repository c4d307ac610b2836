from coulombqed.settings.base import *
from coulombqed.settings.utils import get_env_setting, load_yaml_overrides


DEBUG = False

LOGGING['handlers']['local']['level'] = 'INFO'

CONFIG_FILE = get_env_setting('COULOMBQED_CFG')
vars().update(load_yaml_overrides(CONFIG_FILE))
