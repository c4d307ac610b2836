""" Helpers shared by the settings modules. """
from os import environ

import yaml
from django.core.exceptions import ImproperlyConfigured


def get_env_setting(setting):
    """ Get the environment setting or raise exception """
    try:
        return environ[setting]
    except KeyError as exc:
        raise ImproperlyConfigured(f"Set the [{setting}] env variable!") from exc


def load_yaml_overrides(path):
    """
    Read a YAML mapping of setting names to values.

    Only upper-case keys are returned; anything else in the file is ignored
    so a config file cannot clobber module-level helpers.
    """
    with open(path) as config_file:
        loaded = yaml.safe_load(config_file) or {}
    if not isinstance(loaded, dict):
        raise ImproperlyConfigured(f"{path} must contain a YAML mapping")
    return {key: value for key, value in loaded.items() if key.isupper()}
