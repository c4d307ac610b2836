""" AppConfig for the cli app. """

from django.apps import AppConfig


class CliConfig(AppConfig):
    name = 'coulombqed.apps.cli'
    verbose_name = "Command Line"
