""" AppConfig for the core app. """

from django.apps import AppConfig


class CoreConfig(AppConfig):
    name = 'coulombqed.apps.core'
    verbose_name = "Coulomb QED Core"
