""" AppConfig for the trotter app. """

from django.apps import AppConfig


class TrotterConfig(AppConfig):
    name = 'coulombqed.apps.trotter'
    verbose_name = "Trotter Simulation"
