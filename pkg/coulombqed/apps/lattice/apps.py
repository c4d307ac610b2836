""" AppConfig for the lattice app. """

from django.apps import AppConfig


class LatticeConfig(AppConfig):
    name = 'coulombqed.apps.lattice'
    verbose_name = "Lattice"
