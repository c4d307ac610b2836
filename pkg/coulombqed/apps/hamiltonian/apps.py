""" AppConfig for the hamiltonian app. """

from django.apps import AppConfig


class HamiltonianConfig(AppConfig):
    name = 'coulombqed.apps.hamiltonian'
    verbose_name = "Lattice Hamiltonian"
