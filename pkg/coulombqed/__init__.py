""" Lattice QED in Coulomb gauge: operator builds, resource bounds and Trotter checks. """

__version__ = '0.3.0'
