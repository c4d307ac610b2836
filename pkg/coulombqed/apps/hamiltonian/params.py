"""
Parameters of a lattice Hamiltonian build and the qubit register they imply.
"""
import attr
import numpy as np

from coulombqed.apps.core.constants import Sector
from coulombqed.apps.core.exceptions import ConfigurationError, DomainError
from coulombqed.apps.encoding.gauge import FieldGrid
from coulombqed.apps.lattice.geometry import LatticeGeometry
from coulombqed.apps.lattice.snake import SPINOR_COMPONENTS, snake_path


def _non_negative(instance, attribute, value):
    if not value >= 0:
        raise DomainError(f"{attribute.name} must be >= 0, got {value}")


def _positive(instance, attribute, value):
    if not value > 0:
        raise DomainError(f"{attribute.name} must be positive, got {value}")


def _finite(instance, attribute, value):
    if not np.isfinite(value):
        raise DomainError(f"{attribute.name} must be finite, got {value}")


@attr.s(frozen=True)
class HamiltonianParams:
    """
    Coupling, mass, Wilson coefficient, geometry and the gauge field grids.

    ``grid`` is either one ``FieldGrid`` shared by every gauge mode or a
    sequence with one grid per mode (``3 V`` of them). All grids must have the
    same number of qubits.
    """
    geometry = attr.ib(type=LatticeGeometry)
    g = attr.ib(type=float, converter=float, default=0.0, validator=_finite)
    mass = attr.ib(type=float, converter=float, default=0.0, validator=[_finite, _non_negative])
    wilson = attr.ib(type=float, converter=float, default=1.0, validator=[_finite, _positive])
    grid = attr.ib(default=None)
    sector = attr.ib(type=str, default=Sector.COUPLED, validator=attr.validators.in_(Sector.CHOICES))
    transverse_coupling = attr.ib(type=bool, default=True)

    def __attrs_post_init__(self):
        if not self.has_gauge:
            return
        if self.grid is None:
            raise ConfigurationError(f"the {self.sector} sector needs a field grid")
        grids = self.grids
        if len(grids) != self.geometry.n_gauge_modes:
            raise ConfigurationError(
                f"expected {self.geometry.n_gauge_modes} field grids, got {len(grids)}"
            )
        if any(not isinstance(grid, FieldGrid) for grid in grids):
            raise ConfigurationError("every gauge mode needs a FieldGrid")
        if len({grid.n_qubits for grid in grids}) != 1:
            raise ConfigurationError("all field grids must use the same number of qubits")

    @property
    def has_gauge(self):
        return self.sector in (Sector.COUPLED, Sector.GAUGE)

    @property
    def has_fermion(self):
        return self.sector in (Sector.COUPLED, Sector.FERMION)

    @property
    def grids(self):
        if self.grid is None:
            return ()
        if isinstance(self.grid, FieldGrid):
            return (self.grid,) * self.geometry.n_gauge_modes
        return tuple(self.grid)

    @property
    def n_a(self):
        return self.grids[0].n_qubits if self.has_gauge else 0

    @property
    def path(self):
        return snake_path(self.geometry)

    @property
    def layout(self):
        return RegisterLayout.for_params(self)


@attr.s(frozen=True)
class RegisterLayout:
    """
    Qubit layout of the combined register.

    Gauge registers come first in mode order ``3 * site + direction`` with
    ``n_a`` qubits each; the ``4 V`` fermion qubits follow in Jordan-Wigner order.
    """
    n_gauge_modes = attr.ib(type=int)
    n_a = attr.ib(type=int)
    n_fermion_modes = attr.ib(type=int)

    @classmethod
    def for_params(cls, params):
        volume = params.geometry.volume
        return cls(
            n_gauge_modes=3 * volume if params.has_gauge else 0,
            n_a=params.n_a,
            n_fermion_modes=SPINOR_COMPONENTS * volume if params.has_fermion else 0,
        )

    @property
    def gauge_qubits(self):
        return self.n_gauge_modes * self.n_a

    @property
    def total_qubits(self):
        return self.gauge_qubits + self.n_fermion_modes

    @property
    def levels(self):
        return 2 ** self.n_a

    @property
    def gauge_dimension(self):
        return 2 ** self.gauge_qubits

    @property
    def fermion_dimension(self):
        return 2 ** self.n_fermion_modes

    @property
    def dimension(self):
        return self.gauge_dimension * self.fermion_dimension

    def gauge_qubit_indices(self, mode):
        return list(range(mode * self.n_a, (mode + 1) * self.n_a))

    def fermion_qubit(self, position):
        return self.gauge_qubits + position

    @property
    def gauge_shape(self):
        """Tensor shape of a state whose gauge modes are split into separate axes."""
        return (self.levels,) * self.n_gauge_modes + (self.fermion_dimension,)


def level_indices(layout):
    """(gauge_dimension, n_gauge_modes) array of the level held by every mode."""
    indices = np.arange(layout.gauge_dimension)[:, None]
    shifts = layout.n_a * np.arange(layout.n_gauge_modes - 1, -1, -1)[None, :]
    return (indices >> shifts) & (layout.levels - 1)


def field_configurations(params):
    """
    Field value of every gauge mode in every gauge basis state.

    Returns a real (gauge_dimension, 3 V) array; row k is the classical field
    configuration labelled by basis state k.
    """
    layout = params.layout
    levels = level_indices(layout)
    values = np.array([grid.values for grid in params.grids])
    return values[np.arange(layout.n_gauge_modes)[None, :], levels]


def conjugate_configurations(params):
    """Like ``field_configurations`` but with conjugate-momentum eigenvalues."""
    layout = params.layout
    levels = level_indices(layout)
    values = np.array([grid.conjugate.values for grid in params.grids])
    return values[np.arange(layout.n_gauge_modes)[None, :], levels]
