"""
Snake-shaped site ordering used by the Jordan-Wigner encoding.
"""
import attr

SPINOR_COMPONENTS = 4


@attr.s(frozen=True)
class SnakePath:
    """
    Sites in path order plus the inverse lookup.

    ``position(site, alpha)`` is the Jordan-Wigner position l = 4 n + alpha
    where n is the site's place along the path.
    """
    order = attr.ib(converter=tuple)
    _positions = attr.ib(init=False, repr=False, eq=False)

    def __attrs_post_init__(self):
        object.__setattr__(self, '_positions', {site: n for n, site in enumerate(self.order)})

    @property
    def n_modes(self):
        return SPINOR_COMPONENTS * len(self.order)

    def path_position(self, site):
        return self._positions[site]

    def position(self, site, alpha):
        return SPINOR_COMPONENTS * self._positions[site] + alpha

    def mode_at(self, position):
        """(site, alpha) living at JW position ``position``."""
        return self.order[position // SPINOR_COMPONENTS], position % SPINOR_COMPONENTS

    def as_mapping(self):
        return {
            (site, alpha): self.position(site, alpha)
            for site in self.order
            for alpha in range(SPINOR_COMPONENTS)
        }


def snake_path(geom):
    """
    Boustrophedon traversal: rows along z, rows stacked along y, planes along x.

    Row direction flips after every row and row order flips after every plane,
    so consecutive sites are always one lattice step apart.
    """
    lx, ly, lz = geom.dims
    order = []
    row_count = 0
    for x in range(lx):
        ys = range(ly) if x % 2 == 0 else range(ly - 1, -1, -1)
        for y in ys:
            zs = range(lz) if row_count % 2 == 0 else range(lz - 1, -1, -1)
            order.extend(geom.site_index((x, y, z)) for z in zs)
            row_count += 1
    return SnakePath(order)
