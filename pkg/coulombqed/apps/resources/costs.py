"""
Per-piece gate-cost model.

Asymptotic entries instantiate the scaling of each piece with unit
constants. Structural entries count the abstract operations the circuit
emitter produces per Trotter step.
"""
import attr

from coulombqed.apps.cli.circuit import structural_counts


@attr.s(frozen=True)
class GateCost:
    piece = attr.ib(type=str)
    formula = attr.ib(type=str)
    count = attr.ib(type=float)


@attr.s(frozen=True)
class GateCostReport:
    """
    Cost entries per piece, their total and the Jordan-Wigner string overheads.
    """
    entries = attr.ib(converter=tuple)
    qft_per_register = attr.ib(type=int)
    jw_onsite_overhead = attr.ib(type=int)
    jw_worst_case_overhead = attr.ib(type=int)
    structural = attr.ib(default=None)
    longest_string = attr.ib(default=None)

    @property
    def total(self):
        return sum(entry.count for entry in self.entries)

    def entry(self, piece):
        for entry in self.entries:
            if entry.piece == piece:
                return entry
        raise KeyError(piece)

    def as_dict(self):
        return {
            'entries': [attr.asdict(entry) for entry in self.entries],
            'total': self.total,
            'qft_per_register': self.qft_per_register,
            'jw_onsite_overhead': self.jw_onsite_overhead,
            'jw_worst_case_overhead': self.jw_worst_case_overhead,
            'structural': self.structural,
            'longest_string': self.longest_string,
        }


def jw_worst_case_overhead(geom):
    """4 L_y L_z: the Z string of a bond between neighbouring planes of the snake, O(L^2) when cubic."""
    _, ly, lz = geom.dims
    return 4 * ly * lz


def longest_string(plan):
    """Longest interior Z string over every hopping unit of ``plan``."""
    lengths = [
        abs(term.mode_a.position - term.mode_b.position) - 1
        for piece in plan.pieces for term in piece.terms
        if getattr(term, 'kind', None) == 'hop'
    ]
    return max(lengths, default=0)


def gate_cost_report(params, n_a, plan=None):
    """
    Instantiate the per-piece cost scalings at ``params`` and register size ``n_a``.

    With a TrotterPlan the structural per-step operation counts are attached.
    """
    volume = params.geometry.volume
    levels = 2 ** n_a
    entries = [
        GateCost('H_Pi', '2 * 3V * n_A^2 + V * 2^n_A', 2 * 3 * volume * n_a ** 2 + volume * levels),
        GateCost('H_A', 'V * 2^n_A', volume * levels),
        GateCost('H_I', 'V * 2^n_A', volume * levels),
        GateCost('H_C', 'V^2', volume ** 2),
        GateCost('H_f', 'V^(5/3)', volume ** (5.0 / 3.0)),
    ]
    return GateCostReport(
        entries=entries,
        qft_per_register=n_a ** 2,
        jw_onsite_overhead=1,
        jw_worst_case_overhead=jw_worst_case_overhead(params.geometry),
        structural=structural_counts(plan) if plan is not None else None,
        longest_string=longest_string(plan) if plan is not None else None,
    )
