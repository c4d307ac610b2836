"""
Tests for the per-piece gate-cost model.
"""
import unittest

import pytest

from coulombqed.apps.hamiltonian.tests.factories import FermionParamsFactory, ParamsFactory
from coulombqed.apps.lattice.geometry import LatticeGeometry
from coulombqed.apps.trotter.partition import partition

from ..costs import gate_cost_report, jw_worst_case_overhead, longest_string


class TestGateCostReport(unittest.TestCase):
    """
    Asymptotic entries instantiated at small parameters.
    """

    def test_entries(self):
        report = gate_cost_report(FermionParamsFactory(dims=(2, 2, 2)), n_a=3)
        assert report.qft_per_register == 9
        assert report.entry('H_C').count == 64
        assert report.entry('H_A').count == 64
        assert report.entry('H_f').count == pytest.approx(32.0)
        assert report.entry('H_Pi').count == 2 * 24 * 9 + 64
        assert report.total == pytest.approx(sum(entry.count for entry in report.entries))
        assert report.structural is None

    def test_unknown_entry(self):
        with pytest.raises(KeyError):
            gate_cost_report(FermionParamsFactory(), n_a=1).entry('H_X')

    def test_jw_overheads(self):
        assert jw_worst_case_overhead(LatticeGeometry((4, 4, 4))) == 64
        assert jw_worst_case_overhead(LatticeGeometry((2, 1, 1))) == 4
        assert gate_cost_report(FermionParamsFactory(), n_a=1).jw_onsite_overhead == 1

    def test_structural_counts(self):
        params = ParamsFactory()
        plan = partition(params)
        report = gate_cost_report(params, n_a=1, plan=plan)
        assert report.structural['H_Pi'] == 3
        assert report.structural['H_A'] == 1
        assert list(report.structural) == [piece.name for piece in plan.pieces]
        assert report.longest_string == longest_string(plan)

    def test_longest_string_follows_snake(self):
        # gamma^0 joins components 0 and 2 across the bond: positions 0 and 6.
        assert longest_string(partition(FermionParamsFactory())) == 5

    def test_as_dict(self):
        record = gate_cost_report(FermionParamsFactory(), n_a=2).as_dict()
        assert record['total'] == pytest.approx(sum(entry['count'] for entry in record['entries']))
        assert record['qft_per_register'] == 4
