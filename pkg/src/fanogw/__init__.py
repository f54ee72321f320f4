"""Exact genus-1 one-point Gromov-Witten invariants of Fano complete
intersections in projective space, with every ingredient computed by at
least two independent routes."""

from .geometry import MultiDegree
from .hyper import FanoContext
from .invariants import (InvariantRow, chern_degree0_oracle, invariant_row,
                         invariant_table, reduced_invariant,
                         standard_invariant, svr_difference, type_a, type_b)
from .series import (BiSeries, LaurentPoly, QSeries, Rat, WindowUnderflow,
                     ZeroConstantTerm)
from .sums import SumValues, compute_sums, evaluate_conjectures
from .tables import CoeffTables

__all__ = [
    "BiSeries", "CoeffTables", "FanoContext", "InvariantRow", "LaurentPoly",
    "MultiDegree", "QSeries", "Rat", "SumValues", "WindowUnderflow",
    "ZeroConstantTerm", "chern_degree0_oracle", "compute_sums",
    "evaluate_conjectures", "invariant_row", "invariant_table",
    "reduced_invariant", "standard_invariant", "svr_difference", "type_a",
    "type_b",
]
