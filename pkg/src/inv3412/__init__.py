"""
inv3412: exact enumeration of involutions by their number of 3412 patterns.

The package computes, for each r >= 0, the generating function of the
involutions containing the pattern 3412 exactly r times, as an exact closed
form in Q(x)[sqrt(1-2x-3x^2)], together with the parity-signed variant in
Q(x)[sqrt(1-2x+5x^2)] and the even/odd splits; a brute-force enumeration
oracle cross-validates every stage.
"""
from .algebra import Poly, QuadExt, RatFunc, SeriesQ, sqrt_series, quadext_series
from .genfun import DISC_I, DISC_N, GenfunEngine, GFResult, emit_closed_form
from .kernels import (
    CellGrid,
    Kernel,
    ShapeRecord,
    classify_cells,
    is_kernel_involution,
    kernel_of,
    psi_shape,
    shape_catalog,
    shape_record,
    validate_catalog,
    validate_classification,
)
from .oracle import (
    CountTable,
    ParityTable,
    brute_parity_table,
    brute_table,
    verify_paper_formulas,
    verify_series_vs_brute,
)
from .perms import (
    count_occurrences_3412,
    count_pattern_21,
    enumerate_involutions,
    involution_count,
    is_involution,
    occurrences_3412,
    reduce_to_pattern,
)

__version__ = "0.1.0"
