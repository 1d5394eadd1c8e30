"""Atomic conformal measures on the Exel-Laca space X_A of the renewal shift."""

from .conformal import (
    AtomicMeasure,
    SeriesReport,
    check_denker_urbanski,
    check_eigenmeasure,
    check_quasi_invariance,
    check_sarig,
    classify_series,
    coefficient,
    example_alpha,
    example_superexp,
    scan_beta,
    solve_renewal,
    verify_measure,
)
from .reals import Log
from .shift_core import count_stems, enumerate_stems, renewal_matrix
from .transfer import Potential, constant_potential, first_coordinate_potential, per_length_potential

__version__ = "0.1.0"
