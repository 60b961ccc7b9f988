"""Point counts, Betti numbers and Euler characteristics of moduli of twisted Higgs bundles.

The central objects are the universal polynomials ``H_{g,n,p}`` in the
Frobenius eigenvalues of a curve; everything else is built by averaging,
dividing and specializing them.
"""

from .counting import (
    CoverDatum,
    EvalPrecision,
    WeilDatum,
    count_M,
    count_M_fixed_det,
    count_N_trace0,
    validate_weil,
    verify_comparison,
)
from .oracle import count_p1_rank1, count_p1_rank2
from .partitions import Partition, enumerate_partitions
from .polyalg import FactoredRational, LaurentPoly
from .scalars import Cyclotomic
from .topology import euler_characteristic, gcd_lemma_check, poincare_polynomial
from .twist import flat_h, flat_h_tilde, flat_value_at_one, twisted_h, twisted_h_tilde
from .universal import hcal, universal_h

__version__ = "0.1.0"

__all__ = [
    "CoverDatum",
    "Cyclotomic",
    "EvalPrecision",
    "FactoredRational",
    "LaurentPoly",
    "Partition",
    "WeilDatum",
    "count_M",
    "count_M_fixed_det",
    "count_N_trace0",
    "count_p1_rank1",
    "count_p1_rank2",
    "enumerate_partitions",
    "euler_characteristic",
    "flat_h",
    "flat_h_tilde",
    "flat_value_at_one",
    "gcd_lemma_check",
    "hcal",
    "poincare_polynomial",
    "twisted_h",
    "twisted_h_tilde",
    "universal_h",
    "validate_weil",
    "verify_comparison",
]
