from .factored import FactoredRational, rational_normalize
from .laurent import LaurentPoly, NotDivisible, exact_divide, poly_arith, substitute
from .series import TruncSeries, plethystic_exp, plethystic_log

__all__ = [
    "FactoredRational",
    "LaurentPoly",
    "NotDivisible",
    "TruncSeries",
    "exact_divide",
    "plethystic_exp",
    "plethystic_log",
    "poly_arith",
    "rational_normalize",
    "substitute",
]
