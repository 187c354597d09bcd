from .variables import VariableId, U, Ui, A, T, X
from .laurent import LaurentPoly, NotDivisible, exact_divide, render
from .rational import RationalFunction
from .binomial import extended_binomial
from .series import TruncatedSeries, series_invert, ConeSeries

__all__ = [
    "VariableId", "U", "Ui", "A", "T", "X",
    "LaurentPoly", "NotDivisible", "exact_divide", "render",
    "RationalFunction", "extended_binomial",
    "TruncatedSeries", "series_invert", "ConeSeries",
]
