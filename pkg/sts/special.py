"""
Special functions behind the test p-values.
"""
import math

from scipy import special

from sts.results import InvalidParameterError


def erfc(x: float) -> float:
    """Complementary error function"""
    if math.isnan(x):
        raise InvalidParameterError("erfc: argument is NaN")
    return float(special.erfc(x))


def igamc(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x)"""
    if not a > 0:
        raise InvalidParameterError(f"igamc: a must be positive, got {a}")
    if not x >= 0:
        raise InvalidParameterError(f"igamc: x must be non-negative, got {x}")
    return min(1.0, max(0.0, float(special.gammaincc(a, x))))
