"""Author-level credit for one N-author article.

MFC_k gives each author (1/N)^(1/k). k = 1 is complete-normalized fractional
counting, k = inf is full counting, and every k in between is the weighted
geometric average of those two extremes with weight lambda = 1/k.
"""
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import gmean, hmean

from utils.errors import DomainError

INFINITY = math.inf
INFINITY_TOKENS = ("inf", "infinity", "+inf", "∞")


@dataclass(frozen=True)
class KParam:
    """Point on the fractional (k=1) to full (k=inf) counting continuum."""

    value: float

    def __post_init__(self):
        value = self.value
        if isinstance(value, KParam):
            value = value.value
        if isinstance(value, bool) or not isinstance(value, (numbers.Real, np.floating, np.integer)):
            raise DomainError(f"k must be a real number >= 1 or inf, got {value!r}")
        value = float(value)
        if math.isnan(value) or value < 1:
            raise DomainError(f"k must be >= 1, got {value}")
        object.__setattr__(self, "value", value)

    @classmethod
    def parse(cls, text):
        """Accept decimal text or the token ``inf``."""
        if isinstance(text, (KParam, numbers.Real)):
            return as_k(text)
        token = str(text).strip().lower()
        if token in INFINITY_TOKENS:
            return cls(INFINITY)
        try:
            value = float(token)
        except ValueError:
            raise DomainError(f"k must be a number >= 1 or 'inf', got {text!r}") from None
        return cls(value)

    @property
    def is_infinite(self):
        return math.isinf(self.value)

    @property
    def is_fractional(self):
        return self.value == 1

    @property
    def exponent(self):
        """1/k, with 1/inf = 0."""
        return 0.0 if self.is_infinite else 1.0 / self.value

    def __str__(self):
        if self.is_infinite:
            return "inf"
        if self.value.is_integer():
            return str(int(self.value))
        return repr(self.value)


FULL_COUNTING = KParam(INFINITY)
FRACTIONAL_COUNTING = KParam(1)


def as_k(k):
    if isinstance(k, KParam):
        return k
    if isinstance(k, str):
        return KParam.parse(k)
    return KParam(k)


@dataclass(frozen=True)
class LambdaWeight:
    """Weight on MFC_1 in the geometric bridge W = (lambda, 1 - lambda)."""

    value: float

    def __post_init__(self):
        value = float(self.value.value if isinstance(self.value, LambdaWeight) else self.value)
        if math.isnan(value) or not 0 <= value <= 1:
            raise DomainError(f"lambda must lie in [0, 1], got {value}")
        object.__setattr__(self, "value", value)

    def to_k(self):
        """k = 1/lambda, lambda = 0 maps to full counting."""
        if self.value == 0:
            return FULL_COUNTING
        return KParam(1.0 / self.value)


def as_lambda(lam):
    return lam if isinstance(lam, LambdaWeight) else LambdaWeight(lam)


@dataclass(frozen=True)
class WeightedSample:
    values: tuple
    weights: tuple

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        weights = np.asarray(self.weights, dtype=np.float64)
        if values.ndim != 1 or values.shape != weights.shape or values.size == 0:
            raise DomainError("values and weights must be non-empty 1D arrays of the same length")
        if np.any(~np.isfinite(values)) or np.any(values <= 0):
            raise DomainError("all values must be strictly positive")
        if np.any(weights < 0) or np.any(weights > 1):
            raise DomainError("all weights must lie in [0, 1]")
        if weights.sum() <= 0:
            raise DomainError("the sum of the weights must be positive")
        object.__setattr__(self, "values", tuple(values.tolist()))
        object.__setattr__(self, "weights", tuple(weights.tolist()))

    @property
    def x(self):
        return np.asarray(self.values, dtype=np.float64)

    @property
    def w(self):
        return np.asarray(self.weights, dtype=np.float64)


def _check_authors(n_authors, minimum=1):
    if isinstance(n_authors, bool) or not isinstance(n_authors, (numbers.Integral, np.integer)):
        raise DomainError(f"number of authors must be an integer, got {n_authors!r}")
    if n_authors < minimum:
        raise DomainError(f"number of authors must be >= {minimum}, got {n_authors}")
    return int(n_authors)


def mfc_author(n_authors, k):
    """Credit (1/N)^(1/k) of one author in an N-author article."""
    n = _check_authors(n_authors)
    k = as_k(k)
    if k.is_infinite or n == 1:
        return 1.0
    if k.is_fractional:
        return 1.0 / n
    return (1.0 / n) ** (1.0 / k.value)


def article_total_credit(n_authors, k):
    """Sum of the N author credits, N^((k-1)/k)."""
    n = _check_authors(n_authors)
    k = as_k(k)
    if k.is_infinite:
        return float(n)
    if k.is_fractional:
        return 1.0
    return n * mfc_author(n, k)


def weighted_arithmetic(sample):
    return float(np.average(sample.x, weights=sample.w))


def weighted_geometric(sample):
    return float(gmean(sample.x, weights=sample.w))


def weighted_harmonic(sample):
    return float(hmean(sample.x, weights=sample.w))


def _extremes(n, lam):
    return WeightedSample(values=(1.0 / n, 1.0), weights=(lam.value, 1.0 - lam.value))


def geometric_bridge(n_authors, lam):
    """Weighted geometric average of MFC_1 and MFC_inf, equal to MFC_{1/lambda}."""
    n = _check_authors(n_authors)
    lam = as_lambda(lam)
    if lam.value == 0 or n == 1:
        return 1.0
    return weighted_geometric(_extremes(n, lam))


def arithmetic_bridge(n_authors, lam):
    n = _check_authors(n_authors)
    lam = as_lambda(lam)
    if lam.value == 0:
        return 1.0
    return weighted_arithmetic(_extremes(n, lam))


def harmonic_bridge(n_authors, lam):
    n = _check_authors(n_authors)
    lam = as_lambda(lam)
    if lam.value == 0:
        return 1.0
    return weighted_harmonic(_extremes(n, lam))


def _solve_bounds(n_authors, lam):
    n = _check_authors(n_authors, minimum=2)
    lam = as_lambda(lam)
    return n, lam.value


def solve_k_arithmetic(n_authors, lam):
    """k with MFC_k = lambda/N + (1 - lambda); it depends on N."""
    n, lam = _solve_bounds(n_authors, lam)
    if lam == 0:
        return INFINITY
    if lam == 1:
        return 1.0
    return math.log(1.0 / n) / math.log(lam / n + (1.0 - lam))


def solve_k_harmonic(n_authors, lam):
    """k with MFC_k = 1 / (lambda N + 1 - lambda); it depends on N."""
    n, lam = _solve_bounds(n_authors, lam)
    if lam == 0:
        return INFINITY
    if lam == 1:
        return 1.0
    return math.log(n) / math.log(lam * n + 1.0 - lam)


def sample_mfc_curve(n_authors, k_max=100, grid_size=100):
    """Grid k in [1, k_max] and MFC_k on it."""
    n = _check_authors(n_authors)
    if grid_size < 2:
        raise DomainError(f"grid_size must be >= 2, got {grid_size}")
    if k_max <= 1:
        raise DomainError(f"k_max must be > 1, got {k_max}")
    ks = np.linspace(1.0, float(k_max), int(grid_size))
    return ks, np.power(1.0 / n, 1.0 / ks)


def sample_bridge_curve(n_authors, grid_size=100):
    """Grid lambda in [0, 1] and G_lambda = (1/N)^lambda on it."""
    n = _check_authors(n_authors)
    if grid_size < 2:
        raise DomainError(f"grid_size must be >= 2, got {grid_size}")
    lams = np.linspace(0.0, 1.0, int(grid_size))
    return lams, np.power(1.0 / n, lams)


def exact_root(share, k):
    """share^(1/k) for a share in [0, 1], exact at k = 1 and k = inf.

    0^(1/k) is 0 for every k, including inf.
    """
    k = as_k(k)
    if share == 0:
        return Fraction(0) if isinstance(share, (Fraction, numbers.Integral)) else 0.0
    if k.is_infinite:
        return Fraction(1) if isinstance(share, (Fraction, numbers.Integral)) else 1.0
    if k.is_fractional:
        return share
    return float(share) ** (1.0 / k.value)
