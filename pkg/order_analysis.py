"""Lorenz curves, majorization and the total score of one publication.

Arrays are ranked in decreasing order, so ``X <=_L X'`` means X is the more
even array: its Lorenz curve lies on or below that of X'. The classical
Lorenz curve ranks increasingly; this module does not.
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
import pandas as pd

from credit_core import as_k
from utils.errors import DomainError

logger = logging.getLogger(__name__)

TOLERANCE = 1e-12


def _as_array(values, name="values"):
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        raise DomainError(f"{name} must be a non-empty 1D array, got shape {values.shape}")
    if np.any(~np.isfinite(values)) or np.any(values < 0):
        raise DomainError(f"{name} must be finite and non-negative")
    return values


@dataclass(frozen=True)
class LorenzCurve:
    x: np.ndarray
    y: np.ndarray

    @property
    def points(self):
        return list(zip(self.x.tolist(), self.y.tolist()))

    def to_frame(self):
        return pd.DataFrame({"x": self.x, "y": self.y})


def lorenz_curve(values):
    """Vertices (k/N, share of the k largest values), k = 0..N."""
    values = _as_array(values)
    total = values.sum()
    if total <= 0:
        raise DomainError("Lorenz curve needs at least one positive value")
    ranked = np.sort(values)[::-1]
    y = np.concatenate([[0.0], np.cumsum(ranked) / total])
    y[-1] = 1.0
    x = np.arange(values.size + 1) / values.size
    return LorenzCurve(x=x, y=y)


class Majorization(str, Enum):
    LESS_OR_EQUAL = "LessOrEqual"
    GREATER_OR_EQUAL = "GreaterOrEqual"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


def partial_sums(values, normalize=True):
    values = np.sort(_as_array(values))[::-1]
    sums = np.cumsum(values)
    if normalize:
        if sums[-1] <= 0:
            raise DomainError("cannot normalise an all-zero array")
        sums = sums / sums[-1]
    return sums


def majorization_compare(x, x_prime, tolerance=TOLERANCE):
    """Compare two equal-length arrays under the majorization order."""
    x = _as_array(x, "X")
    x_prime = _as_array(x_prime, "X'")
    if x.size != x_prime.size:
        raise DomainError(f"arrays must have the same length, got {x.size} and {x_prime.size}")

    # equal totals: raw partial sums, no division needed
    normalize = not np.isclose(x.sum(), x_prime.sum(), rtol=0, atol=tolerance)
    left = partial_sums(x, normalize)
    right = partial_sums(x_prime, normalize)
    below = bool(np.all(left <= right + tolerance))
    above = bool(np.all(left >= right - tolerance))
    if below and above:
        return Majorization.EQUAL
    if below:
        return Majorization.LESS_OR_EQUAL
    if above:
        return Majorization.GREATER_OR_EQUAL
    return Majorization.INCOMPARABLE


def shares_from_counts(counts):
    counts = _as_array(counts, "counts")
    total = counts.sum()
    if total <= 0:
        raise DomainError("counts must not all be zero")
    return counts / total


def _check_shares(shares):
    shares = _as_array(shares, "shares")
    if np.any(shares > 1):
        raise DomainError(f"shares must lie in [0, 1], got {shares.tolist()}")
    return shares


def diversity_sum(shares, k):
    """Total score of one publication, sum_j b_j^(1/k)."""
    shares = _check_shares(shares)
    k = as_k(k)
    if k.is_infinite:
        return float(np.count_nonzero(shares))
    return float(np.sum(np.power(shares, k.exponent)))


def percentage_of_total(target_share, all_shares, k):
    """Target's score as a percentage of the publication's total score."""
    shares = _check_shares(all_shares)
    if not np.any(np.isclose(shares, target_share, rtol=0, atol=TOLERANCE)):
        raise DomainError(f"target share {target_share} is not one of {shares.tolist()}")
    k = as_k(k)
    total = diversity_sum(shares, k)
    if total <= 0:
        raise DomainError("total score is zero")
    if k.is_infinite:
        target_score = 1.0 if target_share > 0 else 0.0
    else:
        target_score = float(target_share) ** k.exponent
    return 100.0 * target_score / total


def robin_hood_transfer(values, giver, receiver, amount):
    """Move ``amount`` from a larger entry to a smaller one without reversing their order."""
    values = _as_array(values).copy()
    for index in (giver, receiver):
        if not 0 <= index < values.size:
            raise DomainError(f"index {index} out of range for {values.size} values")
    if amount <= 0:
        raise DomainError(f"transfer amount must be positive, got {amount}")
    if values[giver] - amount < values[receiver] + amount:
        raise DomainError(
            f"transfer of {amount} from {values[giver]} to {values[receiver]} would reverse their order"
        )
    values[giver] -= amount
    values[receiver] += amount
    return values
