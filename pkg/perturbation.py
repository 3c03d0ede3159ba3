"""How scores move when authors or entities are added to one publication.

Entities (institutes, countries) are scored on their share a_j / T of the
byline, raised to 1/k. Adding authors changes the shares; the functions here
report the old and new score of every original entity and the direction of
the change.
"""
import logging
import numbers
import statistics
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
import pandas as pd

from credit_core import as_k, exact_root, mfc_author
from utils.errors import DomainError

logger = logging.getLogger(__name__)

TOLERANCE = 1e-12


class Direction(str, Enum):
    INCREASE = "increase"
    UNCHANGED = "unchanged"
    DECREASE = "decrease"

    @property
    def symbol(self):
        return {"increase": "↑", "unchanged": "=", "decrease": "↓"}[self.value]


def classify(old, new, tolerance=TOLERANCE):
    """Exact comparison for rationals, absolute tolerance for floats."""
    if isinstance(old, Fraction) and isinstance(new, Fraction):
        difference = new - old
        if difference == 0:
            return Direction.UNCHANGED
    else:
        difference = float(new) - float(old)
        if abs(difference) <= tolerance:
            return Direction.UNCHANGED
    return Direction.INCREASE if difference > 0 else Direction.DECREASE


def _exact(value):
    if isinstance(value, bool):
        raise DomainError(f"count must be a number, got {value!r}")
    if isinstance(value, (Fraction, numbers.Integral, np.integer)):
        return Fraction(int(value)) if not isinstance(value, Fraction) else value
    if isinstance(value, (numbers.Real, np.floating)):
        return float(value)
    raise DomainError(f"count must be a number, got {value!r}")


@dataclass(frozen=True)
class ParticipationArray:
    """Per-entity author counts (a_1, ..., a_M) within one publication."""

    counts: tuple

    def __post_init__(self):
        counts = tuple(_exact(value) for value in self.counts)
        if not counts:
            raise DomainError("participation array must hold at least one entity")
        if any(not value > 0 for value in counts):
            raise DomainError(f"participation counts must be positive, got {counts}")
        if not all(isinstance(value, Fraction) for value in counts):
            counts = tuple(float(value) for value in counts)
        object.__setattr__(self, "counts", counts)

    @property
    def size(self):
        return len(self.counts)

    @property
    def total(self):
        """T."""
        return sum(self.counts, Fraction(0)) if self.is_exact else float(np.sum(self.counts))

    @property
    def mean(self):
        """mu = T / M."""
        return self.total / self.size

    @property
    def median(self):
        """Md; mean of the two central values for even M."""
        return statistics.median(self.counts)

    @property
    def is_exact(self):
        return all(isinstance(value, Fraction) for value in self.counts)

    @property
    def is_sorted(self):
        return all(a <= b for a, b in zip(self.counts, self.counts[1:]))

    def shares(self):
        total = self.total
        return [value / total for value in self.counts]

    def _coerce(self, value):
        value = _exact(value)
        if not self.is_exact:
            value = float(value)
        return value


@dataclass(frozen=True)
class EntityEffect:
    label: str
    old_share: object
    new_share: object
    old_score: object
    new_score: object
    direction: Direction


@dataclass(frozen=True)
class EffectReport:
    """Effects on each original entity. ``basis`` says whether directions
    compare shares or scores."""

    effects: tuple
    basis: str
    mean: object = None
    median: object = None

    @property
    def directions(self):
        return [effect.direction for effect in self.effects]

    def to_frame(self):
        return pd.DataFrame(
            {
                "entity": [effect.label for effect in self.effects],
                "old_share": [effect.old_share for effect in self.effects],
                "new_share": [effect.new_share for effect in self.effects],
                "old_score": [effect.old_score for effect in self.effects],
                "new_score": [effect.new_score for effect in self.effects],
                "direction": [effect.direction.symbol for effect in self.effects],
            }
        )


def _effect(label, old_share, new_share, k, basis):
    old_score = exact_root(old_share, k)
    new_score = exact_root(new_share, k)
    if basis == "share":
        direction = classify(old_share, new_share)
    else:
        direction = classify(old_score, new_score)
    return EntityEffect(label, old_share, new_share, old_score, new_score, direction)


def add_author_effect(n_authors, k):
    """Score of an original author when an (N+1)-th author joins."""
    k = as_k(k)
    old = mfc_author(n_authors, k)
    new = mfc_author(n_authors + 1, k)
    effect = EntityEffect(
        label="author",
        old_share=Fraction(1, n_authors),
        new_share=Fraction(1, n_authors + 1),
        old_score=old,
        new_score=new,
        direction=classify(old, new),
    )
    return EffectReport(effects=(effect,), basis="score")


def entity_share_score(a_j, total, k):
    """(a_j / T)^(1/k)."""
    a_j, total = _exact(a_j), _exact(total)
    if not 0 < a_j <= total:
        raise DomainError(f"entity count must satisfy 0 < a_j <= T, got a_j={a_j}, T={total}")
    return exact_root(a_j / total, k)


def _positive(value, name):
    value = _exact(value)
    if not value > 0:
        raise DomainError(f"{name} must be positive, got {value}")
    return value


def add_entity_effect(array, new_entity_count, k):
    """A new entity joins with ``new_entity_count`` authors; every original share shrinks."""
    k = as_k(k)
    added = array._coerce(_positive(new_entity_count, "new entity count"))
    total = array.total
    new_total = total + added
    effects = tuple(
        _effect(f"entity {i + 1}", a / total, a / new_total, k, basis="share")
        for i, a in enumerate(array.counts)
    )
    return EffectReport(effects=effects, basis="share", mean=array.mean, median=array.median)


def entity_adds_authors_effect(array, entity_index, added, k):
    """Entity ``entity_index`` (0-based) adds authors; others lose, it gains (finite k)."""
    k = as_k(k)
    if isinstance(entity_index, bool) or not isinstance(entity_index, (numbers.Integral, np.integer)):
        raise DomainError(f"entity index must be an integer, got {entity_index!r}")
    if not 0 <= entity_index < array.size:
        raise DomainError(f"entity index {entity_index} out of range for {array.size} entities")
    added = array._coerce(_positive(added, "number of added authors"))
    total = array.total
    new_total = total + added
    effects = []
    for i, a in enumerate(array.counts):
        new_a = a + added if i == entity_index else a
        effects.append(_effect(f"entity {i + 1}", a / total, new_a / new_total, k, basis="score"))
    return EffectReport(effects=tuple(effects), basis="score", mean=array.mean, median=array.median)


def uniform_addition_effect(array, a, k):
    """Every entity adds ``a`` authors; entities below the mean gain, above it lose."""
    k = as_k(k)
    a = array._coerce(_positive(a, "number of added authors"))
    total = array.total
    new_total = total + array.size * a
    effects = tuple(
        _effect(f"entity {i + 1}", a_j / total, (a_j + a) / new_total, k, basis="share")
        for i, a_j in enumerate(array.counts)
    )
    return EffectReport(effects=effects, basis="share", mean=array.mean, median=array.median)


def median_threshold_indices(array):
    """0-based indices i with a_i <= Md/2 in an increasingly sorted array.

    Every such entity, and every entity before it, gains (or keeps) its score
    under a uniform addition. The set may be empty, e.g. for (3, 4, 4).
    """
    if not array.is_sorted:
        raise DomainError(f"participation array must be sorted increasingly, got {array.counts}")
    threshold = array.median / 2
    return tuple(i for i, value in enumerate(array.counts) if value <= threshold)
