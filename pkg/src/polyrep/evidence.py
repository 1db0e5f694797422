"""Positive/negative evidence counts from term-set overlap geometry.

Given the query term set Q and two context representations A and B, each
side's evidence is read off the Venn regions of the three sets.  For the
consensus combination a side's positive evidence counts the terms it shares
with the other representation or with the query; for the recommendation
combination both sides' positive evidence is the shared A-and-B region.
Negative evidence is always the part of a representation that overlaps
neither the other representation nor the query.

The published description of the consensus positive region is ambiguous
between the union and the intersection of the two overlap lenses; the
union reading (which matches the shaded figures) is the default, and
:class:`PositiveRule` exposes both.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import AbstractSet

from .opinions import EvidenceCounts


class PositiveRule(enum.Enum):
    """How consensus positive evidence combines the two overlap regions."""

    UNION = "union"
    INTERSECTION = "intersection"


@dataclass(frozen=True)
class EvidencePair:
    """Evidence counts for the two combined representations."""

    for_a: EvidenceCounts
    for_b: EvidenceCounts


def consensus_evidence(
    a: AbstractSet[str],
    b: AbstractSet[str],
    q: AbstractSet[str],
    rule: PositiveRule = PositiveRule.UNION,
) -> EvidencePair:
    """Evidence for the independent (consensus) combination of A and B."""
    if rule is PositiveRule.UNION:
        positive_a = len((a & b) | (a & q))
        positive_b = len((a & b) | (b & q))
    else:
        positive_a = positive_b = len(a & b & q)
    return EvidencePair(
        for_a=EvidenceCounts(positive_a, len(a - (b | q))),
        for_b=EvidenceCounts(positive_b, len(b - (a | q))),
    )


def recommendation_evidence(
    a: AbstractSet[str],
    b: AbstractSet[str],
    q: AbstractSet[str],
) -> EvidencePair:
    """Evidence for the dependent (recommendation) combination of A and B.

    Both sides' positive evidence is the shared region |A and B|; negative
    evidence is the same per-side region as in the consensus combination.
    """
    shared = len(a & b)
    return EvidencePair(
        for_a=EvidenceCounts(shared, len(a - (b | q))),
        for_b=EvidenceCounts(shared, len(b - (a | q))),
    )
