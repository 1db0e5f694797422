"""Pairwise combination of query context representations per topic.

A topic carries a query (its keyword representation) plus four textual
context representations.  Every unordered pair of context representations
is combined with the consensus operator, and every ordered pair with the
recommendation operator: term sets are extracted at a preprocessing level,
turned into evidence counts against the query, mapped to opinions, fused,
and summarised by the probability expectation of the fused opinion.  The
per-topic expectations are aggregated into one combination probability per
(level, pair, operator, order) cell, mirroring the layout of a published
combination table.

Aggregation across topics is either MACRO (mean of per-topic expectations,
the default) or POOLED (evidence counts summed over all topics before a
single mapping and fusion).
"""

from __future__ import annotations

import enum
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import IO, Iterable, Sequence

from .evidence import (
    EvidencePair,
    PositiveRule,
    consensus_evidence,
    recommendation_evidence,
)
from .opinions import EvidenceCounts, Opinion, consensus, expectation, from_evidence, recommendation
from .textprep import PrepLevel, tokenize

#: The four context representations combined pairwise; the keyword
#: representation always plays the role of the query.
REPRESENTATIONS = ("information_need", "background", "work_task", "ideal_answer")

TOPIC_FIELDS = ("id", "information_need", "background", "work_task", "ideal_answer", "keywords")

DEFAULT_ALPHA = 0.5


class EmptyTopicListError(ValueError):
    """Raised when a combination matrix is requested for zero topics."""


class TopicParseError(ValueError):
    """Raised for malformed topic records, with a 1-based line number."""


class FusionOperator(enum.Enum):
    CONSENSUS = "consensus"
    RECOMMENDATION = "recommendation"


class CombinationOrder(enum.Enum):
    """Operand order for the non-commutative recommendation operator.

    AB discounts rep_b's opinion by trust derived from rep_a's evidence;
    BA swaps the roles.  Consensus ignores the order.
    """

    AB = "AB"
    BA = "BA"


class AggregationMode(enum.Enum):
    MACRO = "macro"
    POOLED = "pooled"


@dataclass(frozen=True)
class Topic:
    """One query with its five textual representations."""

    id: str
    information_need: str
    background: str
    work_task: str
    ideal_answer: str
    keywords: str

    def __post_init__(self) -> None:
        if not self.id.strip():
            raise ValueError("topic id must be nonempty")
        if not self.keywords.strip():
            raise ValueError(f"topic {self.id!r}: keywords must be nonempty")

    def representation(self, name: str) -> str:
        if name not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {name!r}")
        return getattr(self, name)


@dataclass(frozen=True)
class CombinationSpec:
    """One cell of the combination matrix."""

    rep_a: str
    rep_b: str
    operator: FusionOperator
    level: PrepLevel
    alpha: float = DEFAULT_ALPHA
    positive_rule: PositiveRule = PositiveRule.UNION
    order: CombinationOrder | None = None

    def __post_init__(self) -> None:
        for rep in (self.rep_a, self.rep_b):
            if rep not in REPRESENTATIONS:
                raise ValueError(f"unknown representation {rep!r}")
        if self.rep_a == self.rep_b:
            raise ValueError("rep_a and rep_b must differ")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha outside [0, 1]: {self.alpha!r}")
        if self.operator is FusionOperator.RECOMMENDATION and self.order is None:
            object.__setattr__(self, "order", CombinationOrder.AB)

    @property
    def order_label(self) -> str:
        if self.operator is FusionOperator.CONSENSUS:
            return "-"
        return self.order.value  # type: ignore[union-attr]


@dataclass(frozen=True)
class CombinationResult:
    spec: CombinationSpec
    per_topic: tuple[tuple[str, Opinion, float], ...]
    aggregate_probability: float


def topic_evidence(topic: Topic, spec: CombinationSpec) -> EvidencePair:
    """Extract the (rep_a, rep_b) evidence counts for one topic."""
    query = tokenize(topic.keywords, spec.level)
    set_a = tokenize(topic.representation(spec.rep_a), spec.level)
    set_b = tokenize(topic.representation(spec.rep_b), spec.level)
    if spec.operator is FusionOperator.CONSENSUS:
        return consensus_evidence(set_a, set_b, query, spec.positive_rule)
    return recommendation_evidence(set_a, set_b, query)


def _fuse(pair: EvidencePair, spec: CombinationSpec) -> Opinion:
    opinion_a = from_evidence(pair.for_a, spec.alpha)
    opinion_b = from_evidence(pair.for_b, spec.alpha)
    if spec.operator is FusionOperator.CONSENSUS:
        return consensus(opinion_a, opinion_b)
    if spec.order is CombinationOrder.AB:
        return recommendation(trust=opinion_a, advice=opinion_b)
    return recommendation(trust=opinion_b, advice=opinion_a)


def combine_topic(topic: Topic, spec: CombinationSpec) -> tuple[Opinion, float]:
    """Fuse one topic's pair of representations; returns (opinion, expectation)."""
    fused = _fuse(topic_evidence(topic, spec), spec)
    return fused, expectation(fused)


def matrix_specs(
    level: PrepLevel,
    alpha: float = DEFAULT_ALPHA,
    positive_rule: PositiveRule = PositiveRule.UNION,
) -> list[CombinationSpec]:
    """All 18 combination cells for one level: 6 consensus + 12 recommendation."""
    specs = []
    for rep_a, rep_b in combinations(REPRESENTATIONS, 2):
        specs.append(
            CombinationSpec(rep_a, rep_b, FusionOperator.CONSENSUS, level, alpha, positive_rule)
        )
    for rep_a, rep_b in combinations(REPRESENTATIONS, 2):
        for order in CombinationOrder:
            specs.append(
                CombinationSpec(
                    rep_a, rep_b, FusionOperator.RECOMMENDATION, level, alpha, positive_rule, order
                )
            )
    return specs


def _pooled_counts(pairs: Iterable[EvidencePair]) -> EvidencePair:
    pos_a = neg_a = pos_b = neg_b = 0
    for pair in pairs:
        pos_a += pair.for_a.positive
        neg_a += pair.for_a.negative
        pos_b += pair.for_b.positive
        neg_b += pair.for_b.negative
    return EvidencePair(EvidenceCounts(pos_a, neg_a), EvidenceCounts(pos_b, neg_b))


def _combine_all(
    topics: Sequence[Topic], spec: CombinationSpec, mode: AggregationMode
) -> CombinationResult:
    pairs = [topic_evidence(topic, spec) for topic in topics]
    per_topic = []
    for topic, pair in zip(topics, pairs):
        fused = _fuse(pair, spec)
        per_topic.append((topic.id, fused, expectation(fused)))
    if mode is AggregationMode.MACRO:
        aggregate = sum(entry[2] for entry in per_topic) / len(per_topic)
    else:
        aggregate = expectation(_fuse(_pooled_counts(pairs), spec))
    return CombinationResult(spec, tuple(per_topic), aggregate)


def run_matrix(
    topics: Sequence[Topic],
    levels: Sequence[PrepLevel],
    alpha: float = DEFAULT_ALPHA,
    positive_rule: PositiveRule = PositiveRule.UNION,
    mode: AggregationMode = AggregationMode.MACRO,
    max_workers: int | None = None,
) -> list[CombinationResult]:
    """Evaluate every combination cell for every level over all topics.

    Cells are independent, so they may be computed by a worker pool; the
    returned order (levels as given, consensus pairs then recommendation
    pairs) does not depend on scheduling.
    """
    topics = list(topics)
    if not topics:
        raise EmptyTopicListError("at least one topic is required")
    specs = [spec for level in levels for spec in matrix_specs(level, alpha, positive_rule)]
    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(lambda spec: _combine_all(topics, spec, mode), specs))
    return [_combine_all(topics, spec, mode) for spec in specs]


def rank_combinations(results: Sequence[CombinationResult]) -> list[CombinationResult]:
    """Order results by descending probability; ties resolve lexicographically."""
    if not results:
        raise ValueError("no combination results to rank")
    return sorted(
        results,
        key=lambda res: (
            -res.aggregate_probability,
            res.spec.operator.value,
            res.spec.rep_a,
            res.spec.rep_b,
            res.spec.order_label,
        ),
    )


def parse_topics(lines: Iterable[str]) -> list[Topic]:
    """Parse line-delimited JSON topic records with exactly the six fields."""
    topics = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TopicParseError(f"line {number}: invalid JSON ({exc.msg})") from exc
        if not isinstance(record, dict):
            raise TopicParseError(f"line {number}: expected an object")
        unknown = sorted(set(record) - set(TOPIC_FIELDS))
        if unknown:
            raise TopicParseError(f"line {number}: unknown fields {unknown}")
        missing = sorted(set(TOPIC_FIELDS) - set(record))
        if missing:
            raise TopicParseError(f"line {number}: missing fields {missing}")
        if not all(isinstance(record[field], str) for field in TOPIC_FIELDS):
            raise TopicParseError(f"line {number}: all fields must be strings")
        try:
            topics.append(Topic(**record))
        except ValueError as exc:
            raise TopicParseError(f"line {number}: {exc}") from exc
    return topics


def load_topics(path: str | Path) -> list[Topic]:
    with open(path, encoding="utf-8") as fh:
        return parse_topics(fh)


REPORT_HEADER = ("level", "operator", "rep_a", "rep_b", "order", "probability")


def write_report(
    results: Sequence[CombinationResult],
    stream: IO[str],
    mark_best: bool = False,
) -> None:
    """Write the combination table as TSV with 4-decimal probabilities.

    With ``mark_best`` an extra column flags the maximum probability within
    each (level, operator, order) column, the plain-text equivalent of the
    bold entries in the published table layout.
    """
    header = REPORT_HEADER + (("best",) if mark_best else ())
    stream.write("\t".join(header) + "\n")
    best_keys = set()
    if mark_best:
        column_max: dict[tuple, float] = {}
        for res in results:
            key = (res.spec.level, res.spec.operator, res.spec.order_label)
            value = column_max.get(key)
            if value is None or res.aggregate_probability > value:
                column_max[key] = res.aggregate_probability
        for res in results:
            key = (res.spec.level, res.spec.operator, res.spec.order_label)
            if res.aggregate_probability == column_max[key]:
                best_keys.add(id(res))
    for res in results:
        row = [
            res.spec.level.value,
            res.spec.operator.value,
            res.spec.rep_a,
            res.spec.rep_b,
            res.spec.order_label,
            f"{res.aggregate_probability:.4f}",
        ]
        if mark_best:
            row.append("*" if id(res) in best_keys else "")
        stream.write("\t".join(row) + "\n")
