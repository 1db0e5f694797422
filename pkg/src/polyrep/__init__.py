"""Subjective-logic combination of query context representations.

The package turns the textual representations of a user's information
need into binomial opinions, fuses them pairwise with the consensus and
recommendation operators, and relates the resulting combination
probabilities to retrieval effectiveness computed from standard run and
judgment files.
"""

from .combine import (
    REPRESENTATIONS,
    AggregationMode,
    CombinationOrder,
    CombinationResult,
    CombinationSpec,
    EmptyTopicListError,
    FusionOperator,
    Topic,
    TopicParseError,
    combine_topic,
    load_topics,
    matrix_specs,
    parse_topics,
    rank_combinations,
    run_matrix,
    write_report,
)
from .evidence import EvidencePair, PositiveRule, consensus_evidence, recommendation_evidence
from .ireval import (
    METRICS,
    Component,
    MetricReport,
    NoOverlapError,
    Qrels,
    QrelsParseError,
    RunList,
    RunParseError,
    TopicAlignmentError,
    ZeroVarianceError,
    average_precision,
    bpref,
    correlate_components,
    evaluate_query,
    evaluate_run,
    mrr,
    ndcg_at,
    parse_qrels,
    parse_run,
    precision_at,
    spearman,
    write_metric_report,
    write_plot_data,
)
from .opinions import (
    DogmaticConflictError,
    EvidenceCounts,
    Opinion,
    consensus,
    expectation,
    from_evidence,
    recommendation,
)
from .porter import porter_stem
from .textprep import PrepLevel, TermSet, is_stopword, tokenize

__version__ = "0.1.0"

__all__ = [
    "AggregationMode",
    "CombinationOrder",
    "CombinationResult",
    "CombinationSpec",
    "Component",
    "DogmaticConflictError",
    "EmptyTopicListError",
    "EvidenceCounts",
    "EvidencePair",
    "FusionOperator",
    "METRICS",
    "MetricReport",
    "NoOverlapError",
    "Opinion",
    "PositiveRule",
    "PrepLevel",
    "Qrels",
    "QrelsParseError",
    "REPRESENTATIONS",
    "RunList",
    "RunParseError",
    "TermSet",
    "Topic",
    "TopicAlignmentError",
    "TopicParseError",
    "ZeroVarianceError",
    "average_precision",
    "bpref",
    "combine_topic",
    "consensus",
    "consensus_evidence",
    "correlate_components",
    "evaluate_query",
    "evaluate_run",
    "expectation",
    "from_evidence",
    "is_stopword",
    "load_topics",
    "matrix_specs",
    "mrr",
    "ndcg_at",
    "parse_qrels",
    "parse_run",
    "parse_topics",
    "porter_stem",
    "precision_at",
    "rank_combinations",
    "recommendation",
    "recommendation_evidence",
    "run_matrix",
    "spearman",
    "tokenize",
    "write_metric_report",
    "write_plot_data",
    "write_report",
]
