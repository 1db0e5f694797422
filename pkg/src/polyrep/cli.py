"""Command-line surface for the combination and evaluation pipeline.

Four subcommands cover the workflow end to end:

* ``prep``       dump per-topic term sets for each representation and level
* ``polyrep``    compute the pairwise combination-probability table
* ``evaluate``   score one retrieval run against graded judgments
* ``correlate``  relate fused-opinion components to per-query effectiveness

Every command is deterministic: identical inputs and flags produce
byte-identical output.  Reports go to ``--out DIR`` (or stdout where a
single file suffices); diagnostics go to stderr, and the exit status is
zero exactly when no error occurred.  Options may also be supplied as
``key=value`` lines in a file passed via ``--config``; explicit flags win.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from .combine import (
    TOPIC_FIELDS,
    AggregationMode,
    CombinationResult,
    FusionOperator,
    load_topics,
    run_matrix,
    write_report,
)
from .evidence import PositiveRule
from .ireval import (
    METRICS,
    Component,
    correlate_components,
    evaluate_run,
    parse_qrels,
    parse_run,
    write_metric_report,
    write_plot_data,
)
from .textprep import PrepLevel, tokenize

_DUMPED_REPRESENTATIONS = TOPIC_FIELDS[1:]  # the four context fields plus keywords


class CliError(Exception):
    """User-facing command failure; the message goes to stderr."""


def _read_config(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    config: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}") from exc
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CliError(f"config line {number}: expected key=value")
        key, _, value = line.partition("=")
        config[key.strip()] = value.strip()
    return config


def _resolve(args: argparse.Namespace, config: dict[str, str], key: str,
             default: str | None = None, required: bool = False) -> str | None:
    value = getattr(args, key, None)
    if value is None:
        value = config.get(key, default)
    if required and value is None:
        flag = "--" + key.replace("_", "-")
        raise CliError(f"missing required option {flag} (or config key {key})")
    return value


def _parse_levels(text: str) -> list[PrepLevel]:
    levels = [PrepLevel.from_code(code) for code in text.split(",") if code.strip()]
    if not levels:
        raise CliError("at least one preprocessing level is required")
    return levels


def _parse_alpha(text: str) -> float:
    try:
        alpha = float(text)
    except ValueError as exc:
        raise CliError(f"bad alpha {text!r}") from exc
    if not 0.0 <= alpha <= 1.0:
        raise CliError(f"alpha must be in [0, 1], got {alpha}")
    return alpha


def _parse_choice(text: str, choices: dict[str, object], name: str):
    if text not in choices:
        raise CliError(f"bad {name} {text!r}; expected one of {sorted(choices)}")
    return choices[text]


def _emit(text: str, out_dir: str | None, filename: str) -> None:
    if out_dir is None:
        sys.stdout.write(text)
        return
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / filename).write_text(text, encoding="utf-8")


def _filter_operator(results: list[CombinationResult], operator: str) -> list[CombinationResult]:
    if operator == "both":
        return results
    wanted = FusionOperator(operator)
    return [res for res in results if res.spec.operator is wanted]


def _matrix_from_args(args: argparse.Namespace, config: dict[str, str]) -> list[CombinationResult]:
    topics = load_topics(_resolve(args, config, "topics", required=True))
    levels = _parse_levels(_resolve(args, config, "prep", default="I,II,III,IV"))
    alpha = _parse_alpha(_resolve(args, config, "alpha", default="0.5"))
    rule = _parse_choice(
        _resolve(args, config, "positive_rule", default="union"),
        {rule.value: rule for rule in PositiveRule},
        "positive rule",
    )
    mode = _parse_choice(
        _resolve(args, config, "agg", default="macro"),
        {mode.value: mode for mode in AggregationMode},
        "aggregation mode",
    )
    operator = _resolve(args, config, "operator", default="both")
    if operator not in ("consensus", "recommendation", "both"):
        raise CliError(f"bad operator {operator!r}")
    results = run_matrix(topics, levels, alpha=alpha, positive_rule=rule, mode=mode)
    return _filter_operator(results, operator)


def cmd_prep(args: argparse.Namespace) -> int:
    config = _read_config(args.config)
    topics = load_topics(_resolve(args, config, "topics", required=True))
    levels = _parse_levels(_resolve(args, config, "prep", default="I,II,III,IV"))
    out_format = _resolve(args, config, "format", default="tsv")
    rows = []
    for topic in topics:
        for representation in _DUMPED_REPRESENTATIONS:
            for level in levels:
                terms = sorted(tokenize(getattr(topic, representation), level))
                rows.append((topic.id, representation, level.value, terms))
    if out_format == "obj":
        payload = {
            "termsets": [
                {"topic": tid, "representation": rep, "level": level, "terms": terms}
                for tid, rep, level, terms in rows
            ]
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        _emit(text, _resolve(args, config, "out"), "termsets.json")
    else:
        buffer = io.StringIO()
        buffer.write("topic\trepresentation\tlevel\tterms\n")
        for tid, rep, level, terms in rows:
            buffer.write(f"{tid}\t{rep}\t{level}\t{' '.join(terms)}\n")
        _emit(buffer.getvalue(), _resolve(args, config, "out"), "termsets.tsv")
    return 0


def cmd_polyrep(args: argparse.Namespace) -> int:
    config = _read_config(args.config)
    results = _matrix_from_args(args, config)
    out_format = _resolve(args, config, "format", default="tsv")
    if out_format == "obj":
        payload = {"results": [_result_record(res) for res in results]}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        _emit(text, _resolve(args, config, "out"), "polyrep.json")
    else:
        buffer = io.StringIO()
        write_report(results, buffer, mark_best=True)
        _emit(buffer.getvalue(), _resolve(args, config, "out"), "polyrep.tsv")
    return 0


def _result_record(result: CombinationResult) -> dict:
    spec = result.spec
    return {
        "level": spec.level.value,
        "operator": spec.operator.value,
        "rep_a": spec.rep_a,
        "rep_b": spec.rep_b,
        "order": spec.order_label,
        "probability": result.aggregate_probability,
        "per_topic": [
            {
                "topic": topic_id,
                "belief": opinion.belief,
                "disbelief": opinion.disbelief,
                "uncertainty": opinion.uncertainty,
                "expectation": value,
            }
            for topic_id, opinion, value in result.per_topic
        ],
    }


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = _read_config(args.config)
    run = parse_run(_resolve(args, config, "run", required=True))
    qrels = parse_qrels(_resolve(args, config, "qrels", required=True))
    report = evaluate_run(run, qrels)
    out_format = _resolve(args, config, "format", default="tsv")
    if out_format == "obj":
        payload = {
            "per_query": {qid: dict(report.per_query[qid]) for qid in report.query_ids()},
            "means": dict(report.means),
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        _emit(text, _resolve(args, config, "out"), "metrics.json")
    else:
        buffer = io.StringIO()
        write_metric_report(report, buffer)
        _emit(buffer.getvalue(), _resolve(args, config, "out"), "metrics.tsv")
    return 0


def _plot_filename(result: CombinationResult, component: Component, metric: str) -> str:
    spec = result.spec
    parts = [spec.level.value, spec.operator.value, spec.rep_a, spec.rep_b]
    if spec.operator is FusionOperator.RECOMMENDATION:
        parts.append(spec.order_label.lower())
    parts.extend([component.value, metric])
    return "plot_" + "_".join(parts) + ".tsv"


def cmd_correlate(args: argparse.Namespace) -> int:
    config = _read_config(args.config)
    out_dir = _resolve(args, config, "out", required=True)
    results = _matrix_from_args(args, config)
    run = parse_run(_resolve(args, config, "run", required=True))
    qrels = parse_qrels(_resolve(args, config, "qrels", required=True))
    report = evaluate_run(run, qrels)
    rows = []
    for result in results:
        for component in Component:
            for metric in METRICS:
                rho = correlate_components(result, report, component, metric)
                rows.append((result, component, metric, rho))
    out_format = _resolve(args, config, "format", default="tsv")
    if out_format == "obj":
        payload = {
            "correlations": [
                {
                    "level": res.spec.level.value,
                    "operator": res.spec.operator.value,
                    "rep_a": res.spec.rep_a,
                    "rep_b": res.spec.rep_b,
                    "order": res.spec.order_label,
                    "component": component.value,
                    "metric": metric,
                    "rho": rho,
                }
                for res, component, metric, rho in rows
            ]
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out_dir, "correlations.json")
    else:
        buffer = io.StringIO()
        buffer.write("level\toperator\trep_a\trep_b\torder\tcomponent\tmetric\trho\n")
        for res, component, metric, rho in rows:
            spec = res.spec
            buffer.write(
                f"{spec.level.value}\t{spec.operator.value}\t{spec.rep_a}\t{spec.rep_b}"
                f"\t{spec.order_label}\t{component.value}\t{metric}\t{rho:.4f}\n"
            )
        _emit(buffer.getvalue(), out_dir, "correlations.tsv")
    for res, component, metric, _ in rows:
        buffer = io.StringIO()
        write_plot_data(res, report, component, metric, buffer)
        _emit(buffer.getvalue(), out_dir, _plot_filename(res, component, metric))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyrep",
        description="Combine query context representations and evaluate retrieval runs.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--config", help="flat key=value options file")
        sub.add_argument("--out", help="output directory (default: stdout)")
        sub.add_argument("--format", choices=["tsv", "obj"], help="report format (default tsv)")

    def add_matrix_options(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--topics", help="line-delimited JSON topic file")
        sub.add_argument("--prep", help="comma-separated levels from I,II,III,IV")
        sub.add_argument("--alpha", help="prior base rate in [0, 1] (default 0.5)")
        sub.add_argument(
            "--positive-rule", dest="positive_rule", choices=["union", "intersection"],
            help="consensus positive-evidence reading (default union)",
        )
        sub.add_argument("--agg", choices=["macro", "pooled"],
                         help="aggregation across topics (default macro)")
        sub.add_argument("--operator", choices=["consensus", "recommendation", "both"],
                         help="restrict the matrix (default both)")

    prep = subparsers.add_parser("prep", help="dump per-topic term sets")
    prep.add_argument("--topics", help="line-delimited JSON topic file")
    prep.add_argument("--prep", help="comma-separated levels from I,II,III,IV")
    add_common(prep)
    prep.set_defaults(func=cmd_prep)

    poly = subparsers.add_parser("polyrep", help="combination probability table")
    add_matrix_options(poly)
    add_common(poly)
    poly.set_defaults(func=cmd_polyrep)

    evaluate = subparsers.add_parser("evaluate", help="score a run against judgments")
    evaluate.add_argument("--run", help="run file (qid Q0 docid rank score tag)")
    evaluate.add_argument("--qrels", help="judgments file (qid 0 docid grade)")
    add_common(evaluate)
    evaluate.set_defaults(func=cmd_evaluate)

    correlate = subparsers.add_parser(
        "correlate", help="rank-correlate opinion components with effectiveness"
    )
    add_matrix_options(correlate)
    correlate.add_argument("--run", help="run file (qid Q0 docid rank score tag)")
    correlate.add_argument("--qrels", help="judgments file (qid 0 docid grade)")
    add_common(correlate)
    correlate.set_defaults(func=cmd_correlate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"polyrep: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
