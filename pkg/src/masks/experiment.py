"""Ensemble-size sweep over a labeled dataset.

For each requested agent count k, the first k networks of the supplied list
are aggregated per item; the report counts items whose verified class
matches the ground truth, items verified into a wrong class, items left
with several candidates, and inconsistent items.  Error and truth rates use
the full dataset size as denominator, which the CSV header records.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .dataio import LabeledDataset
from .ensemble import Candidates, Inconsistent, Verified, outcome_of
from .errors import ClassifierFailure, EmptyEnsemble, InvalidSpec
from .knowledge import Classifier, ckc
from .perturb import PerturbationSpec

__all__ = ["ExperimentRow", "ExperimentReport", "run_experiment",
           "report_to_csv", "worker_count"]

CSV_COLUMNS = ("agents,verified_correct,verified_wrong,unverified,"
               "inconsistent,error_rate,truth_rate,error_truth_ratio")


@dataclass(frozen=True)
class ExperimentRow:
    n_agents: int
    verified_correct: int
    verified_wrong: int
    unverified: int
    inconsistent: int
    error_rate: float
    truth_rate: float
    error_truth_ratio: float


@dataclass(frozen=True)
class ExperimentReport:
    rows: tuple[ExperimentRow, ...]
    config: Mapping[str, str]
    dataset_size: int


def worker_count() -> int:
    """Worker parallelism from MASKS_THREADS (0 or unset = auto)."""
    raw = os.environ.get("MASKS_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise InvalidSpec(f"MASKS_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise InvalidSpec("MASKS_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def _item_knowledge(nets: Sequence[Classifier], item_index: int, point,
                    spec: PerturbationSpec) -> list[frozenset[str]]:
    out = []
    for net_index, net in enumerate(nets):
        try:
            out.append(ckc(net, point, spec).classes)
        except ClassifierFailure as exc:
            raise ClassifierFailure(
                f"net {net_index} failed on item {item_index}: {exc}",
                exc.index) from exc
    return out


def run_experiment(nets: Sequence[Classifier], dataset: LabeledDataset,
                   spec: PerturbationSpec, agent_counts: Sequence[int],
                   seed: int,
                   config: Mapping[str, str] | None = None) -> ExperimentReport:
    """Aggregate the first k nets for each k in ``agent_counts`` (ascending)
    over every dataset item.  Deterministic given its inputs; items may be
    processed concurrently but counts are folded in dataset order."""
    if not nets:
        raise EmptyEnsemble("need at least one network")
    agent_counts = list(agent_counts)
    if agent_counts != sorted(agent_counts) or len(set(agent_counts)) != len(agent_counts):
        raise InvalidSpec("agent counts must be strictly ascending")
    if not agent_counts or agent_counts[0] < 1:
        raise InvalidSpec("agent counts must be positive")
    if agent_counts[-1] > len(nets):
        raise InvalidSpec(
            f"largest agent count {agent_counts[-1]} exceeds {len(nets)} nets")

    k_max = agent_counts[-1]
    prefix = list(nets[:k_max])

    def knowledge_for(indexed_item):
        i, (point, _) = indexed_item
        return _item_knowledge(prefix, i, point, spec)

    workers = worker_count()
    indexed = list(enumerate(dataset.items))
    if workers > 1 and len(indexed) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_item = list(pool.map(knowledge_for, indexed))
    else:
        per_item = [knowledge_for(it) for it in indexed]

    rows = []
    size = len(dataset)
    for k in agent_counts:
        correct = wrong = unverified = inconsistent = 0
        for (point, truth), ksets in zip(dataset.items, per_item):
            inter = ksets[0]
            for ks in ksets[1:k]:
                inter = inter & ks
                if not inter:
                    break
            match outcome_of(inter):
                case Verified(label):
                    if label == truth:
                        correct += 1
                    else:
                        wrong += 1
                case Candidates():
                    unverified += 1
                case Inconsistent():
                    inconsistent += 1
        error_rate = wrong / size if size else 0.0
        truth_rate = correct / size if size else 0.0
        ratio = error_rate / truth_rate if truth_rate > 0 else 0.0
        rows.append(ExperimentRow(k, correct, wrong, unverified, inconsistent,
                                  error_rate, truth_rate, ratio))

    echo = dict(config or {})
    echo.setdefault("seed", str(seed))
    echo.setdefault("denominator", "full dataset size")
    return ExperimentReport(tuple(rows), echo, size)


def report_to_csv(report: ExperimentReport) -> str:
    """Render the report; comment lines echo the configuration, rates carry
    six fractional digits, lines end with LF."""
    lines = [f"# {key}={report.config[key]}" for key in sorted(report.config)]
    lines.append(f"# dataset_size={report.dataset_size}")
    lines.append(CSV_COLUMNS)
    for r in report.rows:
        lines.append(
            f"{r.n_agents},{r.verified_correct},{r.verified_wrong},"
            f"{r.unverified},{r.inconsistent},"
            f"{r.error_rate:.6f},{r.truth_rate:.6f},{r.error_truth_ratio:.6f}")
    return "\n".join(lines) + "\n"
