"""Per-classifier knowledge extraction over a perturbation set.

A classifier is anything with a ``classify(point) -> label`` method that is
total and read-only over the generated points; its knowledge set is the set
of output classes witnessed across the perturbation set.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from .errors import ClassifierFailure, MasksError
from .perturb import InputPoint, PerturbationSpec, generate_perturbations

__all__ = ["Classifier", "KnowledgeSet", "ckc"]


@runtime_checkable
class Classifier(Protocol):
    def classify(self, x: InputPoint) -> str: ...


@dataclass(frozen=True)
class KnowledgeSet:
    """Output classes witnessed over a perturbation set; robust iff exactly one."""

    classes: frozenset[str]
    robust: bool

    def __post_init__(self):
        if not self.classes:
            raise ValueError("a knowledge set is never empty")
        if self.robust != (len(self.classes) == 1):
            raise ValueError("robust flag must match |classes| == 1")

    @staticmethod
    def of(classes) -> "KnowledgeSet":
        classes = frozenset(classes)
        return KnowledgeSet(classes, len(classes) == 1)


def ckc(classifier: Classifier, x0: InputPoint,
        spec: PerturbationSpec) -> KnowledgeSet:
    """Collect the classifier's output classes over the perturbation set of
    ``x0``; the result is independent of evaluation order."""
    classes: set[str] = set()
    for i, point in enumerate(generate_perturbations(x0, spec)):
        try:
            classes.add(classifier.classify(point))
        except MasksError as exc:
            raise ClassifierFailure(str(exc), i) from exc
        except Exception as exc:  # classifier contract violation
            raise ClassifierFailure(f"classifier raised {type(exc).__name__}: {exc}",
                                    i) from exc
    return KnowledgeSet.of(classes)
