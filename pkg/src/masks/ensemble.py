"""Knowledge aggregation across an ensemble of classifiers.

``maska`` intersects the per-classifier knowledge sets; ``masks_verify``
additionally applies external knowledge as public announcements on the
epistemic model the intersection denotes.  The tri-state outcome separates
a verified single class from a plural candidate set and from an
inconsistent (empty) intersection.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .errors import EmptyEnsemble, EmptyKnowledgeSet, UnknownClass
from .knowledge import Classifier, KnowledgeSet, ckc
from .logic import Atom, Formula, KripkeModel, Prop, announce, disjunction
from .perturb import InputPoint, PerturbationSpec
from .reduction import ReducedModel

__all__ = [
    "Verified", "Candidates", "Inconsistent", "VerificationOutcome",
    "ExternalSource", "outcome_of", "maska", "masks_verify",
    "model_from_knowledge", "candidate_disjunction", "agent_names",
]


@dataclass(frozen=True)
class Verified:
    label: str


@dataclass(frozen=True)
class Candidates:
    classes: frozenset[str]

    def __post_init__(self):
        if len(self.classes) < 2:
            raise ValueError("candidate outcomes carry at least two classes")


@dataclass(frozen=True)
class Inconsistent:
    pass


VerificationOutcome = Union[Verified, Candidates, Inconsistent]


@dataclass(frozen=True)
class ExternalSource:
    """A named piece of external knowledge, announced as a formula."""

    name: str
    knowledge: Formula


def outcome_of(classes: frozenset[str]) -> VerificationOutcome:
    if not classes:
        return Inconsistent()
    if len(classes) == 1:
        return Verified(next(iter(classes)))
    return Candidates(classes)


def agent_names(classifiers: Sequence) -> list[str]:
    """Stable agent ids for an ensemble: the classifier's ``name`` attribute
    when present, positional A0, A1, ... otherwise."""
    names = []
    for i, c in enumerate(classifiers):
        names.append(getattr(c, "name", None) or f"A{i}")
    if len(set(names)) != len(names):
        raise ValueError("classifier names must be unique")
    return names


def maska(classifiers: Sequence[Classifier], x0: InputPoint,
          spec: PerturbationSpec,
          classes: Iterable[str] | None = None,
          ) -> tuple[VerificationOutcome, frozenset[str]]:
    """Running intersection of the classifiers' knowledge sets.

    Starts from the full class set (every classifier's result is intersected
    in list order) and exits early once the intersection is empty; the final
    set does not depend on classifier order.
    """
    if not classifiers:
        raise EmptyEnsemble("need at least one classifier")
    current: frozenset[str] | None = (
        frozenset(classes) if classes is not None else None)
    for classifier in classifiers:
        ks = ckc(classifier, x0, spec)
        current = ks.classes if current is None else current & ks.classes
        if not current:
            return Inconsistent(), frozenset()
    assert current is not None
    return outcome_of(current), current


def model_from_knowledge(knowledge_sets: Mapping[str, Iterable[str]],
                         classes: Iterable[str]) -> ReducedModel:
    """The singleton-world epistemic model for the given per-agent candidate
    sets: one world per class, and each agent's candidates form one
    indistinguishability block."""
    classes = frozenset(classes)
    worlds = tuple(sorted(classes))
    relations: dict[str, list[frozenset[str]]] = {}
    for agent, candidates in knowledge_sets.items():
        candidates = frozenset(candidates)
        if not candidates:
            raise EmptyKnowledgeSet(f"agent {agent!r} has an empty knowledge set")
        if not candidates <= classes:
            raise UnknownClass(
                f"agent {agent!r} names classes outside the class set: "
                f"{sorted(candidates - classes)}")
        relations[agent] = [candidates]
    valuation = {w: frozenset((Atom(w),)) for w in worlds}
    model = KripkeModel.build(worlds, relations, valuation)
    return ReducedModel(model, classes)


def candidate_disjunction(candidates: Iterable[str]) -> Formula:
    """The announcement a candidate set denotes: the disjunction of its atoms."""
    return disjunction(Prop(Atom(c)) for c in sorted(candidates))


def masks_verify(classifiers: Sequence[Classifier], x0: InputPoint,
                 spec: PerturbationSpec,
                 sources: Sequence[ExternalSource] = (),
                 classes: Iterable[str] | None = None,
                 ) -> tuple[VerificationOutcome, frozenset[str]]:
    """Aggregate classifier knowledge, then apply external knowledge.

    Phase 1 is ``maska``; if it already verifies the input or hits an
    inconsistency, external sources are not consulted.  Phase 2 builds the
    singleton-world model from the per-agent knowledge sets and announces
    each agent's candidate disjunction followed by each source's formula in
    order; the surviving worlds are the surviving classes.  Atoms a source
    mentions that the model lacks simply evaluate false.
    """
    if not classifiers:
        raise EmptyEnsemble("need at least one classifier")
    names = agent_names(classifiers)
    ksets: dict[str, KnowledgeSet] = {
        name: ckc(c, x0, spec) for name, c in zip(names, classifiers)}

    intersection: frozenset[str] | None = (
        frozenset(classes) if classes is not None else None)
    for ks in ksets.values():
        intersection = (ks.classes if intersection is None
                        else intersection & ks.classes)
    assert intersection is not None
    outcome = outcome_of(intersection)
    if not sources or not isinstance(outcome, Candidates):
        return outcome, intersection

    all_classes = (frozenset(classes) if classes is not None
                   else frozenset().union(*(ks.classes for ks in ksets.values())))
    reduced = model_from_knowledge(
        {name: ks.classes for name, ks in ksets.items()}, all_classes)
    model = reduced.model
    for name, ks in ksets.items():
        model = announce(model, candidate_disjunction(ks.classes))
    for source in sources:
        model = announce(model, source.knowledge)
        if not model.worlds:
            return Inconsistent(), frozenset()
    survivors = frozenset(
        next(iter(model.valuation[w])).label for w in model.worlds)
    return outcome_of(survivors), survivors
