"""State-space reduction: from power-set models to singleton-world models.

A power-set model has one world per subset of the class set, with the
world's valuation equal to its subset.  The reduced model keeps only the
singleton-valuation worlds; relation information among the discarded worlds
is recoverable through ``lift_relation``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import EmptySet, MissingSingletonWorld, UnknownClass
from .logic import Atom, Formula, KripkeModel, satisfies

__all__ = [
    "PowerSetModel", "ReducedModel", "subset_world_id",
    "reduce_model", "lift_relation", "theorem_agreement",
]


def subset_world_id(labels: Iterable[str]) -> str:
    """Deterministic world id for a subset of class labels."""
    labels = sorted(labels)
    return "+".join(labels) if labels else "(empty)"


def _labels(atoms: frozenset[Atom]) -> frozenset[str]:
    return frozenset(a.label for a in atoms)


@dataclass(frozen=True)
class PowerSetModel:
    """A Kripke model whose worlds are labeled by distinct subsets of ``classes``."""

    model: KripkeModel
    classes: frozenset[str]

    def __post_init__(self):
        seen: set[frozenset[str]] = set()
        for w in self.model.worlds:
            atoms = self.model.valuation[w]
            labels = _labels(atoms)
            if len(labels) != len(atoms):
                raise ValueError(f"world {w!r}: valuation mixes atom components")
            if not labels <= self.classes:
                raise ValueError(f"world {w!r}: valuation outside the class set")
            if labels in seen:
                raise ValueError(f"world {w!r}: duplicate subset valuation")
            seen.add(labels)

    def world_for(self, labels: Iterable[str]) -> str | None:
        """The world whose valuation is exactly ``labels``, if present."""
        want = frozenset(labels)
        for w in self.model.worlds:
            if _labels(self.model.valuation[w]) == want:
                return w
        return None


@dataclass(frozen=True)
class ReducedModel:
    """Restriction of a power-set model to its singleton-valuation worlds."""

    model: KripkeModel
    classes: frozenset[str]

    def __post_init__(self):
        for w in self.model.worlds:
            if len(self.model.valuation[w]) != 1:
                raise ValueError(f"world {w!r}: reduced worlds carry one atom")
        if len(self.model.worlds) > len(self.classes):
            raise ValueError("more singleton worlds than classes")

    def world_of_class(self, label: str) -> str:
        if label not in self.classes:
            raise UnknownClass(f"unknown class {label!r}")
        for w in self.model.worlds:
            (atom,) = self.model.valuation[w]
            if atom.label == label:
                return w
        raise UnknownClass(f"class {label!r} has no singleton world")

    def surviving_classes(self) -> frozenset[str]:
        return frozenset(next(iter(self.model.valuation[w])).label
                         for w in self.model.worlds)


def reduce_model(psm: PowerSetModel) -> ReducedModel:
    """Keep exactly the singleton-valuation worlds, restricting relations
    and valuation; every class must have its singleton world."""
    singles = [w for w in psm.model.worlds if len(psm.model.valuation[w]) == 1]
    covered = {next(iter(psm.model.valuation[w])).label for w in singles}
    missing = psm.classes - covered
    if missing:
        raise MissingSingletonWorld(
            f"classes without a singleton world: {sorted(missing)}")
    keep = set(singles)
    relations = {
        agent: tuple(b for b in (block & keep for block in blocks) if b)
        for agent, blocks in psm.model.relations.items()
    }
    valuation = {w: psm.model.valuation[w] for w in singles}
    return ReducedModel(KripkeModel(tuple(singles), relations, valuation),
                        psm.classes)


def lift_relation(reduced: ReducedModel, agent: str,
                  left: Iterable[str], right: Iterable[str]) -> bool:
    """Whether the full-model worlds labeled ``left`` and ``right`` are
    related for ``agent``: true iff all singleton worlds characterizing
    ``left | right`` lie in one block of the agent's reduced partition."""
    left = frozenset(left)
    right = frozenset(right)
    if not left or not right:
        raise EmptySet("lift_relation needs non-empty class sets")
    unknown = (left | right) - reduced.classes
    if unknown:
        raise UnknownClass(f"unknown classes {sorted(unknown)}")
    worlds = {reduced.world_of_class(c) for c in left | right}
    anchor = next(iter(worlds))
    return worlds <= reduced.model.block(agent, anchor)


def theorem_agreement(full: PowerSetModel, reduced: ReducedModel,
                      world: str, formula: Formula) -> bool:
    """Whether full-model satisfaction at ``world`` equals the conjunction of
    reduced-model satisfaction over the world's characterizing singletons."""
    labels = _labels(full.model.valuation[world])
    full_value = satisfies(full.model, world, formula)
    reduced_value = all(
        satisfies(reduced.model, reduced.world_of_class(c), formula)
        for c in sorted(labels))
    return full_value == reduced_value
