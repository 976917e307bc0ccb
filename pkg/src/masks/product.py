"""Joint models for several multi-agent systems.

The product model's worlds are tuples of component worlds; an agent owned
by component k relates two tuples exactly when every other coordinate is
equal and its component relates the k-coordinates.  Atoms are re-indexed so
each component's classes stay distinct.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DuplicateAgentName, EmptyComponentModel, ProductTooLarge
from .logic import Atom, KripkeModel

__all__ = ["ProductModel", "product", "DEFAULT_WORLD_CAP"]

DEFAULT_WORLD_CAP = 10**6


@dataclass(frozen=True)
class ProductModel:
    """A Kripke model over tuple worlds, with component bookkeeping."""

    model: KripkeModel
    components: int
    class_sets: tuple[frozenset[str], ...]
    coordinates: Mapping[str, tuple[str, ...]]


def _component_span(model: KripkeModel) -> int:
    """How many component indices a factor's atoms occupy (at least 1)."""
    atoms = model.atoms()
    return max((a.component for a in atoms), default=0) + 1


def product(models: Sequence[KripkeModel], separator: str = "",
            cap: int = DEFAULT_WORLD_CAP) -> ProductModel:
    """Cartesian product of the factor models.

    Tuple worlds are named by joining the factor world ids with
    ``separator``; the joined names must stay unique.  Refuses products
    whose world count exceeds ``cap``.
    """
    if len(models) < 2:
        raise ValueError("product needs at least two factor models")
    agents_seen: set[str] = set()
    for m in models:
        if not m.worlds:
            raise EmptyComponentModel("factor model has no worlds")
        dup = agents_seen & m.agents
        if dup:
            raise DuplicateAgentName(f"agents in several factors: {sorted(dup)}")
        agents_seen |= m.agents

    count = 1
    for m in models:
        count *= len(m.worlds)
        if count > cap:
            raise ProductTooLarge(
                f"product would have more than {cap} worlds")

    offsets = []
    base = 0
    for m in models:
        offsets.append(base)
        base += _component_span(m)

    tuples = list(itertools.product(*(m.worlds for m in models)))
    ids = [separator.join(t) for t in tuples]
    if len(set(ids)) != len(ids):
        raise ValueError(
            "joined world names collide; use a distinctive separator")
    coord_of = dict(zip(ids, tuples))

    valuation: dict[str, frozenset[Atom]] = {}
    for wid, t in zip(ids, tuples):
        atoms: set[Atom] = set()
        for k, (m, w) in enumerate(zip(models, t)):
            atoms |= {Atom(a.label, offsets[k] + a.component)
                      for a in m.valuation[w]}
        valuation[wid] = frozenset(atoms)

    relations: dict[str, tuple[frozenset[str], ...]] = {}
    for k, m in enumerate(models):
        for agent in m.relations:
            groups: dict[tuple, set[str]] = {}
            for wid, t in zip(ids, tuples):
                others = t[:k] + t[k + 1:]
                key = (others, m.block(agent, t[k]))
                groups.setdefault(key, set()).add(wid)
            relations[agent] = tuple(frozenset(g) for g in groups.values())

    class_sets = tuple(frozenset(a.label for a in m.atoms()) for m in models)
    joint = KripkeModel(tuple(ids), relations, valuation)
    return ProductModel(joint, len(models), class_sets, coord_of)
