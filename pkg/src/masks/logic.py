"""S5 multi-agent Kripke models and public-announcement semantics.

Relations are stored as partitions of the world set (one block list per
agent), so reflexivity, symmetry and transitivity hold by construction.
Models and formulas are immutable values; every operation here is a pure
function and safe to call concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import EmptyAgentSet, UnknownAgent, UnknownWorld

__all__ = [
    "Atom", "Formula", "Top", "Prop", "Not", "And", "Or",
    "Know", "Consistent", "Dist", "Every", "Announce",
    "Bot", "disjunction", "conjunction",
    "KripkeModel", "satisfies", "announce", "distributed_relation",
]


@dataclass(frozen=True)
class Atom:
    """Propositional variable naming an output class of one component.

    ``component`` is 0 for single-system models; product models re-index
    atoms so each component's classes stay distinct.
    """

    label: str
    component: int = 0

    def __post_init__(self):
        if not self.label:
            raise ValueError("atom label must be non-empty")
        if self.component < 0:
            raise ValueError("atom component must be >= 0")

    def __str__(self) -> str:
        if self.component == 0:
            return self.label
        return f"{self.component}:{self.label}"


class Formula:
    """Abstract syntax tree node; concrete variants are the dataclasses below."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Prop(Formula):
    atom: Atom


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Know(Formula):
    agent: str
    sub: Formula


@dataclass(frozen=True)
class Consistent(Formula):
    """<K_j>phi, i.e. ~K_j~phi: phi holds at some world the agent considers possible."""

    agent: str
    sub: Formula


@dataclass(frozen=True)
class Dist(Formula):
    """Distributed knowledge over a non-empty agent group."""

    agents: frozenset[str]
    sub: Formula

    def __post_init__(self):
        if not self.agents:
            raise EmptyAgentSet("D operator needs at least one agent")


@dataclass(frozen=True)
class Every(Formula):
    """Everybody-knows: conjunction of K_j over the group."""

    agents: frozenset[str]
    sub: Formula

    def __post_init__(self):
        if not self.agents:
            raise EmptyAgentSet("E operator needs at least one agent")


@dataclass(frozen=True)
class Announce(Formula):
    announced: Formula
    sub: Formula


def Bot() -> Formula:
    """Falsum, stored as ~T."""
    return Not(Top())


def disjunction(parts: Iterable[Formula]) -> Formula:
    """Left-associated disjunction; Bot for an empty sequence."""
    parts = list(parts)
    if not parts:
        return Bot()
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def conjunction(parts: Iterable[Formula]) -> Formula:
    """Left-associated conjunction; Top for an empty sequence."""
    parts = list(parts)
    if not parts:
        return Top()
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


Partition = tuple[frozenset[str], ...]


@dataclass(frozen=True)
class KripkeModel:
    """Worlds, one equivalence partition per agent, and a total valuation.

    A zero-world model is a legal value (it results from announcing a
    falsehood); satisfaction queries against it raise UnknownWorld.
    """

    worlds: tuple[str, ...]
    relations: Mapping[str, Partition]
    valuation: Mapping[str, frozenset[Atom]]
    _blocks: Mapping[tuple[str, str], frozenset[str]] = field(
        init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        wset = set(self.worlds)
        if len(wset) != len(self.worlds):
            raise ValueError("duplicate world ids")
        index: dict[tuple[str, str], frozenset[str]] = {}
        for agent, blocks in self.relations.items():
            if not agent:
                raise ValueError("agent name must be non-empty")
            seen: set[str] = set()
            for block in blocks:
                if not block:
                    raise ValueError(f"agent {agent}: empty partition block")
                if not block <= wset:
                    raise ValueError(f"agent {agent}: block mentions unknown worlds")
                if block & seen:
                    raise ValueError(f"agent {agent}: blocks overlap")
                seen |= block
                for w in block:
                    index[(agent, w)] = block
            if seen != wset:
                raise ValueError(f"agent {agent}: partition does not cover all worlds")
        if set(self.valuation) != wset:
            raise ValueError("valuation must be total over the worlds")
        # canonical block order so structurally equal models compare equal
        order = {w: i for i, w in enumerate(self.worlds)}
        canonical = {
            agent: tuple(sorted(blocks, key=lambda b: min(order[w] for w in b)))
            for agent, blocks in self.relations.items()
        }
        object.__setattr__(self, "relations", canonical)
        object.__setattr__(self, "_blocks", index)

    @staticmethod
    def build(worlds: Iterable[str],
              relations: Mapping[str, Iterable[Iterable[str]]],
              valuation: Mapping[str, Iterable[Atom]] | None = None) -> "KripkeModel":
        """Normalizing constructor: completes missing singleton blocks and
        missing (empty) valuations."""
        worlds = tuple(worlds)
        wset = set(worlds)
        rels: dict[str, Partition] = {}
        for agent, blocks in relations.items():
            blocks = [frozenset(b) for b in blocks if b]
            listed = set().union(*blocks) if blocks else set()
            blocks.extend(frozenset((w,)) for w in worlds if w not in listed)
            rels[agent] = tuple(blocks)
        val = {w: frozenset() for w in worlds}
        if valuation:
            for w, atoms in valuation.items():
                if w not in wset:
                    raise ValueError(f"valuation names unknown world {w!r}")
                val[w] = frozenset(atoms)
        return KripkeModel(worlds, rels, val)

    @property
    def agents(self) -> frozenset[str]:
        return frozenset(self.relations)

    def block(self, agent: str, world: str) -> frozenset[str]:
        """The agent's equivalence block containing ``world``."""
        if agent not in self.relations:
            raise UnknownAgent(f"unknown agent {agent!r}")
        return self._blocks[(agent, world)]

    def atoms(self) -> frozenset[Atom]:
        out: set[Atom] = set()
        for v in self.valuation.values():
            out |= v
        return frozenset(out)


def distributed_relation(model: KripkeModel, agents: Iterable[str]) -> Partition:
    """Common refinement of the agents' partitions (intersection relation)."""
    agents = sorted(set(agents))
    if not agents:
        raise EmptyAgentSet("distributed relation over no agents")
    for a in agents:
        if a not in model.relations:
            raise UnknownAgent(f"unknown agent {a!r}")
    groups: dict[tuple[frozenset[str], ...], set[str]] = {}
    for w in model.worlds:
        key = tuple(model.block(a, w) for a in agents)
        groups.setdefault(key, set()).add(w)
    return tuple(frozenset(g) for g in groups.values())


def satisfies(model: KripkeModel, world: str, formula: Formula) -> bool:
    """Truth of ``formula`` at ``world``.

    Atoms absent from the model's signature evaluate to false; unknown
    agents and unknown worlds are errors.
    """
    if world not in model.valuation:
        raise UnknownWorld(f"unknown world {world!r}")
    match formula:
        case Top():
            return True
        case Prop(atom):
            return atom in model.valuation[world]
        case Not(sub):
            return not satisfies(model, world, sub)
        case And(left, right):
            return satisfies(model, world, left) and satisfies(model, world, right)
        case Or(left, right):
            return satisfies(model, world, left) or satisfies(model, world, right)
        case Know(agent, sub):
            return all(satisfies(model, v, sub) for v in model.block(agent, world))
        case Consistent(agent, sub):
            return any(satisfies(model, v, sub) for v in model.block(agent, world))
        case Dist(agents, sub):
            for block in distributed_relation(model, agents):
                if world in block:
                    return all(satisfies(model, v, sub) for v in block)
            raise AssertionError("partition must cover every world")
        case Every(agents, sub):
            if not agents:
                raise EmptyAgentSet("E operator needs at least one agent")
            return all(satisfies(model, world, Know(a, sub)) for a in sorted(agents))
        case Announce(announced, sub):
            if not satisfies(model, world, announced):
                return True
            return satisfies(announce(model, announced), world, sub)
    raise TypeError(f"not a formula: {formula!r}")


def announce(model: KripkeModel, psi: Formula) -> KripkeModel:
    """Public announcement update: restrict the model to the psi-worlds."""
    survivors = tuple(w for w in model.worlds if satisfies(model, w, psi))
    keep = set(survivors)
    relations = {
        agent: tuple(b for b in (block & keep for block in blocks) if b)
        for agent, blocks in model.relations.items()
    }
    valuation = {w: model.valuation[w] for w in survivors}
    return KripkeModel(survivors, relations, valuation)
