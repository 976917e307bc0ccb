"""Line-based text format for Kripke models.

::

    # comment
    worlds: w0 w6 w8 w9
    agent A0: {w0 w6 w8 w9} {...}
    val w0: c0 1:c3

Blocks are brace-delimited and space-separated; worlds not listed in any
block of an agent line are implicit singletons.  Atoms carry an optional
``N:`` component-index prefix (default 0).
"""
from __future__ import annotations

import re

from .errors import ModelFormatError
from .logic import Atom, KripkeModel

__all__ = ["parse_model", "format_model"]


def _parse_atom(token: str) -> Atom:
    if ":" in token:
        comp, label = token.split(":", 1)
        if not comp.isdigit():
            raise ModelFormatError(f"bad component index in atom {token!r}")
        if not label:
            raise ModelFormatError(f"missing class label in atom {token!r}")
        return Atom(label, int(comp))
    return Atom(token)


def _format_atom(atom: Atom) -> str:
    return str(atom)


_BLOCK = re.compile(r"\{([^{}]*)\}|(\S+)")


def parse_model(text: str) -> KripkeModel:
    """Parse the model text format (UTF-8, '#' comments)."""
    worlds: tuple[str, ...] | None = None
    relations: dict[str, list[frozenset[str]]] = {}
    valuation: dict[str, list[Atom]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ModelFormatError(f"line {lineno}: expected 'key: ...'")
        head, _, rest = line.partition(":")
        head = head.strip()
        if head == "worlds":
            if worlds is not None:
                raise ModelFormatError(f"line {lineno}: duplicate worlds line")
            worlds = tuple(rest.split())
        elif head.startswith("agent"):
            name = head[len("agent"):].strip()
            if not name:
                raise ModelFormatError(f"line {lineno}: missing agent name")
            if name in relations:
                raise ModelFormatError(f"line {lineno}: duplicate agent {name!r}")
            blocks = []
            for m in _BLOCK.finditer(rest):
                if m.group(2) is not None:
                    raise ModelFormatError(
                        f"line {lineno}: blocks must be brace-delimited")
                members = m.group(1).split()
                if members:
                    blocks.append(frozenset(members))
            relations[name] = blocks
        elif head.startswith("val"):
            world = head[len("val"):].strip()
            if not world:
                raise ModelFormatError(f"line {lineno}: missing world in val line")
            if world in valuation:
                raise ModelFormatError(f"line {lineno}: duplicate val line for {world!r}")
            valuation[world] = [_parse_atom(t) for t in rest.split()]
        else:
            raise ModelFormatError(f"line {lineno}: unknown directive {head!r}")

    if worlds is None:
        raise ModelFormatError("missing 'worlds:' line")
    wset = set(worlds)
    for world in valuation:
        if world not in wset:
            raise ModelFormatError(f"val line names unknown world {world!r}")
    for name, blocks in relations.items():
        for block in blocks:
            if not block <= wset:
                bad = sorted(block - wset)
                raise ModelFormatError(
                    f"agent {name!r} block names unknown worlds {bad}")
    try:
        return KripkeModel.build(worlds, relations, valuation)
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from exc


def format_model(model: KripkeModel) -> str:
    """Emit the model text format; singleton blocks are left implicit."""
    lines = ["worlds: " + " ".join(model.worlds)]
    for agent in sorted(model.relations):
        blocks = [b for b in model.relations[agent] if len(b) > 1]
        blocks.sort(key=lambda b: min(model.worlds.index(w) for w in b))
        rendered = " ".join(
            "{" + " ".join(sorted(b, key=model.worlds.index)) + "}" for b in blocks)
        lines.append(f"agent {agent}: {rendered}".rstrip())
    for world in model.worlds:
        atoms = model.valuation[world]
        if atoms:
            rendered = " ".join(sorted(_format_atom(a) for a in atoms))
            lines.append(f"val {world}: {rendered}")
    return "\n".join(lines) + "\n"
