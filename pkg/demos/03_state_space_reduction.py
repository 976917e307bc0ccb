"""
Shrinking the world space: from subsets to singletons
=====================================================

A model whose worlds are all non-empty subsets of the class set grows
exponentially with the number of classes.  Since each subset-world is
characterized by the singleton worlds of its members, the model can be
cut down to one world per class.  This script builds the full model,
reduces it, and shows what carries over — and where the equivalence has
limits.
"""
from itertools import combinations

from masks import Atom, KripkeModel, satisfies
from masks.reduction import (PowerSetModel, lift_relation, reduce_model,
                             subset_world_id, theorem_agreement)
from masks.modelio import format_model
from masks.syntax import format_formula, parse

# --- the full power-set model -----------------------------------------------
classes = ["c0", "c6", "c8"]
subsets = [frozenset(s) for k in range(1, 4)
           for s in combinations(classes, k)]
worlds = {subset_world_id(s): s for s in subsets}

# one agent that cannot distinguish any of the subset-worlds
model = KripkeModel.build(
    list(worlds),
    {"A0": [list(worlds)]},
    {wid: [Atom(c) for c in sorted(labels)]
     for wid, labels in worlds.items()})
full = PowerSetModel(model, frozenset(classes))
print(f"full model: {len(model.worlds)} worlds "
      f"(all non-empty subsets of {classes})")

# --- reduction ---------------------------------------------------------------
reduced = reduce_model(full)
print(f"reduced model: {len(reduced.model.worlds)} worlds")
print()
print(format_model(reduced.model))

# --- retrieving dropped relations --------------------------------------------
# whether two subset-worlds were related in the full model can be read
# back off the reduced one
print("were {c0,c6} and {c8} related for A0?",
      lift_relation(reduced, "A0", {"c0", "c6"}, {"c8"}))

# --- satisfaction carries over ------------------------------------------------
# knowledge formulas evaluated at a subset-world agree with evaluating at
# each of the world's member singletons in the reduced model
w = subset_world_id({"c0", "c6", "c8"})
f = parse("K{A0} (c0 | c6 | c8)")
print()
print(f"full model, world {w}: {format_formula(f):28}",
      satisfies(full.model, w, f))
print("agreement with the reduced reading:",
      theorem_agreement(full, reduced, w, f))

# --- ...but not for everything ------------------------------------------------
# a bare atom at a plural world is true in the full model yet fails at the
# member singletons that carry a different class — the equivalence is a
# property of the knowledge formulas the verifier actually uses, not of
# arbitrary formulas
f = parse("c0")
print()
print(f"full model, world {w}: {'c0':28}", satisfies(full.model, w, f))
print("agreement with the reduced reading:",
      theorem_agreement(full, reduced, w, f))
