"""
Verifying a handwritten digit with an ensemble of hesitant classifiers
======================================================================

Three classifiers look at the same smudged digit.  None of them is sure,
but each can rule classes out.  This script walks through how their
partial knowledge combines: first as a plain set intersection, then as
public announcements on an epistemic model, and finally across two
cooperating recognizers reading a two-digit number.
"""
import numpy as np

from masks import (Atom, EpsilonGrid, Explicit, InputPoint, KripkeModel,
                   ScriptedClassifier, announce, candidate_disjunction,
                   generate_perturbations, maska, masks_verify,
                   model_from_knowledge, product, ExternalSource)
from masks.modelio import format_model
from masks.syntax import parse

# --- the input and its perturbation set -----------------------------------
# Five probe points around the (symbolic) input image.  Real use would
# generate these from an image; scripted classifiers let us pin each
# agent's answers exactly.
x0 = InputPoint(np.array([0.0], dtype=np.float32))
spec = Explicit(tuple(InputPoint(np.array([float(i)], dtype=np.float32))
                      for i in range(1, 5)))
points = generate_perturbations(x0, spec)

# Agent A0 wavers between the loopy digits; A1 only sees even digits;
# A2 has a clearer view.
digits = [f"c{d}" for d in range(10)]
a0 = ScriptedClassifier.for_points(points, ["c0", "c6", "c8", "c9", "c0"])
a1 = ScriptedClassifier.for_points(points, ["c0", "c2", "c4", "c6", "c8"])
a2 = ScriptedClassifier.for_points(points, ["c0", "c0", "c0", "c0", "c0"])

# --- knowledge aggregation as set intersection -----------------------------
outcome, classes = maska([a0, a1], x0, spec)
print("two agents  :", outcome, "->", sorted(classes))

outcome, classes = maska([a0, a1, a2], x0, spec)
print("three agents:", outcome)

# --- the same aggregation, read epistemically ------------------------------
# Each agent's candidate set is an indistinguishability block in a Kripke
# model with one world per class.  Announcing "my answer is one of these"
# for every agent leaves exactly the intersection standing.
knowledge = {"A0": {"c0", "c6", "c8", "c9"},
             "A1": {"c0", "c2", "c4", "c6", "c8"}}
model = model_from_knowledge(knowledge, digits).model
for agent, candidates in knowledge.items():
    model = announce(model, candidate_disjunction(candidates))
print("worlds after announcements:", model.worlds)

# An outside hint ("the digit has no tail") can be announced too:
outcome, classes = masks_verify(
    [a0, a1], x0, spec,
    sources=[ExternalSource("shape-hint", parse("~c6 & ~c8"))])
print("with external hint:", outcome)

# --- two recognizers reading a two-digit number -----------------------------
# B reads the first digit and hesitates between 0 and 3; A reads the
# second and hesitates between 0 and 6.  The joint model has one world per
# digit pair.
mb = KripkeModel.build(["0", "3"], {"B": [["0", "3"]]},
                       {w: [Atom(f"c{w}")] for w in ("0", "3")})
ma = KripkeModel.build(["0", "6"], {"A": [["0", "6"]]},
                       {w: [Atom(f"c{w}")] for w in ("0", "6")})
joint = product([mb, ma]).model
print("\njoint model over digit pairs:")
print(format_model(joint))

# Announce "at least one of the digits is a zero" — world 36 dies.
joint = announce(joint, parse("0:c0 | 1:c0"))
print("after 'at least one zero':", joint.worlds)

# Announce "no recognizer can pin down the exact pair" — only 00 survives,
# because at 30 agent A would know the pair, and at 06 agent B would.
no_one_knows = parse(
    "~(K{B} (0:c3 & 1:c0) | K{A} (0:c3 & 1:c0)"
    " | K{B} (0:c0 & 1:c6) | K{A} (0:c0 & 1:c6)"
    " | K{B} (0:c0 & 1:c0) | K{A} (0:c0 & 1:c0))")
joint = announce(joint, no_one_knows)
print("after 'no agent knows the pair':", joint.worlds)
