"""Epistemic verification of classifier ensembles.

A classifier's knowledge over a perturbation set is the set of output
classes it emits across the set; an ensemble verifies an input when the
intersection of its members' knowledge sets is a single class.  The
aggregation has an exact epistemic reading: candidate sets are
indistinguishability blocks in an S5 Kripke model, intersection is public
announcement of each member's candidate disjunction, and external knowledge
enters as further announcements.
"""

__version__ = "0.1.0"

from .dataio import LabeledDataset, dataset_from_arrays, load_idx_dataset
from .ensemble import (Candidates, ExternalSource, Inconsistent,
                       Verified, VerificationOutcome, candidate_disjunction,
                       maska, masks_verify, model_from_knowledge, outcome_of)
from .errors import MasksError
from .experiment import ExperimentReport, ExperimentRow, report_to_csv, run_experiment
from .knowledge import Classifier, KnowledgeSet, ckc
from .logic import (And, Announce, Atom, Bot, Consistent, Dist, Every,
                    Formula, Know, KripkeModel, Not, Or, Prop, Top, announce,
                    conjunction, disjunction, distributed_relation, satisfies)
from .modelio import format_model, parse_model
from .nn import (ConstantClassifier, HalfplaneNoise, Layer, MlpNetwork,
                 Quadrant2D, ScriptedClassifier, load_weights,
                 load_weights_file, write_weights)
from .perturb import (AffineGrid, Composite, EpsilonGrid, Explicit,
                      InputPoint, PerturbationSpec, generate_perturbations,
                      translate_image)
from .product import ProductModel, product
from .reduction import (PowerSetModel, ReducedModel, lift_relation,
                        reduce_model, subset_world_id, theorem_agreement)
from .syntax import SourceSpan, format_formula, parse
