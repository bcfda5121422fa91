"""Cluster seeds from reduced words and total positivity tests for flag varieties."""

from .errors import *  # noqa: F401,F403
from .exactalg import ExactMatrix, MultiPoly, PolyRing, det, exact_quotient, parse_rational
from .flagpos import (
    CriterionReport,
    FunctionRecord,
    chamber_functions,
    full_flag_test,
    invariance_check,
    invariance_symbolic,
    partial_flag_criterion,
    partial_flag_test,
    seed_test,
    symbolic_criterion,
    tp_element,
)
from .repmat import (
    GroupElement,
    MinorLabel,
    build_rep,
    element_from_matrix,
    element_from_params,
    generalized_minor,
    unipotent_coordinates,
)
from .rootsys import (
    adapted_longest_word,
    build_root_system,
    longest_word,
    word_indexing,
    word_status,
)
from .seeds import Quiver, Seed, initial_seed, mutate, mutate_sequence, symbolic_seed

__version__ = "0.1.0"
