"""Minimal Markov bases of toric ideals via fiber graphs."""

from .errors import (
    BadSequence,
    BudgetExceeded,
    EmptyMatrix,
    FiberTooLarge,
    LimitExceeded,
    MovesNotInKernel,
    NotConfiguration,
    NotGenerating,
    ParseError,
    RaggedRows,
    ToricMarkovError,
    ZeroColumn,
)
from .exactla import ConfigMatrix, admit_matrix, kernel_lattice_basis, positive_grading
from .fibergraph import Fiber, FiberGraph, enumerate_fiber, fiber_graph, generating_fiber_graphs
from .markov import (
    MarkovBasis,
    Verdict,
    count_markov,
    generating_fibers,
    indispensable_set,
    list_markov_bases,
    markov_bases,
    minimize,
    prufer_tree,
    random_markov,
    seed_basis,
    universal_markov,
    use_seed_basis,
    verify_markov_basis,
)
from .seedbasis import buchberger, canonical, saturate_variable, seed_markov_basis
from .textio import parse_binomial, parse_matrix, render_binomial

__version__ = "0.1.0"
