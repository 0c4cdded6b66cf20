"""Exhaustive, certificate-producing search for positive-defect Chern data.

The package enumerates candidate Chern numbers of the normal bundle of a
smooth subvariety of projective space and checks whether the associated
integer linear recurrence has the sign pattern a positive duality defect
would force.
"""

__version__ = "0.1.0"

from .recurrence import PatternVerdict, check_pattern, iter_segre, segre_sequence
from .casegen import (
    BoundsVector,
    CaseSpec,
    ChernTuple,
    ConstraintError,
    DefectBranch,
    admissible_case,
    chern_bounds,
    defect_branches,
    degree_bound,
    degree_of,
    log_concavity_ok,
)
from .search import Candidate, Certificate, SearchOptions, partition_space, run_case, search_raw
from .codim3 import (
    LemmaAnomaly,
    LemmaReport,
    brute_force_classify,
    find_double_zero,
    integer_nth_root,
    poly_divide,
    theorem51_certificate,
    u_sequence,
    verify_lemma_structure,
)

__all__ = [
    "BoundsVector",
    "Candidate",
    "CaseSpec",
    "Certificate",
    "ChernTuple",
    "ConstraintError",
    "DefectBranch",
    "LemmaAnomaly",
    "LemmaReport",
    "PatternVerdict",
    "SearchOptions",
    "admissible_case",
    "brute_force_classify",
    "check_pattern",
    "chern_bounds",
    "defect_branches",
    "degree_bound",
    "degree_of",
    "find_double_zero",
    "integer_nth_root",
    "iter_segre",
    "log_concavity_ok",
    "partition_space",
    "poly_divide",
    "run_case",
    "search_raw",
    "segre_sequence",
    "theorem51_certificate",
    "u_sequence",
    "verify_lemma_structure",
]
