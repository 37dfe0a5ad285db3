"""Exact 2-domination, the annihilation number and the gap between them."""

from .domination import (
    DominationCertificate,
    gamma2_branch_and_bound,
    gamma2_bruteforce,
    gamma2_cactus,
    is_2_dominating,
)
from .errors import (
    BudgetError,
    GenerationError,
    GraphError,
    ParseError,
    PreconditionError,
    RuleNotApplicable,
    StructureError,
)
from .family import FamilyParams, generate as generate_family, theorem3_witness
from .graph import Graph
from .invariants import (
    AnnihilationCertificate,
    ConjectureRecord,
    annihilation,
    conjecture_check,
    gamma2,
)
from .io import parse_edge_list, read_edge_list, write_dot, write_edge_list
from .reductions import ReductionStep, ReductionTrace, reduce_trace, verify_step
from .scan import ScanReport, ScanSpec, scan
from .structure import decompose_cactus, is_cactus, theorem5_hypotheses

__version__ = "0.1.0"
