"""Solvers for the approval-based group activity selection problem."""

from .dispatch import OBJECTIVES, certify, dispatch
from .errors import DomainError, GaspError, ResourceError, SelfCheckError
from .flow import FlowNetwork, max_flow, solve_max_ir_fixed_p
from .formats import InstanceDocument, parse_instance, parse_instance_document, serialize_instance
from .greedy import (
    Residual,
    approx_single_infcopy,
    eliminate_infinite_dec,
    solve_inc_few_classes,
    solve_kcopy_dec,
    solve_simple_plus_kcopy_dec,
    solve_single_simple,
)
from .model import (
    INFINITE,
    VOID,
    Assignment,
    Instance,
    Kind,
    PreferenceShape,
    SolveReport,
    canonicalize,
    classify,
    count_active,
    is_individually_rational,
    project,
)
from .oracle import (
    OracleBudget,
    oracle_max_ir,
    oracle_nash_exists,
    oracle_nash_max,
    oracle_perfect_exists,
    oracle_weak_core,
)
from .reductions import (
    INFEASIBLE,
    SchedulingInstance,
    X3CInstance,
    gen_no_nash,
    gen_random,
    reduce_scheduling,
    reduce_x3c,
)
from .stability import (
    DeviationWitness,
    WitnessKind,
    construct_nash_dec,
    construct_nash_inc,
    construct_nash_mix,
    construct_weak_core,
    is_nash_stable,
    is_weak_core,
    solve_nash_max_single_simple,
    verify_witness,
)

__version__ = "0.1.0"
