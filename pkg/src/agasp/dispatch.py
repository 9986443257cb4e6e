"""Pick the best available algorithm for an objective and certify its answer."""

from __future__ import annotations

from dataclasses import replace

from .errors import DomainError, ResourceError, SelfCheckError
from .flow import SOFT_MAX_ACTIVITIES, solve_max_ir_fixed_p
from .greedy import (
    eliminate_infinite_dec,
    solve_inc_few_classes,
    solve_kcopy_dec,
    solve_simple_plus_kcopy_dec,
    solve_single_simple,
)
from .model import (
    Assignment,
    Instance,
    Kind,
    SolveReport,
    classify,
    count_active,
    is_decreasing_on,
    is_individually_rational,
    max_ir_report,
)
from .oracle import DEFAULT_BUDGET, OracleBudget, oracle_max_ir, oracle_nash_exists, oracle_nash_max
from .stability import (
    construct_nash_dec,
    construct_nash_inc,
    construct_nash_mix,
    construct_weak_core,
    is_nash_stable,
    is_weak_core,
    solve_nash_max_single_simple,
)

OBJECTIVES = ("max-ir", "perfect", "nash-any", "nash-max", "weak-core")


def _oracle(instance: Instance, budget: OracleBudget, run):
    try:
        return run(instance, budget)
    except ResourceError as exc:
        shape = classify(instance).kind.value
        raise ResourceError(
            f"no polynomial algorithm applies (shape {shape}, copies {list(instance.copies)}) "
            f"and {exc}"
        ) from None


def solve_max_ir(instance: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> SolveReport:
    n = instance.n
    if instance.num_classes == 0:
        return max_ir_report(instance, Assignment.void(n), "trivial")
    if instance.copies == (1,):
        return solve_single_simple(instance)
    kind = classify(instance).kind
    decreasing = all(is_decreasing_on(instance, c) for c in range(instance.num_classes))
    if decreasing and n > 1 and any(k >= n for k in instance.copies):
        partial, residual = eliminate_infinite_dec(instance)
        inner = solve_max_ir(residual.instance, budget)
        assert inner.assignment is not None
        return max_ir_report(
            instance,
            residual.lift(partial, inner.assignment),
            f"dec-eliminate+{inner.algorithm}",
            inner.warnings,
        )
    if decreasing and instance.num_classes == 1:
        return solve_kcopy_dec(instance)
    if decreasing and instance.num_classes == 2 and 1 in instance.copies:
        return solve_simple_plus_kcopy_dec(instance)
    if kind is Kind.INC and instance.num_classes <= SOFT_MAX_ACTIVITIES:
        return solve_inc_few_classes(instance)
    if instance.num_activities <= SOFT_MAX_ACTIVITIES:
        return solve_max_ir_fixed_p(instance)
    return _oracle(instance, budget, oracle_max_ir)


def _nash_any(instance: Instance, budget: OracleBudget) -> SolveReport:
    kind = classify(instance).kind
    constructors = {
        Kind.INC: ("thm9-inc", construct_nash_inc),
        Kind.DEC: ("thm9-dec", construct_nash_dec),
        Kind.MIX: ("thm9-mix", construct_nash_mix),
    }
    if kind in constructors:
        tag, build = constructors[kind]
        assignment = build(instance)
        return SolveReport("nash-any", tag, assignment, count_active(assignment))
    try:
        found = oracle_nash_exists(instance, budget)
    except ResourceError:
        if instance.copies != (1,):
            raise
        return _nash_max(instance, budget, "nash-any")
    if found is None:
        return SolveReport("nash-any", "oracle", None, None, exists=False)
    return SolveReport("nash-any", "oracle", found, count_active(found))


def _nash_max(instance: Instance, budget: OracleBudget, objective: str = "nash-max") -> SolveReport:
    if instance.copies == (1,):
        report = solve_nash_max_single_simple(instance)
        algorithm = "thm10-nash-max"
    else:
        report = _oracle(instance, budget, oracle_nash_max)
        algorithm = "oracle"
    if report is None:
        return SolveReport(objective, algorithm, None, None, exists=False)
    return replace(report, objective=objective, checks=())


def certify(instance: Instance, report: SolveReport) -> SolveReport:
    """Re-verify an answer with the independent checkers and record what passed.

    Raises :class:`SelfCheckError` if the answer does not hold up.
    """
    a = report.assignment
    if a is None:
        return replace(report, checks=())
    checks = []
    if not is_individually_rational(instance, a):
        raise SelfCheckError(f"{report.algorithm}: assignment is not individually rational")
    checks.append("ir")
    if report.value != count_active(a) and report.objective != "perfect":
        raise SelfCheckError(f"{report.algorithm}: reported value disagrees with the assignment")
    if report.objective == "perfect":
        if count_active(a) != instance.n:
            raise SelfCheckError(f"{report.algorithm}: assignment is not perfect")
        checks.append("perfect")
    if report.objective in ("nash-any", "nash-max"):
        witness = is_nash_stable(instance, a)
        if witness is not None:
            raise SelfCheckError(f"{report.algorithm}: not Nash stable ({witness})")
        checks.append("nash")
    if report.objective == "weak-core":
        witness = is_weak_core(instance, a)
        if witness is not None:
            raise SelfCheckError(f"{report.algorithm}: blocked by a coalition ({witness})")
        checks.append("weak-core")
    return replace(report, checks=tuple(checks))


def dispatch(
    instance: Instance, objective: str, budget: OracleBudget = DEFAULT_BUDGET
) -> SolveReport:
    """Solve ``objective`` with the most specific algorithm that applies.

    Falls back to exhaustive search within ``budget``; raises
    :class:`ResourceError` when even that is out of reach.
    """
    if objective == "max-ir":
        report = solve_max_ir(instance, budget)
    elif objective == "perfect":
        best = solve_max_ir(instance, budget)
        perfect = best.value == instance.n
        report = SolveReport(
            "perfect",
            best.algorithm,
            best.assignment if perfect else None,
            best.value,
            exists=perfect,
            warnings=best.warnings,
        )
    elif objective == "nash-any":
        report = _nash_any(instance, budget)
    elif objective == "nash-max":
        report = _nash_max(instance, budget)
    elif objective == "weak-core":
        assignment = construct_weak_core(instance)
        report = SolveReport("weak-core", "greedy-weak-core", assignment, count_active(assignment))
    else:
        raise DomainError(f"unknown objective {objective!r}; choose from {', '.join(OBJECTIVES)}")
    return certify(instance, report)
