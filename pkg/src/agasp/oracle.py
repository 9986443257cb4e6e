"""Exhaustive reference solvers for desk-sized instances.

Every polynomial algorithm in the package is tested against these.  The
search assigns agents in index order; each agent joins an open group, opens
the next unused copy of a class, or stays void.  Opening copies in order of
their smallest member yields each assignment exactly once up to relabelling
of interchangeable copies, and the branch order makes the first assignment
found for any criterion the lexicographically smallest one (void agents sort
after every copy).
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, ResourceError
from .model import VOID, Assignment, Instance, SolveReport, Target, count_active, max_ir_report
from .stability import is_nash_stable, is_weak_core


@dataclass(frozen=True)
class OracleBudget:
    max_agents: int = 10
    max_states: int = 10**8

    def __post_init__(self) -> None:
        if self.max_agents < 1 or self.max_states < 1:
            raise DomainError("oracle budget limits must be positive")


DEFAULT_BUDGET = OracleBudget()


def estimated_states(instance: Instance) -> int:
    """Crude upper bound on the search size: (activities + 1) ** n."""
    return (instance.num_activities + 1) ** instance.n


def _check_budget(instance: Instance, budget: OracleBudget) -> None:
    if instance.n > budget.max_agents and estimated_states(instance) > budget.max_states:
        raise ResourceError(
            f"exhaustive search over {instance.n} agents exceeds the budget "
            f"(max_agents={budget.max_agents}, max_states={budget.max_states})"
        )


def iter_ir_assignments(
    instance: Instance,
    budget: OracleBudget = DEFAULT_BUDGET,
    prune: Optional[Callable[[int, int], bool]] = None,
) -> Iterator[Assignment]:
    """Yield every IR assignment once (canonical copy labels), in lexicographic order.

    ``prune(next_agent, active_so_far)`` may cut a branch; it is consulted at
    every search node.
    """
    _check_budget(instance, budget)
    n, p = instance.n, instance.num_classes
    copies = instance.copies
    proj = [[instance.projection(i, c) for c in range(p)] for i in range(n)]
    targets: list[Optional[Target]] = [VOID] * n
    # open group -> (current size, sizes every member approves)
    groups: dict[Target, tuple[int, frozenset[int]]] = {}
    opened = [0] * p
    states = 0

    def deficit() -> Optional[int]:
        need = 0
        for size, common in groups.values():
            reachable = [s for s in common if s >= size]
            if not reachable:
                return None
            need += min(reachable) - size
        return need

    def rec(i: int, active: int) -> Iterator[Assignment]:
        nonlocal states
        states += 1
        if states > budget.max_states:
            raise ResourceError(f"exhaustive search visited more than {budget.max_states} states")
        need = deficit()
        if need is None or need > n - i:
            return
        if prune is not None and prune(i, active):
            return
        if i == n:
            yield Assignment(tuple(targets))
            return
        options = sorted(
            list(groups) + [(c, opened[c]) for c in range(p) if opened[c] < copies[c] and proj[i][c]]
        )
        for t in options:
            c = t[0]
            targets[i] = t
            if t in groups:
                size, common = groups[t]
                groups[t] = (size + 1, common & proj[i][c])
                yield from rec(i + 1, active + 1)
                groups[t] = (size, common)
            else:
                groups[t] = (1, proj[i][c])
                opened[c] += 1
                yield from rec(i + 1, active + 1)
                opened[c] -= 1
                del groups[t]
        targets[i] = VOID
        yield from rec(i + 1, active)

    yield from rec(0, 0)


def oracle_max_ir(instance: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> SolveReport:
    """Maximum IR assignment by branch and bound; ties go to the lexicographically smallest."""
    best: list[Assignment] = []
    best_value = -1

    def prune(i: int, active: int) -> bool:
        return active + (instance.n - i) <= best_value

    for assignment in iter_ir_assignments(instance, budget, prune):
        value = count_active(assignment)
        if value > best_value:
            best_value = value
            best = [assignment]
            if value == instance.n:
                break
    return max_ir_report(instance, best[0], "oracle")


def oracle_perfect_exists(instance: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    return oracle_max_ir(instance, budget).value == instance.n


def oracle_nash_exists(
    instance: Instance, budget: OracleBudget = DEFAULT_BUDGET
) -> Optional[Assignment]:
    """The lexicographically smallest Nash stable assignment, or None if there is none."""
    for assignment in iter_ir_assignments(instance, budget):
        if is_nash_stable(instance, assignment) is None:
            return assignment
    return None


def oracle_nash_max(
    instance: Instance, budget: OracleBudget = DEFAULT_BUDGET
) -> Optional[SolveReport]:
    """Nash stable assignment with the most active agents, or None if none is stable."""
    best: Optional[Assignment] = None
    for assignment in iter_ir_assignments(instance, budget):
        if best is not None and count_active(assignment) <= count_active(best):
            continue
        if is_nash_stable(instance, assignment) is None:
            best = assignment
    if best is None:
        return None
    return SolveReport(
        objective="nash-max",
        algorithm="oracle",
        assignment=best,
        value=count_active(best),
        checks=("ir", "nash"),
    )


def oracle_weak_core(instance: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> Assignment:
    """The lexicographically smallest IR assignment that no void coalition can block."""
    for assignment in iter_ir_assignments(instance, budget):
        if is_weak_core(instance, assignment) is None:
            return assignment
    raise AssertionError("the weak core is never empty")
