"""Polynomial solvers for restricted instances and the greedy approximation."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .flow import solve_max_ir_fixed_p
from .model import (
    VOID,
    Assignment,
    Instance,
    SolveReport,
    Target,
    canonicalize,
    dec_tolerance,
    is_decreasing_on,
    is_increasing_on,
    max_ir_report,
)
from .stability import largest_feasible_group


def _require_decreasing(instance: Instance, classes: Sequence[int]) -> None:
    for c in classes:
        if not is_decreasing_on(instance, c):
            raise DomainError(f"class {c} does not have decreasing preferences")


def solve_single_simple(instance: Instance) -> SolveReport:
    """One simple activity: the largest k with at least k agents approving size k."""
    if instance.copies != (1,):
        raise DomainError("solve_single_simple needs exactly one simple activity")
    group = largest_feasible_group(instance, 0, range(instance.n))
    assignment = Assignment.from_groups(instance.n, {(0, 0): group} if group else {})
    return max_ir_report(instance, assignment, "prop2-greedy")


def kcopy_groups(tolerance: dict[int, int], k: int) -> list[tuple[int, ...]]:
    """Greedy groups for ``k`` copies of one decreasing activity.

    ``tolerance`` maps agent to the largest group size it accepts.  Agents are
    taken in non-increasing tolerance (ties by index); each group is the
    longest prefix of the remaining agents whose last member tolerates the
    prefix length.
    """
    order = sorted(tolerance, key=lambda i: (-tolerance[i], i))
    groups: list[tuple[int, ...]] = []
    pos = 0
    while len(groups) < k and pos < len(order):
        size = 0
        while pos + size < len(order) and tolerance[order[pos + size]] >= size + 1:
            size += 1
        if size == 0:
            break
        groups.append(tuple(sorted(order[pos : pos + size])))
        pos += size
    return groups


def solve_kcopy_dec(instance: Instance) -> SolveReport:
    """One k-copyable activity with decreasing preferences."""
    if instance.num_classes != 1:
        raise DomainError("solve_kcopy_dec needs exactly one activity class")
    _require_decreasing(instance, [0])
    tolerance = {i: dec_tolerance(instance, i, 0) for i in range(instance.n)}
    groups = kcopy_groups(tolerance, instance.copies[0])
    assignment = Assignment.from_groups(instance.n, {(0, j): g for j, g in enumerate(groups)})
    return max_ir_report(instance, assignment, "thm6-greedy")


def solve_simple_plus_kcopy_dec(instance: Instance) -> SolveReport:
    """One simple class plus one k-copyable class, both decreasing.

    Tries every size ``s`` for the simple class (0 included), staffing it with
    the approvers least tolerant of the copyable class, and fills the copyable
    class greedily with everyone else.  Ties go to the smaller ``s``.
    """
    if instance.num_classes != 2 or 1 not in instance.copies:
        raise DomainError("needs one simple class and one k-copyable class")
    simple = 0 if instance.copies[0] == 1 else 1
    other = 1 - simple
    _require_decreasing(instance, [0, 1])
    n, k = instance.n, instance.copies[other]
    u_other = {i: dec_tolerance(instance, i, other) for i in range(n)}
    best: Optional[tuple[int, tuple[int, ...], list[tuple[int, ...]]]] = None
    for s in range(n + 1):
        if s == 0:
            chosen: tuple[int, ...] = ()
        else:
            candidates = [i for i in range(n) if instance.approves(i, simple, s)]
            if len(candidates) < s:
                continue
            chosen = tuple(sorted(sorted(candidates, key=lambda i: (u_other[i], i))[:s]))
        rest = {i: u for i, u in u_other.items() if i not in chosen}
        groups = kcopy_groups(rest, k)
        total = s + sum(map(len, groups))
        if best is None or total > best[0]:
            best = (total, chosen, groups)
    assert best is not None
    _, chosen, groups = best
    layout: dict[Target, tuple[int, ...]] = {(other, j): g for j, g in enumerate(groups)}
    if chosen:
        layout[(simple, 0)] = chosen
    return max_ir_report(
        instance, Assignment.from_groups(n, layout), "simple-plus-kcopy-greedy"
    )


def solve_inc_few_classes(instance: Instance) -> SolveReport:
    """Increasing preferences: one copy per class suffices, so solve the collapsed instance."""
    if not all(is_increasing_on(instance, c) for c in range(instance.num_classes)):
        raise DomainError("solve_inc_few_classes requires increasing preferences")
    collapsed = Instance(instance.n, (1,) * instance.num_classes, instance.votes)
    report = solve_max_ir_fixed_p(collapsed)
    assert report.assignment is not None
    return max_ir_report(instance, report.assignment, "cor1-inc-flow", report.warnings)


@dataclass(frozen=True)
class Residual:
    """What is left after giving private copies of unlimited classes away.

    ``agents[r]`` is the original index of residual agent ``r``, and
    ``copy_origin[c][j]`` the original copy behind residual copy ``(c, j)``.
    """

    instance: Instance
    agents: tuple[int, ...]
    copy_origin: tuple[tuple[Target, ...], ...]

    def lift(self, partial: Assignment, assignment: Assignment) -> Assignment:
        """Merge an assignment of the residual instance back into ``partial``."""
        targets = list(partial.targets)
        for r, t in enumerate(assignment.targets):
            if t is not VOID:
                targets[self.agents[r]] = self.copy_origin[t[0]][t[1]]
        return Assignment(tuple(targets))


def eliminate_infinite_dec(instance: Instance) -> tuple[Assignment, Residual]:
    """Seat every agent that accepts being alone on an unlimited class on a private copy.

    Only valid for decreasing preferences, where a singleton on an unlimited
    class never blocks anyone else.
    """
    n = instance.n
    _require_decreasing(instance, range(instance.num_classes))
    unlimited = [c for c, k in enumerate(instance.copies) if k >= n]
    if not unlimited:
        raise DomainError("instance has no class with at least n copies")
    targets: list = [VOID] * n
    for c in unlimited:
        j = 0
        for i in range(n):
            if targets[i] is VOID and instance.approves(i, c, 1):
                targets[i] = (c, j)
                j += 1
    partial = Assignment(tuple(targets))
    agents = partial.void_agents()
    kept = [c for c in range(instance.num_classes) if c not in unlimited]
    votes = [
        [(kept.index(c), k) for c, k in instance.votes[i] if c in kept and k <= len(agents)]
        for i in agents
    ]
    residual, merged = canonicalize([instance.copies[c] for c in kept], votes)
    origin = []
    for cls, group in enumerate(merged):
        copies = [(kept[a], j) for a in group for j in range(instance.copies[kept[a]])]
        origin.append(tuple(copies[: residual.copies[cls]]))
    return partial, Residual(residual, agents, tuple(origin))


def approx_single_infcopy(instance: Instance) -> SolveReport:
    """Greedy for one unlimited class: repeatedly seat the largest feasible group.

    Guarantees at least a 1/sqrt(n) fraction of the optimum.
    """
    n = instance.n
    if instance.num_classes != 1 or instance.copies[0] < n:
        raise DomainError("approx_single_infcopy needs a single class with at least n copies")
    targets: list = [VOID] * n
    for j in range(instance.copies[0]):
        idle = [i for i, t in enumerate(targets) if t is VOID]
        group = largest_feasible_group(instance, 0, idle)
        if not group:
            break
        for i in group:
            targets[i] = (0, j)
    return max_ir_report(instance, Assignment(tuple(targets)), "thm7-approx")
