"""Nash stability and weak-core checks, and constructive algorithms for both."""

from __future__ import annotations

import enum
from collections import Counter
from collections.abc import Iterable, Sequence, Set as AbstractSet
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, SelfCheckError
from .model import (
    VOID,
    Assignment,
    Instance,
    Kind,
    SolveReport,
    Target,
    classify,
    count_active,
    is_decreasing_on,
    is_increasing_on,
    is_individually_rational,
)


class WitnessKind(str, enum.Enum):
    JOIN_FROM_VOID = "join-from-void"
    IR_VIOLATION = "ir-violation"
    GROUP_DEVIATION = "group-deviation"


@dataclass(frozen=True)
class DeviationWitness:
    """Why an assignment is not stable.

    ``agent`` wants to leave ``target`` (IR violation) or join it (from void).
    For a group deviation, ``members`` jointly take the unused copy ``target``
    and ``agent`` is the first of them.
    """

    agent: int
    target: Target
    kind: WitnessKind
    members: tuple[int, ...] = ()


def is_nash_stable(instance: Instance, assignment: Assignment) -> Optional[DeviationWitness]:
    """None if the assignment is Nash stable, else the first violation found.

    Joining an unused copy counts as joining a group of size 0.
    """
    assignment.check_against(instance)
    sizes = assignment.group_sizes()
    for i, t in enumerate(assignment.targets):
        if t is not VOID and not instance.approves(i, t[0], sizes[t]):
            return DeviationWitness(i, t, WitnessKind.IR_VIOLATION)
    copies = instance.targets()
    for i in assignment.void_agents():
        for t in copies:
            if instance.approves(i, t[0], sizes.get(t, 0) + 1):
                return DeviationWitness(i, t, WitnessKind.JOIN_FROM_VOID)
    return None


def is_weak_core(instance: Instance, assignment: Assignment) -> Optional[DeviationWitness]:
    """None if no set of void agents can jointly take up an unused copy.

    The witness uses the largest such coalition on the first class that has
    one, made of the lowest-indexed agents.
    """
    if not is_individually_rational(instance, assignment):
        raise DomainError("weak-core membership is only defined for IR assignments")
    sizes = assignment.group_sizes()
    idle = assignment.void_agents()
    for c, k in enumerate(instance.copies):
        free = [(c, j) for j in range(k) if (c, j) not in sizes]
        if not free:
            continue
        group = largest_feasible_group(instance, c, idle)
        if group:
            return DeviationWitness(group[0], free[0], WitnessKind.GROUP_DEVIATION, group)
    return None


def verify_witness(
    instance: Instance, assignment: Assignment, witness: DeviationWitness
) -> bool:
    """Re-evaluate the condition a witness claims against the assignment."""
    c, j = witness.target
    if not (0 <= c < instance.num_classes and 0 <= j < instance.copies[c]):
        return False
    sizes = assignment.group_sizes()
    size = sizes.get(witness.target, 0)
    targets = assignment.targets
    if witness.kind is WitnessKind.IR_VIOLATION:
        return targets[witness.agent] == witness.target and not instance.approves(
            witness.agent, c, size
        )
    if witness.kind is WitnessKind.JOIN_FROM_VOID:
        moved = list(targets)
        if moved[witness.agent] is not VOID:
            return False
        moved[witness.agent] = witness.target
        new_size = Assignment(tuple(moved)).group_sizes()[witness.target]
        return new_size == size + 1 and instance.approves(witness.agent, c, new_size)
    members = witness.members
    return (
        size == 0
        and len(members) > 0
        and witness.agent in members
        and all(targets[i] is VOID for i in members)
        and all(instance.approves(i, c, len(members)) for i in members)
    )


def largest_feasible_group(instance: Instance, cls: int, agents: Iterable[int]) -> tuple[int, ...]:
    """Largest set of ``agents`` that can share one copy of ``cls``.

    A group of size ``k`` exists iff at least ``k`` agents approve ``(cls, k)``;
    the lowest-indexed approvers are returned (empty tuple if none).
    """
    agents = sorted(agents)
    counts = Counter(k for i in agents for k in instance.projection(i, cls))
    k = max((size for size, cnt in counts.items() if cnt >= size), default=0)
    if k == 0:
        return ()
    return tuple(i for i in agents if instance.approves(i, cls, k))[:k]


# ---------------------------------------------------------------------------
# constructors


def _fill_increasing(instance: Instance, targets: list, classes: set[int]) -> None:
    copies = [t for t in instance.targets() if t[0] in classes]
    sizes = Counter(t for t in targets if t is not VOID)
    while True:
        move = next(
            (
                (i, t)
                for i, cur in enumerate(targets)
                if cur is VOID
                for t in copies
                if instance.approves(i, t[0], sizes[t] + 1)
            ),
            None,
        )
        if move is None:
            return
        i, t = move
        targets[i] = t
        sizes[t] += 1


def _fill_decreasing(instance: Instance, targets: list, classes: set[int]) -> None:
    for c, j in instance.targets():
        if c not in classes:
            continue
        idle = [i for i, t in enumerate(targets) if t is VOID]
        k = len(largest_feasible_group(instance, c, idle))
        if k == 0:
            continue
        # everyone idle who would still accept k+1 must be inside, or they would join later
        group = [i for i in idle if instance.approves(i, c, k + 1)]
        assert len(group) <= k
        group += [i for i in idle if i not in group and instance.approves(i, c, k)][: k - len(group)]
        for i in group:
            targets[i] = (c, j)


def construct_nash_inc(instance: Instance) -> Assignment:
    """Let void agents join groups one at a time until nobody wants to move."""
    if classify(instance).kind is not Kind.INC:
        raise DomainError("construct_nash_inc requires increasing preferences")
    targets: list = [VOID] * instance.n
    _fill_increasing(instance, targets, set(range(instance.num_classes)))
    return Assignment(tuple(targets))


def construct_nash_dec(instance: Instance) -> Assignment:
    """Fill copies one after another with the largest group the idle agents allow.

    Idle agents that would tolerate one more member are always placed inside
    the group, so nobody left outside wants to join it later.
    """
    if not all(is_decreasing_on(instance, c) for c in range(instance.num_classes)):
        raise DomainError("construct_nash_dec requires decreasing preferences")
    targets: list = [VOID] * instance.n
    _fill_decreasing(instance, targets, set(range(instance.num_classes)))
    return Assignment(tuple(targets))


def construct_nash_mix(
    instance: Instance,
    split: Optional[tuple[Iterable[int], Iterable[int]]] = None,
) -> Assignment:
    """Decreasing classes first, then increasing classes for the agents still idle.

    ``split`` is ``(increasing classes, decreasing classes)``; when omitted it
    is taken from :func:`classify`.
    """
    p = instance.num_classes
    if split is None:
        shape = classify(instance)
        if shape.kind not in (Kind.INC, Kind.DEC, Kind.MIX):
            raise DomainError(f"instance is {shape.kind.value}, not mixed increasing-decreasing")
        plus, minus = set(shape.plus), set(shape.minus)
    else:
        plus, minus = set(split[0]), set(split[1])
    if plus & minus or plus | minus != set(range(p)):
        raise DomainError("split must partition the activity classes")
    if not all(is_increasing_on(instance, c) for c in plus):
        raise DomainError("some class in the increasing part is not increasing")
    if not all(is_decreasing_on(instance, c) for c in minus):
        raise DomainError("some class in the decreasing part is not decreasing")
    targets: list = [VOID] * instance.n
    _fill_decreasing(instance, targets, minus)
    _fill_increasing(instance, targets, plus)
    return Assignment(tuple(targets))


def nash_max_group(projections: Sequence[AbstractSet[int]]) -> Optional[tuple[int, ...]]:
    """Members of a largest Nash stable group on one simple activity.

    ``projections[i]`` is the set of sizes agent ``i`` approves.  For a
    candidate size ``k`` the activity must hold every agent approving both
    ``k`` and ``k + 1``, nobody may approve ``k + 1`` without ``k``, and the
    remaining seats go to agents approving ``k`` only.  Returns None when no
    Nash stable assignment exists.
    """
    n = len(projections)
    if n and all(n in s for s in projections):
        return tuple(range(n))
    for k in range(n - 1, 0, -1):
        only_k: list[int] = []
        both: list[int] = []
        for i, s in enumerate(projections):
            if k in s:
                (both if k + 1 in s else only_k).append(i)
            elif k + 1 in s:
                break
        else:
            if len(both) <= k <= len(both) + len(only_k):
                return tuple(sorted(both + only_k[: k - len(both)]))
    if all(1 not in s for s in projections):
        return ()
    return None


def solve_nash_max_single_simple(instance: Instance) -> Optional[SolveReport]:
    """Nash stable assignment with the most active agents for one simple activity.

    Returns None when no Nash stable assignment exists.
    """
    if instance.copies != (1,):
        raise DomainError("solve_nash_max_single_simple needs exactly one simple activity")
    n = instance.n
    group = nash_max_group([instance.projection(i, 0) for i in range(n)])
    if group is None:
        return None
    assignment = Assignment.from_groups(n, {(0, 0): group} if group else {})
    witness = is_nash_stable(instance, assignment)
    if witness is not None:
        raise SelfCheckError(f"nash-max construction is not stable: {witness}")
    return SolveReport(
        objective="nash-max",
        algorithm="thm10-nash-max",
        assignment=assignment,
        value=count_active(assignment),
        checks=("ir", "nash"),
    )


def construct_weak_core(instance: Instance) -> Assignment:
    """Give each copy, in order, the largest group the idle agents can form."""
    targets: list = [VOID] * instance.n
    for c, j in instance.targets():
        idle = [i for i, t in enumerate(targets) if t is VOID]
        for i in largest_feasible_group(instance, c, idle):
            targets[i] = (c, j)
    return Assignment(tuple(targets))
