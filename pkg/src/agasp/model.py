"""Core value types: instances, assignments, preference shapes and solve reports.

Agents and activity classes are dense 0-based indices.  An activity class
bundles all mutually equivalent activities; ``copies[c]`` says how many
identical copies of class ``c`` may be organised.  A vote is the set of
approved ``(class, size)`` pairs; everything outside it ranks below doing
nothing, and the void activity itself is implicit.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Optional, Union

from .errors import DomainError, SelfCheckError

#: An activity copy, ``(class index, copy index)``.
Target = tuple[int, int]
#: Marker for an agent that does not take part in any activity.
VOID = None

INFINITE = math.inf

Copies = Union[int, float]


def _normalize_copies(copies: Copies, n: int) -> int:
    if copies == INFINITE:
        return max(n, 1)
    if isinstance(copies, bool) or not isinstance(copies, int) or copies < 1:
        raise DomainError(f"copies must be a positive integer or INFINITE, got {copies!r}")
    # more than n copies can never be used simultaneously
    return min(copies, max(n, 1))


@dataclass(frozen=True)
class Instance:
    """An a-GASP instance with equivalence-free activity classes.

    Use :meth:`create` (or :func:`canonicalize`) to build an instance from raw
    activities that may contain equivalent duplicates; the plain constructor
    rejects them.
    """

    n: int
    copies: tuple[int, ...]
    votes: tuple[frozenset[tuple[int, int]], ...]
    _proj: tuple[tuple[frozenset[int], ...], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        n = self.n
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise DomainError(f"agent count must be a non-negative integer, got {n!r}")
        copies = tuple(_normalize_copies(k, n) for k in self.copies)
        votes = tuple(frozenset((int(c), int(k)) for c, k in v) for v in self.votes)
        object.__setattr__(self, "copies", copies)
        object.__setattr__(self, "votes", votes)
        if len(votes) != n:
            raise DomainError(f"expected {n} votes, got {len(votes)}")
        p = len(copies)
        proj: list[list[set[int]]] = [[set() for _ in range(p)] for _ in range(n)]
        for i, vote in enumerate(votes):
            for c, k in vote:
                if not 0 <= c < p:
                    raise DomainError(f"agent {i} approves unknown class {c}")
                if not 1 <= k <= n:
                    raise DomainError(f"agent {i} approves size {k} outside [1, {n}]")
                proj[i][c].add(k)
        frozen = tuple(tuple(frozenset(s) for s in row) for row in proj)
        object.__setattr__(self, "_proj", frozen)
        columns = [tuple(frozen[i][c] for i in range(n)) for c in range(p)]
        if len(set(columns)) != p:
            raise DomainError(
                "instance contains equivalent activity classes; build it with Instance.create"
            )

    # construction helpers -------------------------------------------------

    @classmethod
    def create(
        cls,
        copies: Sequence[Copies],
        votes: Sequence[Iterable[tuple[int, int]]],
    ) -> "Instance":
        """Build an instance, merging equivalent activities into one class."""
        return canonicalize(copies, votes)[0]

    @classmethod
    def from_projections(
        cls,
        projections: Sequence[Union[Sequence[Iterable[int]], Mapping[int, Iterable[int]]]],
        copies: Optional[Sequence[Copies]] = None,
    ) -> "Instance":
        """Build from per-agent, per-class size sets.

        ``projections[i]`` is either a sequence indexed by class or a mapping
        ``class -> sizes``.  ``copies`` defaults to one copy of every class.

        >>> inst = Instance.from_projections([[{1}], [{2}], [{2}]])
        >>> inst.n, inst.copies
        (3, (1,))
        """
        votes = []
        p = 0
        for row in projections:
            items = row.items() if isinstance(row, Mapping) else enumerate(row)
            vote = []
            for c, sizes in items:
                p = max(p, c + 1)
                vote.extend((c, k) for k in sizes)
            votes.append(vote)
        if copies is None:
            copies = [1] * p
        return cls.create(copies, votes)

    # queries --------------------------------------------------------------

    @property
    def num_classes(self) -> int:
        return len(self.copies)

    @property
    def num_activities(self) -> int:
        """Total number of copy-expanded activities."""
        return sum(self.copies)

    def projection(self, agent: int, cls: int) -> frozenset[int]:
        return self._proj[agent][cls]

    def approves(self, agent: int, cls: int, size: int) -> bool:
        return size in self._proj[agent][cls]

    def targets(self) -> list[Target]:
        """Every activity copy in class order, then copy order."""
        return [(c, j) for c, k in enumerate(self.copies) for j in range(k)]

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, copies={self.copies}, votes={[sorted(v) for v in self.votes]})"


def canonicalize(
    copies: Sequence[Copies],
    votes: Sequence[Iterable[tuple[int, int]]],
) -> tuple[Instance, tuple[tuple[int, ...], ...]]:
    """Merge equivalent activities.

    Two activities are equivalent when every agent approves exactly the same
    sizes of both.  Returns the canonical instance together with, for each
    class, the indices of the input activities it absorbed (in input order).
    Class order follows first occurrence.
    """
    n = len(votes)
    votes = [list(v) for v in votes]
    p = len(copies)
    columns: list[list[set[int]]] = [[set() for _ in range(n)] for _ in range(p)]
    for i, vote in enumerate(votes):
        for a, k in vote:
            if not 0 <= a < p:
                raise DomainError(f"agent {i} approves unknown activity {a}")
            columns[a][i].add(k)
    first: dict[tuple[frozenset[int], ...], int] = {}
    members: list[list[int]] = []
    new_index = [0] * p
    for a in range(p):
        key = tuple(frozenset(s) for s in columns[a])
        if key not in first:
            first[key] = len(members)
            members.append([])
        new_index[a] = first[key]
        members[first[key]].append(a)
    merged = []
    for group in members:
        total: Copies = 0
        for a in group:
            k = copies[a]
            if k != INFINITE:
                _normalize_copies(k, n)
            total += k
        merged.append(total if total == INFINITE else min(int(total), max(n, 1)))
    new_votes = [{(new_index[a], k) for a, k in vote} for vote in votes]
    inst = Instance(n, tuple(merged), tuple(frozenset(v) for v in new_votes))
    return inst, tuple(tuple(g) for g in members)


def project(instance: Instance, agent: int, cls: int) -> frozenset[int]:
    """Sizes ``k`` such that ``agent`` approves ``(cls, k)``."""
    if not 0 <= agent < instance.n:
        raise DomainError(f"unknown agent {agent}")
    if not 0 <= cls < instance.num_classes:
        raise DomainError(f"unknown class {cls}")
    return instance.projection(agent, cls)


# ---------------------------------------------------------------------------
# assignments


@dataclass(frozen=True)
class Assignment:
    """Maps every agent to an activity copy or to :data:`VOID`."""

    targets: tuple[Optional[Target], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "targets",
            tuple(None if t is None else (int(t[0]), int(t[1])) for t in self.targets),
        )

    @classmethod
    def void(cls, n: int) -> "Assignment":
        return cls((VOID,) * n)

    @classmethod
    def from_groups(cls, n: int, groups: Mapping[Target, Iterable[int]]) -> "Assignment":
        targets: list[Optional[Target]] = [VOID] * n
        for target, members in groups.items():
            for i in members:
                if targets[i] is not VOID:
                    raise DomainError(f"agent {i} placed in two groups")
                targets[i] = target
        return cls(tuple(targets))

    @property
    def n(self) -> int:
        return len(self.targets)

    def groups(self) -> dict[Target, tuple[int, ...]]:
        """Non-empty groups keyed by copy, in copy order."""
        out: dict[Target, list[int]] = {}
        for i, t in enumerate(self.targets):
            if t is not VOID:
                out.setdefault(t, []).append(i)
        return {t: tuple(out[t]) for t in sorted(out)}

    def group_sizes(self) -> dict[Target, int]:
        sizes: dict[Target, int] = {}
        for t in self.targets:
            if t is not VOID:
                sizes[t] = sizes.get(t, 0) + 1
        return sizes

    def void_agents(self) -> tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.targets) if t is VOID)

    def sort_key(self) -> tuple:
        """Lexicographic key over the target mapping; VOID sorts after every copy."""
        return tuple((1, 0, 0) if t is VOID else (0, *t) for t in self.targets)

    def check_against(self, instance: Instance) -> None:
        if self.n != instance.n:
            raise DomainError(f"assignment covers {self.n} agents, instance has {instance.n}")
        for i, t in enumerate(self.targets):
            if t is VOID:
                continue
            c, j = t
            if not 0 <= c < instance.num_classes or not 0 <= j < instance.copies[c]:
                raise DomainError(f"agent {i} assigned to nonexistent copy {t}")


def is_individually_rational(instance: Instance, assignment: Assignment) -> bool:
    """Every member of every group approves its class at the group's size."""
    assignment.check_against(instance)
    sizes = assignment.group_sizes()
    return all(
        t is VOID or instance.approves(i, t[0], sizes[t])
        for i, t in enumerate(assignment.targets)
    )


def count_active(assignment: Assignment) -> int:
    """Number of agents assigned to a non-void activity."""
    return sum(t is not VOID for t in assignment.targets)


# ---------------------------------------------------------------------------
# preference shapes


class Kind(str, enum.Enum):
    INC = "INC"
    DEC = "DEC"
    MIX = "MIX"
    INV = "INV"
    GENERAL = "GENERAL"


@dataclass(frozen=True)
class PreferenceShape:
    """Result of :func:`classify`.

    ``lower[i][c]`` / ``upper[i][c]`` are the interval thresholds witnessing
    the kind (``None`` where the kind does not use them).  An empty projection
    is encoded as ``lower = n + 1`` for increasing classes, ``upper = 0`` for
    decreasing ones, and ``(1, 0)`` under INV.
    """

    kind: Kind
    plus: frozenset[int] = frozenset()
    minus: frozenset[int] = frozenset()
    lower: Optional[tuple[tuple[Optional[int], ...], ...]] = None
    upper: Optional[tuple[tuple[Optional[int], ...], ...]] = None


def _interval(sizes: frozenset[int]) -> Optional[tuple[int, int]]:
    if not sizes:
        return (1, 0)
    lo, hi = min(sizes), max(sizes)
    return (lo, hi) if hi - lo + 1 == len(sizes) else None


def classify(instance: Instance) -> PreferenceShape:
    """Most specific shape in the order INC, DEC, MIX, INV, GENERAL."""
    n, p = instance.n, instance.num_classes
    intervals = [[_interval(instance.projection(i, c)) for c in range(p)] for i in range(n)]
    if any(iv is None for row in intervals for iv in row):
        return PreferenceShape(Kind.GENERAL)

    def inc_ok(iv: tuple[int, int]) -> bool:
        return iv == (1, 0) or iv[1] == n

    def dec_ok(iv: tuple[int, int]) -> bool:
        return iv[0] == 1

    inc_classes = frozenset(c for c in range(p) if all(inc_ok(intervals[i][c]) for i in range(n)))
    dec_classes = frozenset(c for c in range(p) if all(dec_ok(intervals[i][c]) for i in range(n)))

    def lo(i: int, c: int) -> int:
        iv = intervals[i][c]
        return n + 1 if iv == (1, 0) else iv[0]

    def hi(i: int, c: int) -> int:
        return intervals[i][c][1]

    everything = frozenset(range(p))
    if inc_classes == everything:
        lower = tuple(tuple(lo(i, c) for c in range(p)) for i in range(n))
        return PreferenceShape(Kind.INC, plus=everything, lower=lower)
    if dec_classes == everything:
        upper = tuple(tuple(hi(i, c) for c in range(p)) for i in range(n))
        return PreferenceShape(Kind.DEC, minus=everything, upper=upper)
    if inc_classes | dec_classes == everything:
        plus = inc_classes
        minus = everything - plus
        lower = tuple(tuple(lo(i, c) if c in plus else None for c in range(p)) for i in range(n))
        upper = tuple(tuple(hi(i, c) if c in minus else None for c in range(p)) for i in range(n))
        return PreferenceShape(Kind.MIX, plus=plus, minus=minus, lower=lower, upper=upper)
    lower = tuple(tuple(intervals[i][c][0] for c in range(p)) for i in range(n))
    upper = tuple(tuple(intervals[i][c][1] for c in range(p)) for i in range(n))
    return PreferenceShape(Kind.INV, lower=lower, upper=upper)


def dec_tolerance(instance: Instance, agent: int, cls: int) -> int:
    """Largest acceptable size on ``cls`` for a decreasing projection, 0 if empty.

    Raises :class:`DomainError` when the projection is not a prefix ``[1, u]``.
    """
    sizes = instance.projection(agent, cls)
    u = max(sizes, default=0)
    if len(sizes) != u:
        raise DomainError(
            f"agent {agent} is not decreasing on class {cls}: approves {sorted(sizes)}"
        )
    return u


def is_increasing_on(instance: Instance, cls: int) -> bool:
    n = instance.n
    for i in range(instance.n):
        sizes = instance.projection(i, cls)
        if sizes and (max(sizes) != n or len(sizes) != n - min(sizes) + 1):
            return False
    return True


def is_decreasing_on(instance: Instance, cls: int) -> bool:
    return all(
        len(s) == max(s, default=0) for s in (instance.projection(i, cls) for i in range(instance.n))
    )


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class SolveReport:
    """An answer together with the name of the algorithm and the checks it passed.

    ``exists`` is False when the objective has no solution (e.g. no Nash
    stable or no perfect assignment); ``assignment`` is then ``None``.
    ``value`` is ``count_active`` of the assignment, except for the
    ``perfect`` objective where it is the maximum IR value even when no
    perfect assignment exists.
    """

    objective: str
    algorithm: str
    assignment: Optional[Assignment]
    value: Optional[int]
    exists: bool = True
    checks: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "objective": self.objective,
            "algorithm": self.algorithm,
            "assignment": None
            if self.assignment is None
            else [None if t is None else list(t) for t in self.assignment.targets],
            "value": self.value,
            "exists": self.exists,
            "checks": list(self.checks),
            "warnings": list(self.warnings),
        }


def max_ir_report(
    instance: Instance,
    assignment: Assignment,
    algorithm: str,
    warnings: Iterable[str] = (),
) -> SolveReport:
    """Wrap a maximum-IR answer after re-checking individual rationality."""
    if not is_individually_rational(instance, assignment):
        raise SelfCheckError(f"{algorithm} returned an assignment that is not individually rational")
    return SolveReport(
        objective="max-ir",
        algorithm=algorithm,
        assignment=assignment,
        value=count_active(assignment),
        checks=("ir",),
        warnings=tuple(warnings),
    )
