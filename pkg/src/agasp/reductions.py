"""Instance builders from hardness reductions, plus seeded random generators."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DomainError
from .model import Copies, Instance, Kind

INFEASIBLE = math.inf


@dataclass(frozen=True)
class X3CInstance:
    """Exact cover by 3-sets over the ground set {1, ..., 3q}."""

    q: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 1:
            raise DomainError(f"q must be a positive integer, got {self.q!r}")
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        for raw, s in zip(self.sets, sets):
            if len(s) != 3 or not all(isinstance(x, int) and 1 <= x <= 3 * self.q for x in s):
                raise DomainError(f"{sorted(raw)} is not a 3-subset of 1..{3 * self.q}")


@dataclass(frozen=True)
class SchedulingInstance:
    """Jobs on unrelated machines with processing times in {1, 2, INFEASIBLE}.

    ``times[i][j]`` is the running time of job ``i`` on machine ``j``.
    """

    times: tuple[tuple[Union[int, float], ...], ...]

    def __post_init__(self) -> None:
        times = tuple(tuple(row) for row in self.times)
        object.__setattr__(self, "times", times)
        widths = {len(row) for row in times}
        if len(widths) > 1:
            raise DomainError("scheduling matrix rows have different lengths")
        for row in times:
            for x in row:
                if x not in (1, 2) and x != INFEASIBLE:
                    raise DomainError(f"processing time {x!r} not in {{1, 2, inf}}")

    @property
    def jobs(self) -> int:
        return len(self.times)

    @property
    def machines(self) -> int:
        return len(self.times[0]) if self.times else 0


def reduce_x3c(x3c: X3CInstance) -> Instance:
    """One agent per element, one simple class per set; members accept any size >= 3.

    The cover exists iff the resulting increasing instance has a perfect assignment.
    """
    n = 3 * x3c.q
    votes = [
        [(j, k) for j, s in enumerate(x3c.sets) if i + 1 in s for k in range(3, n + 1)]
        for i in range(n)
    ]
    return Instance.create([1] * len(x3c.sets), votes)


def reduce_scheduling(sched: SchedulingInstance) -> Instance:
    """One agent per job, one simple class per machine.

    A job taking 1 unit accepts sharing the machine with one other job, a
    job taking 2 units only accepts it alone, and infeasible pairs are
    disapproved.  Makespan <= 2 iff a perfect assignment exists.
    """
    sizes = {1: (1, 2), 2: (1,)}
    votes = [
        [(j, k) for j, t in enumerate(row) if t != INFEASIBLE for k in sizes[int(t)] if k <= sched.jobs]
        for row in sched.times
    ]
    return Instance.create([1] * sched.machines, votes)


def gen_no_nash(n: int) -> Instance:
    """An instance with one simple activity and no Nash stable assignment.

    Agent 0 only wants a pair, agent 1 only wants to be alone, the rest want
    nothing: whoever holds the activity, somebody objects or wants in.
    """
    if n < 2:
        raise DomainError("gen_no_nash needs n >= 2")
    return Instance.from_projections([[{2}], [{1}]] + [[set()] for _ in range(n - 2)])


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def gen_random(
    seed: int,
    n: int,
    copies: Sequence[Copies],
    shape: Union[Kind, str] = Kind.GENERAL,
    density: float = 0.5,
    max_sizes: Optional[int] = None,
    split: Optional[Sequence[bool]] = None,
) -> Instance:
    """Deterministic random instance of the requested shape.

    ``copies`` gives one entry per activity (equivalent activities are merged,
    so the result may have fewer classes).  Under INC/DEC/INV/MIX each
    agent-activity projection is non-empty with probability ``density`` and
    then has a uniform threshold (INC, DEC) or a uniform interval (INV).
    Under GENERAL each size is approved independently with probability
    ``density``.  ``max_sizes`` caps every projection at that many sizes
    (keeping a random subset).  For MIX, ``split[a]`` marks activity ``a``
    as increasing; by default each activity flips a fair coin.
    """
    try:
        kind = Kind(shape)
    except ValueError:
        raise DomainError(f"unknown preference shape {shape!r}") from None
    if n < 0 or not 0.0 <= density <= 1.0 or (max_sizes is not None and max_sizes < 0):
        raise DomainError("invalid generator parameters")
    if not copies:
        raise DomainError("at least one activity is required")
    rng = _rng(seed)
    p = len(copies)
    if kind is Kind.MIX:
        if split is None:
            split = [bool(b) for b in rng.integers(0, 2, size=p)]
        elif len(split) != p:
            raise DomainError("split must have one flag per activity")
    votes = []
    for _ in range(n):
        vote: list[tuple[int, int]] = []
        for a in range(p):
            if kind is Kind.GENERAL:
                sizes = [k for k in range(1, n + 1) if rng.random() < density]
            elif rng.random() >= density:
                sizes = []
            else:
                inc = kind is Kind.INC or (kind is Kind.MIX and split[a])
                dec = kind is Kind.DEC or (kind is Kind.MIX and not split[a])
                if inc:
                    lo, hi = int(rng.integers(1, n + 1)), n
                elif dec:
                    lo, hi = 1, int(rng.integers(1, n + 1))
                else:
                    lo, hi = sorted(int(x) for x in rng.integers(1, n + 1, size=2))
                sizes = list(range(lo, hi + 1))
            if max_sizes is not None and len(sizes) > max_sizes:
                sizes = sorted(int(x) for x in rng.choice(sizes, size=max_sizes, replace=False))
            vote.extend((a, k) for k in sizes)
        votes.append(vote)
    return Instance.create(list(copies), votes)

