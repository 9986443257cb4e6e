"""Integral maximum flow (Dinic) and the flow-based exact solver for few activities."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError
from .model import Assignment, Instance, SolveReport, Target, max_ir_report

# beyond these sizes the (n+1)^p scan is attempted anyway but flagged
SOFT_MAX_ACTIVITIES = 6
SOFT_MAX_AGENTS = 60


@dataclass(frozen=True)
class FlowNetwork:
    num_nodes: int
    source: int
    sink: int
    arcs: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple(tuple(a) for a in self.arcs))
        m = self.num_nodes
        if not (0 <= self.source < m and 0 <= self.sink < m) or self.source == self.sink:
            raise DomainError("source and sink must be distinct nodes of the network")
        for u, v, cap in self.arcs:
            if not (0 <= u < m and 0 <= v < m):
                raise DomainError(f"arc ({u}, {v}) references a missing node")
            if isinstance(cap, bool) or not isinstance(cap, int) or cap < 0:
                raise DomainError(f"arc ({u}, {v}) has invalid capacity {cap!r}")
            if v == self.source:
                raise DomainError("arcs into the source are not allowed")
            if u == self.sink:
                raise DomainError("arcs out of the sink are not allowed")


def max_flow(network: FlowNetwork) -> tuple[int, tuple[int, ...]]:
    """Maximum s-t flow value and the flow carried by each arc (in input order)."""
    m = network.num_nodes
    s, t = network.source, network.sink
    head: list[list[int]] = [[] for _ in range(m)]
    to: list[int] = []
    cap: list[int] = []
    for u, v, c in network.arcs:
        head[u].append(len(to))
        to.append(v)
        cap.append(c)
        head[v].append(len(to))
        to.append(u)
        cap.append(0)

    total = 0
    while True:
        level = [-1] * m
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in head[u]:
                if cap[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[u] + 1
                    queue.append(to[e])
        if level[t] < 0:
            break
        it = [0] * m
        # blocking flow by repeated path search with current-arc pointers
        while True:
            path: list[int] = []
            u = s
            while u != t:
                adj = head[u]
                while it[u] < len(adj):
                    e = adj[it[u]]
                    if cap[e] > 0 and level[to[e]] == level[u] + 1:
                        break
                    it[u] += 1
                if it[u] < len(adj):
                    e = adj[it[u]]
                    path.append(e)
                    u = to[e]
                    continue
                if u == s:
                    break
                level[u] = -1
                e = path.pop()
                u = to[e ^ 1]
                it[u] += 1
            if u != t:
                break
            pushed = min(cap[e] for e in path)
            for e in path:
                cap[e] -= pushed
                cap[e ^ 1] += pushed
            total += pushed

    flows = tuple(network.arcs[k][2] - cap[2 * k] for k in range(len(network.arcs)))
    return total, flows


def _size_vectors(
    instance: Instance, r: int, coords: list[Target], counts: list[list[int]]
) -> Iterator[tuple[int, ...]]:
    """Copy-size vectors summing to ``r`` in lexicographic order.

    Sizes are non-increasing across the copies of one class, and a size ``v``
    used ``m`` times on a class needs at least ``m * v`` agents approving it.
    """
    n = instance.n
    q = len(coords)
    vec = [0] * q

    def rec(pos: int, total: int, run: int) -> Iterator[tuple[int, ...]]:
        if pos == q:
            if total == r:
                yield tuple(vec)
            return
        c = coords[pos][0]
        same = pos > 0 and coords[pos - 1][0] == c
        cap = vec[pos - 1] if same else n
        rest = q - pos - 1
        for v in range(0, min(cap, r - total) + 1):
            if total + v + rest * n < r:
                continue
            m = run + 1 if same and v == vec[pos - 1] else 1
            if v and m * v > counts[c][v]:
                continue
            vec[pos] = v
            yield from rec(pos + 1, total + v, m)
        vec[pos] = 0

    yield from rec(0, 0, 0)


def _flow_assignment(
    instance: Instance, coords: list[Target], sizes: tuple[int, ...]
) -> Assignment | None:
    n = instance.n
    used = [k for k, v in enumerate(sizes) if v > 0]
    source, sink = 0, n + len(used) + 1
    arcs = [(source, 1 + i, 1) for i in range(n)]
    agent_arc: list[tuple[int, int]] = []
    for slot, k in enumerate(used):
        c, _ = coords[k]
        for i in range(n):
            if instance.approves(i, c, sizes[k]):
                agent_arc.append((i, k))
                arcs.append((1 + i, n + 1 + slot, 1))
    arcs.extend((n + 1 + slot, sink, sizes[k]) for slot, k in enumerate(used))
    r = sum(sizes)
    value, flows = max_flow(FlowNetwork(sink + 1, source, sink, tuple(arcs)))
    if value != r:
        return None
    targets: list[Target | None] = [None] * n
    for (i, k), f in zip(agent_arc, flows[n : n + len(agent_arc)]):
        if f:
            targets[i] = coords[k]
    return Assignment(tuple(targets))


def solve_max_ir_fixed_p(instance: Instance) -> SolveReport:
    """Exact maximum IR assignment by scanning group-size vectors with max flow.

    For each target count ``r`` from ``n`` down to 0 and each size vector
    summing to ``r``, a bipartite network decides whether agents can fill the
    copies at exactly those sizes.  Exponential only in the number of copies.
    """
    n = instance.n
    coords = instance.targets()
    warnings = []
    if len(coords) > SOFT_MAX_ACTIVITIES or n > SOFT_MAX_AGENTS:
        warnings.append(
            f"flow scan over {len(coords)} activities and {n} agents may be very slow"
        )
    counts = [[0] * (n + 1) for _ in range(instance.num_classes)]
    for i in range(n):
        for c in range(instance.num_classes):
            for k in instance.projection(i, c):
                counts[c][k] += 1
    for r in range(n, -1, -1):
        for sizes in _size_vectors(instance, r, coords, counts):
            assignment = _flow_assignment(instance, coords, sizes)
            if assignment is not None:
                return max_ir_report(instance, assignment, "thm5-flow", warnings)
    raise AssertionError("the all-void assignment is always feasible")
