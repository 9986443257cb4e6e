"""JSON documents for instances, assignments, X3C and scheduling inputs.

Every document is a JSON object with ``schema_version`` and ``kind``.  An
instance looks like::

    {
      "schema_version": 1,
      "kind": "instance",
      "agents": ["ann", "bob"],
      "activities": [{"name": "hike", "copies": 1}, {"name": "bus", "copies": "inf"}],
      "votes": {"ann": {"hike": [{"lo": 6, "hi": 9}], "bus": [3, 5]}, "bob": {}}
    }

A size set is a list whose items are sizes or ``{"lo": .., "hi": ..}``
intervals; a bare interval object is accepted too.  Serialization writes the
canonical form: maximal runs of two or more sizes become intervals, every
agent appears under ``votes`` in agent order, and empty size sets are
omitted.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Union

from .errors import DomainError
from .model import INFINITE, VOID, Assignment, Instance, SolveReport, Target, canonicalize
from .reductions import INFEASIBLE, SchedulingInstance, X3CInstance

SCHEMA_VERSION = 1


class FormatError(DomainError):
    """Unreadable input document; ``code`` is ``syntax``, ``semantic`` or ``version``."""

    code = "format"

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.code, "message": str(self)}


class DocumentSyntaxError(FormatError):
    code = "syntax"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column

    def to_dict(self) -> dict[str, Any]:
        return {**super().to_dict(), "line": self.line, "column": self.column}


class DocumentSemanticError(FormatError):
    code = "semantic"


class SchemaVersionError(FormatError):
    code = "version"


def _load(text: str, kind: str) -> dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise DocumentSemanticError("document must be a JSON object")
    if data.get("schema_version") != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"unsupported schema_version {data.get('schema_version')!r}, expected {SCHEMA_VERSION}"
        )
    if data.get("kind") != kind:
        raise DocumentSemanticError(f"expected a document of kind {kind!r}, got {data.get('kind')!r}")
    return data


def _require(data: dict[str, Any], keys: set[str], optional: set[str] = frozenset()) -> None:
    missing = keys - data.keys()
    extra = data.keys() - keys - optional - {"schema_version", "kind"}
    if missing:
        raise DocumentSemanticError(f"missing field(s): {', '.join(sorted(missing))}")
    if extra:
        raise DocumentSemanticError(f"unknown field(s): {', '.join(sorted(extra))}")


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _names(items: Any, what: str) -> tuple[str, ...]:
    if not isinstance(items, list) or not all(isinstance(x, str) and x for x in items):
        raise DocumentSemanticError(f"{what} must be a list of non-empty strings")
    seen = set()
    for x in items:
        if x in seen:
            raise DocumentSemanticError(f"duplicate {what[:-1]} name {x!r}")
        seen.add(x)
    return tuple(items)


def _sizes(spec: Any, n: int, where: str) -> frozenset[int]:
    items = [spec] if isinstance(spec, dict) else spec
    if not isinstance(items, list):
        raise DocumentSemanticError(f"{where}: size set must be a list or an interval object")
    out: set[int] = set()
    for item in items:
        if isinstance(item, dict):
            if set(item) != {"lo", "hi"} or not (_is_int(item["lo"]) and _is_int(item["hi"])):
                raise DocumentSemanticError(f"{where}: interval must be {{\"lo\": int, \"hi\": int}}")
            lo, hi = item["lo"], item["hi"]
            if lo > hi:
                raise DocumentSemanticError(f"{where}: empty interval [{lo}, {hi}]")
            sizes = range(lo, hi + 1)
        elif _is_int(item):
            sizes = range(item, item + 1)
        else:
            raise DocumentSemanticError(f"{where}: {item!r} is not a size")
        for k in sizes:
            if not 1 <= k <= n:
                raise DocumentSemanticError(f"{where}: size {k} outside [1, {n}]")
            out.add(k)
    return frozenset(out)


def _runs(sizes: frozenset[int]) -> list[Union[int, dict[str, int]]]:
    out: list[Union[int, dict[str, int]]] = []
    ordered = sorted(sizes)
    start = 0
    for k in range(1, len(ordered) + 1):
        if k == len(ordered) or ordered[k] != ordered[k - 1] + 1:
            lo, hi = ordered[start], ordered[k - 1]
            out.append(lo if lo == hi else {"lo": lo, "hi": hi})
            start = k
    return out


def _dump(data: dict[str, Any]) -> str:
    return json.dumps(data, indent=2) + "\n"


# ---------------------------------------------------------------------------
# instances


@dataclass(frozen=True)
class InstanceDocument:
    """Named, lossless form of an instance document.

    ``copies[a]`` is a positive int or :data:`INFINITE`; ``votes[i][a]`` the
    sizes agent ``i`` approves on activity ``a``.
    """

    agents: tuple[str, ...]
    activities: tuple[str, ...]
    copies: tuple[Union[int, float], ...]
    votes: tuple[tuple[frozenset[int], ...], ...]
    _canonical: Any = field(default=None, init=False, repr=False, compare=False)

    def _build(self) -> tuple[Instance, tuple[tuple[int, ...], ...]]:
        if self._canonical is None:
            votes = [
                [(a, k) for a, sizes in enumerate(row) for k in sizes] for row in self.votes
            ]
            object.__setattr__(self, "_canonical", canonicalize(self.copies, votes))
        return self._canonical

    @property
    def instance(self) -> Instance:
        """Canonical instance (equivalent activities merged)."""
        return self._build()[0]

    def copy_labels(self) -> tuple[tuple[tuple[str, int], ...], ...]:
        """For each class copy ``(c, j)``, the document activity and its 1-based copy number."""
        inst, merged = self._build()
        n = len(self.agents)
        labels = []
        for c, group in enumerate(merged):
            names = []
            for a in group:
                k = self.copies[a]
                count = max(n, 1) if k == INFINITE else min(int(k), max(n, 1))
                names.extend((self.activities[a], j + 1) for j in range(count))
            labels.append(tuple(names[: inst.copies[c]]))
        return tuple(labels)

    def target_of(self, activity: str, copy: int) -> Target:
        for c, names in enumerate(self.copy_labels()):
            for j, label in enumerate(names):
                if label == (activity, copy):
                    return (c, j)
        raise DocumentSemanticError(f"no copy {copy} of activity {activity!r}")

    def to_json(self) -> str:
        return serialize_instance(self)

    @classmethod
    def from_instance(
        cls,
        instance: Instance,
        agent_names: Optional[list[str]] = None,
        activity_names: Optional[list[str]] = None,
    ) -> "InstanceDocument":
        n, p = instance.n, instance.num_classes
        agents = tuple(agent_names or [f"agent{i + 1}" for i in range(n)])
        activities = tuple(activity_names or [f"act{c + 1}" for c in range(p)])
        copies = tuple(instance.copies)
        votes = tuple(tuple(instance.projection(i, c) for c in range(p)) for i in range(n))
        return cls(agents, activities, copies, votes)


def parse_instance_document(text: str) -> InstanceDocument:
    data = _load(text, "instance")
    _require(data, {"agents", "activities"}, {"votes"})
    agents = _names(data["agents"], "agents")
    acts = data["activities"]
    if not isinstance(acts, list) or not all(isinstance(a, dict) for a in acts):
        raise DocumentSemanticError("activities must be a list of objects")
    names, copies = [], []
    for a in acts:
        if set(a) - {"name", "copies"} or "name" not in a:
            raise DocumentSemanticError(f"activity entries need 'name' and optional 'copies': {a!r}")
        names.append(a["name"])
        k = a.get("copies", 1)
        if k == "inf":
            copies.append(INFINITE)
        elif _is_int(k) and k >= 1:
            copies.append(k)
        else:
            raise DocumentSemanticError(f"activity {a['name']!r}: copies must be >= 1 or \"inf\"")
    activities = _names(names, "activities")
    n = len(agents)
    agent_index = {x: i for i, x in enumerate(agents)}
    act_index = {x: a for a, x in enumerate(activities)}
    votes = [[frozenset()] * len(activities) for _ in agents]
    raw_votes = data.get("votes", {})
    if not isinstance(raw_votes, dict):
        raise DocumentSemanticError("votes must map agent names to objects")
    for agent, row in raw_votes.items():
        if agent not in agent_index:
            raise DocumentSemanticError(f"votes mention unknown agent {agent!r}")
        if not isinstance(row, dict):
            raise DocumentSemanticError(f"votes of {agent!r} must map activity names to size sets")
        for act, spec in row.items():
            if act not in act_index:
                raise DocumentSemanticError(f"agent {agent!r} votes on unknown activity {act!r}")
            votes[agent_index[agent]][act_index[act]] = _sizes(spec, n, f"{agent}/{act}")
    return InstanceDocument(agents, activities, tuple(copies), tuple(tuple(r) for r in votes))


def parse_instance(text: str) -> Instance:
    """Parse an instance document into its canonical :class:`Instance`."""
    return parse_instance_document(text).instance


def serialize_instance(doc: InstanceDocument) -> str:
    votes = {}
    for agent, row in zip(doc.agents, doc.votes):
        votes[agent] = {act: _runs(s) for act, s in zip(doc.activities, row) if s}
    return _dump(
        {
            "schema_version": SCHEMA_VERSION,
            "kind": "instance",
            "agents": list(doc.agents),
            "activities": [
                {"name": name, "copies": "inf" if k == INFINITE else k}
                for name, k in zip(doc.activities, doc.copies)
            ],
            "votes": votes,
        }
    )


# ---------------------------------------------------------------------------
# assignments


def assignment_to_data(doc: InstanceDocument, assignment: Assignment) -> dict[str, Any]:
    labels = doc.copy_labels()
    groups = []
    for (c, j), members in assignment.groups().items():
        name, copy = labels[c][j]
        groups.append({"activity": name, "copy": copy, "members": [doc.agents[i] for i in members]})
    groups.sort(key=lambda g: (doc.activities.index(g["activity"]), g["copy"]))
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "assignment",
        "groups": groups,
        "void": [doc.agents[i] for i in assignment.void_agents()],
    }


def serialize_assignment(doc: InstanceDocument, assignment: Assignment) -> str:
    return _dump(assignment_to_data(doc, assignment))


def parse_assignment(text: str, doc: InstanceDocument) -> Assignment:
    """Read an assignment document against the instance it refers to.

    Agents not mentioned anywhere are void.
    """
    data = _load(text, "assignment")
    _require(data, {"groups"}, {"void"})
    index = {x: i for i, x in enumerate(doc.agents)}
    targets: list[Optional[Target]] = [VOID] * len(doc.agents)
    seen: set[str] = set()

    def claim(name: Any) -> int:
        if name not in index:
            raise DocumentSemanticError(f"unknown agent {name!r}")
        if name in seen:
            raise DocumentSemanticError(f"agent {name!r} listed twice")
        seen.add(name)
        return index[name]

    if not isinstance(data["groups"], list):
        raise DocumentSemanticError("groups must be a list")
    for g in data["groups"]:
        if not isinstance(g, dict) or set(g) != {"activity", "copy", "members"}:
            raise DocumentSemanticError(f"group entries need activity, copy and members: {g!r}")
        if not _is_int(g["copy"]) or not isinstance(g["members"], list):
            raise DocumentSemanticError(f"malformed group {g!r}")
        target = doc.target_of(g["activity"], g["copy"])
        for name in g["members"]:
            targets[claim(name)] = target
    for name in data.get("void", []):
        claim(name)
    return Assignment(tuple(targets))


# ---------------------------------------------------------------------------
# reduction sources


def parse_x3c(text: str) -> X3CInstance:
    data = _load(text, "x3c")
    _require(data, {"q", "sets"})
    if not _is_int(data["q"]) or not isinstance(data["sets"], list):
        raise DocumentSemanticError("x3c needs integer q and a list of sets")
    try:
        return X3CInstance(data["q"], tuple(tuple(s) for s in data["sets"]))
    except (DomainError, TypeError) as exc:
        raise DocumentSemanticError(str(exc)) from None


def serialize_x3c(x3c: X3CInstance) -> str:
    return _dump(
        {
            "schema_version": SCHEMA_VERSION,
            "kind": "x3c",
            "q": x3c.q,
            "sets": [sorted(s) for s in x3c.sets],
        }
    )


def parse_scheduling(text: str) -> SchedulingInstance:
    data = _load(text, "scheduling")
    _require(data, {"times"})
    rows = data["times"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DocumentSemanticError("times must be a list of rows")
    try:
        return SchedulingInstance(
            tuple(tuple(INFEASIBLE if x == "inf" else x for x in row) for row in rows)
        )
    except DomainError as exc:
        raise DocumentSemanticError(str(exc)) from None


def serialize_scheduling(sched: SchedulingInstance) -> str:
    return _dump(
        {
            "schema_version": SCHEMA_VERSION,
            "kind": "scheduling",
            "times": [["inf" if math.isinf(x) else int(x) for x in row] for row in sched.times],
        }
    )


# ---------------------------------------------------------------------------
# reports


def report_to_data(doc: InstanceDocument, report: SolveReport) -> dict[str, Any]:
    """Machine-readable report; keys mirror :class:`SolveReport` fields."""
    assignment = None
    if report.assignment is not None:
        data = assignment_to_data(doc, report.assignment)
        assignment = {"groups": data["groups"], "void": data["void"]}
    return {
        "objective": report.objective,
        "algorithm": report.algorithm,
        "assignment": assignment,
        "value": report.value,
        "exists": report.exists,
        "checks": list(report.checks),
        "warnings": list(report.warnings),
    }


def format_report(doc: InstanceDocument, report: SolveReport) -> str:
    n = len(doc.agents)
    lines = [f"objective: {report.objective}", f"algorithm: {report.algorithm}"]
    if report.objective == "perfect":
        lines.append(f"perfect assignment: {'yes' if report.exists else 'no'}")
    if report.value is not None:
        lines.append(f"active agents: {report.value} of {n}")
    if report.assignment is None:
        if not report.exists:
            lines.append("no assignment satisfies the objective")
    else:
        data = assignment_to_data(doc, report.assignment)
        for g in data["groups"]:
            lines.append(f"  {g['activity']}#{g['copy']}: {', '.join(g['members'])}")
        lines.append(f"  void: {', '.join(data['void']) if data['void'] else '-'}")
    if report.checks:
        lines.append(f"verified: {', '.join(report.checks)}")
    lines.extend(f"warning: {w}" for w in report.warnings)
    return "\n".join(lines) + "\n"
