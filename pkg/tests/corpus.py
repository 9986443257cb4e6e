"""Instance documents shared by the format tests and the acceptance run."""

from __future__ import annotations

import json

from agasp import INFINITE, gen_no_nash, gen_random
from agasp.formats import InstanceDocument, serialize_instance

EXAMPLE_ONE = json.dumps(
    {
        "schema_version": 1,
        "kind": "instance",
        "agents": ["ann"] + [f"p{i}" for i in range(2, 10)],
        "activities": [{"name": "a", "copies": 1}, {"name": "b", "copies": 1}],
        "votes": {"ann": {"a": [{"lo": 6, "hi": 9}], "b": {"lo": 3, "hi": 6}}},
    }
)

HAND_WRITTEN = [
    EXAMPLE_ONE,
    # no agents at all
    '{"schema_version": 1, "kind": "instance", "agents": [], "activities": [{"name": "x"}]}',
    # votes section omitted
    '{"schema_version": 1, "kind": "instance", "agents": ["u", "v"], '
    '"activities": [{"name": "x", "copies": "inf"}]}',
    # two equivalent activities, explicit lists mixed with intervals
    '{"schema_version": 1, "kind": "instance", "agents": ["u", "v", "w"], '
    '"activities": [{"name": "x", "copies": 2}, {"name": "y"}], '
    '"votes": {"u": {"x": [1, 2], "y": [{"lo": 1, "hi": 2}]}, "w": {}}}',
    # gaps and singletons
    '{"schema_version": 1, "kind": "instance", "agents": ["a1", "a2", "a3", "a4"], '
    '"activities": [{"name": "hike", "copies": 3}], '
    '"votes": {"a1": {"hike": [1, 3, 4]}, "a2": {"hike": [2]}, "a4": {"hike": {"lo": 1, "hi": 4}}}}',
]


def generated() -> list[str]:
    docs = []
    shapes = ["INC", "DEC", "MIX", "INV", "GENERAL"]
    copy_sets = [[1], [1, 1], [2, INFINITE], [1, 3, INFINITE], [INFINITE]]
    for k in range(43):
        n = 1 + k % 8
        inst = gen_random(1000 + k, n, copy_sets[k % 5], shapes[(k // 5) % 5], 0.3 + 0.1 * (k % 6))
        docs.append(serialize_instance(InstanceDocument.from_instance(inst)))
    for n in (2, 3):
        docs.append(serialize_instance(InstanceDocument.from_instance(gen_no_nash(n))))
    return docs


def documents() -> list[str]:
    """Fifty documents: the hand-written ones first, Example 1 leading."""
    return HAND_WRITTEN + generated()
