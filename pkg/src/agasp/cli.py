"""Command-line front end.

Exit codes: 0 answer produced (a definite "no" included), 2 bad input,
3 budget exhausted, 1 internal self-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .dispatch import OBJECTIVES, dispatch
from .errors import DomainError, ResourceError, SelfCheckError
from .formats import (
    FormatError,
    InstanceDocument,
    format_report,
    parse_assignment,
    parse_instance_document,
    parse_scheduling,
    parse_x3c,
    report_to_data,
    serialize_assignment,
    serialize_instance,
)
from .model import INFINITE, classify, count_active, is_individually_rational
from .oracle import OracleBudget
from .reductions import gen_no_nash, gen_random, reduce_scheduling, reduce_x3c
from .stability import is_nash_stable, is_weak_core

EXIT_OK, EXIT_BUG, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _budget(args: argparse.Namespace) -> OracleBudget:
    return OracleBudget(max_agents=args.budget_agents, max_states=args.budget_states)


def cmd_solve(args: argparse.Namespace) -> str:
    doc = parse_instance_document(_read(args.instance))
    report = dispatch(doc.instance, args.objective, _budget(args))
    if args.output == "json":
        return json.dumps(report_to_data(doc, report), indent=2) + "\n"
    if args.output == "assignment":
        if report.assignment is None:
            return "null\n"
        return serialize_assignment(doc, report.assignment)
    return format_report(doc, report)


def cmd_check(args: argparse.Namespace) -> str:
    doc = parse_instance_document(_read(args.instance))
    inst = doc.instance
    assignment = parse_assignment(_read(args.assignment), doc)
    ir = is_individually_rational(inst, assignment)
    witness = None
    if args.concept == "ir":
        holds = ir
    elif args.concept == "perfect":
        holds = ir and count_active(assignment) == inst.n
    elif args.concept == "nash":
        witness = is_nash_stable(inst, assignment)
        holds = witness is None
    else:
        witness = is_weak_core(inst, assignment) if ir else None
        holds = ir and witness is None
    result = {"concept": args.concept, "holds": holds}
    if witness is not None:
        labels = doc.copy_labels()
        name, copy = labels[witness.target[0]][witness.target[1]]
        result["witness"] = {
            "kind": witness.kind.value,
            "agent": doc.agents[witness.agent],
            "activity": name,
            "copy": copy,
            "members": [doc.agents[i] for i in witness.members],
        }
    if args.output == "json":
        return json.dumps(result, indent=2) + "\n"
    line = f"{args.concept}: {'holds' if holds else 'fails'}\n"
    if witness is not None:
        w = result["witness"]
        line += f"  {w['kind']}: {w['agent']} -> {w['activity']}#{w['copy']}\n"
    return line


def _parse_copies(spec: str) -> list:
    out = []
    for part in spec.split(","):
        part = part.strip()
        if part == "inf":
            out.append(INFINITE)
        elif part.isdigit() and int(part) > 0:
            out.append(int(part))
        else:
            raise DomainError(f"bad copy count {part!r} in --activities")
    return out


def cmd_generate(args: argparse.Namespace) -> str:
    if args.family == "no-nash":
        inst = gen_no_nash(args.agents)
    else:
        inst = gen_random(
            args.seed,
            args.agents,
            _parse_copies(args.activities),
            args.shape,
            args.density,
            max_sizes=args.max_sizes,
        )
    return serialize_instance(InstanceDocument.from_instance(inst))


def cmd_reduce(args: argparse.Namespace) -> str:
    text = _read(args.source)
    if args.problem == "x3c":
        inst = reduce_x3c(parse_x3c(text))
        agents = [f"e{i + 1}" for i in range(inst.n)]
    else:
        inst = reduce_scheduling(parse_scheduling(text))
        agents = [f"job{i + 1}" for i in range(inst.n)]
    return serialize_instance(InstanceDocument.from_instance(inst, agent_names=agents))


def cmd_classify(args: argparse.Namespace) -> str:
    doc = parse_instance_document(_read(args.instance))
    shape = classify(doc.instance)
    labels = doc.copy_labels()
    name = [lab[0][0] for lab in labels]
    data = {
        "kind": shape.kind.value,
        "increasing": sorted(name[c] for c in shape.plus),
        "decreasing": sorted(name[c] for c in shape.minus),
        "classes": [
            {"activities": sorted({a for a, _ in lab}), "copies": len(lab)} for lab in labels
        ],
    }
    if args.output == "json":
        return json.dumps(data, indent=2) + "\n"
    lines = [f"shape: {data['kind']}"]
    if shape.plus and shape.minus:
        lines.append(f"increasing: {', '.join(data['increasing'])}")
        lines.append(f"decreasing: {', '.join(data['decreasing'])}")
    for cls in data["classes"]:
        lines.append(f"class {'+'.join(cls['activities'])}: {cls['copies']} copies")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agasp", description="Group activity selection with approval preferences."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flag(p: argparse.ArgumentParser, choices: Sequence[str]) -> None:
        p.add_argument("--output", choices=choices, default=choices[0])

    p = sub.add_parser("solve", help="solve an instance for an objective")
    p.add_argument("instance", help="instance document path or - for stdin")
    p.add_argument("--objective", choices=OBJECTIVES, default="max-ir")
    p.add_argument("--budget-agents", type=int, default=OracleBudget.max_agents)
    p.add_argument("--budget-states", type=int, default=OracleBudget.max_states)
    output_flag(p, ["report", "assignment", "json"])
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("check", help="check an assignment against a solution concept")
    p.add_argument("instance")
    p.add_argument("assignment")
    p.add_argument("--concept", choices=["ir", "nash", "perfect", "weak-core"], default="ir")
    output_flag(p, ["report", "json"])
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("generate", help="write a generated instance document")
    p.add_argument("family", choices=["random", "no-nash"])
    p.add_argument("--agents", type=int, required=True)
    p.add_argument("--activities", default="1", help="comma-separated copy counts, e.g. 1,3,inf")
    p.add_argument("--shape", choices=["INC", "DEC", "MIX", "INV", "GENERAL"], default="GENERAL")
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--max-sizes", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_generate)

    p = sub.add_parser("reduce", help="build an instance from an X3C or scheduling document")
    p.add_argument("problem", choices=["x3c", "scheduling"])
    p.add_argument("source")
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("classify", help="report the preference shape of an instance")
    p.add_argument("instance")
    output_flag(p, ["report", "json"])
    p.set_defaults(run=cmd_classify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "budget_agents", 1) < 1 or getattr(args, "budget_states", 1) < 1:
            raise DomainError("budgets must be positive")
        sys.stdout.write(args.run(args))
    except FormatError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return EXIT_INPUT
    except SelfCheckError as exc:
        sys.stderr.write(f"internal error, answer failed self-check: {exc}\n")
        return EXIT_BUG
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ResourceError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_RESOURCE
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
