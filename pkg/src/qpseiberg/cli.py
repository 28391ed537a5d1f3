"""Command-line front end.

Exit codes: 0 success or agreement, 1 verified disagreement, invalid
input under ``check`` or an obstruction, 2 usage or parse errors, 3 an
operation's precondition failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path as FsPath

from . import fixtures
from .algebra import PathElement
from .errors import InvalidQuiver, ParseError, PreconditionError, QPError
from .jacobian import (
    BoundedIdeal,
    InIdeal,
    NotInIdealCertified,
    ObstructionFound,
    jacobian_relations,
)
from .mutation import mutate_with_trace, premutate
from .quiver import Potential, QuiverWithPotential, export_dot, format_coef, validate
from .reduction import ReductionTrace
from .seiberg import (
    CertifiedDualizable,
    DualityReport,
    Inconclusive,
    delta_status,
    is_good_potential,
    seiberg_dual_with_trace,
    verify_duality,
)
from .textio import parse_qp, parse_terms, serialize_qp

DEFAULT_BOUND = 6


def q(c: Fraction) -> str:
    return format_coef(c)


def potential_json(S: Potential) -> list[dict]:
    return [{"coefficient": q(c), "arrows": list(w)} for w, c in S]


def qp_json(qp: QuiverWithPotential) -> dict:
    return {
        "name": qp.name,
        "vertices": list(qp.quiver.vertices),
        "arrows": [{"name": a.name, "src": a.src, "dst": a.dst} for a in qp.quiver.arrows],
        "potential": potential_json(qp.potential),
    }


def element_json(x: PathElement, quiver) -> list[dict]:
    return [
        {"coefficient": q(c), "arrows": list(p.word), "src": p.src, "dst": p.dst}
        for p, c in x.sorted_terms(quiver)
    ]


def words_json(words) -> list[dict]:
    return [{"coefficient": q(c), "arrows": list(w)} for w, c in words.items()]


def words_text(words) -> str:
    return " ".join(f"{q(c)} {' '.join(w)} ;" for w, c in words.items()) or "0"


def trace_json(trace: ReductionTrace) -> dict:
    return {
        "fuel_used": trace.fuel_used,
        "steps": [
            {
                "eliminated": s.eliminated,
                "solved": s.solved,
                "coefficient": q(s.coefficient),
                "iterations": s.iterations,
                "substitution": {x: words_json(img) for x, img in s.images.items()},
            }
            for s in trace.steps
        ],
    }


def trace_text(trace: ReductionTrace) -> list[str]:
    lines = [f"# reduction: {len(trace.steps)} 2-cycle(s) integrated, fuel used {trace.fuel_used}"]
    for s in trace.steps:
        subs = ", ".join(f"{x} -> {words_text(img)}" for x, img in s.images.items())
        lines.append(f"#   {q(s.coefficient)} {s.eliminated} {s.solved}: {subs}")
    return lines


def load_qp(source: str) -> QuiverWithPotential:
    if source == "-":
        text = sys.stdin.read()
    elif source.startswith("fixture:"):
        text = fixtures.fixture_text(source.split(":", 1)[1])
    else:
        text = FsPath(source).read_text(encoding="utf-8")
    return parse_qp(text)


def load_valid(source: str) -> QuiverWithPotential:
    qp = load_qp(source)
    qp.require_valid()
    return qp


def emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_check(args) -> int:
    qp = load_qp(args.file)
    report = validate(qp, require_cycle_cover=not args.no_cycle_cover)
    verdict = is_good_potential(qp, cyclic=not args.linear)
    payload = {
        "command": "check",
        "name": qp.name,
        "valid": report.ok,
        "validation": report.to_dict(),
        "good_potential": {
            "is_good": verdict.is_good,
            "cyclic": verdict.cyclic,
            "arrow_counts": verdict.arrow_counts,
            "repeated_subpaths": [
                {"subpath": list(pair), "terms": [list(w) for w in words]}
                for pair, words in verdict.repeated_subpaths
            ],
        },
    }
    lines = [f"{qp.name}: {'valid' if report.ok else 'INVALID'}"]
    lines += [f"  {p}" for p in report.problems()]
    lines.append(f"good potential: {'yes' if verdict.is_good else 'no'}")
    low = [f"{x} ({n})" for x, n in verdict.arrow_counts.items() if n < 2]
    if low:
        lines.append("  arrows occurring fewer than twice: " + ", ".join(low))
    for pair, words in verdict.repeated_subpaths:
        lines.append(f"  subpath {' '.join(pair)} repeated in: " + " | ".join(" ".join(w) for w in words))
    emit(args, payload, "\n".join(lines))
    return 0 if report.ok else 1


def cmd_relations(args) -> int:
    qp = load_valid(args.file)
    pres = jacobian_relations(qp)
    payload = {
        "command": "relations",
        "name": qp.name,
        "min_relation_length": pres.min_relation_length,
        "relations": [
            {
                "arrow": x,
                "src": r.endpoints[0],
                "dst": r.endpoints[1],
                "terms": element_json(r, qp.quiver),
            }
            for x, r in pres.relations.items()
        ],
    }
    lines = [f"d/d{x}: {r.format(qp.quiver)}" for x, r in pres.relations.items()]
    emit(args, payload, "\n".join(lines))
    return 0


def cmd_premutate(args) -> int:
    qp = load_valid(args.file)
    pre = premutate(qp, args.k)
    payload = {
        "command": "premutate",
        "vertex": args.k,
        "qp": qp_json(pre.qp_tilde),
        "duals": pre.duals,
        "mesonic": {m: list(ba) for m, ba in pre.mesonic.items()},
        "bracketed": potential_json(pre.bracketed),
        "delta": potential_json(pre.delta),
    }
    emit(args, payload, serialize_qp(pre.qp_tilde))
    return 0


def cmd_mutate(args) -> int:
    qp = load_valid(args.file)
    out, trace = mutate_with_trace(qp, args.k, args.fuel)
    payload = {"command": "mutate", "vertex": args.k, "qp": qp_json(out), "trace": trace_json(trace)}
    emit(args, payload, serialize_qp(out) + "\n".join(trace_text(trace)))
    return 0


def cmd_dual(args) -> int:
    qp = load_valid(args.file)
    out, trace = seiberg_dual_with_trace(qp, args.k, args.fuel, cyclic=not args.linear)
    payload = {"command": "dual", "vertex": args.k, "qp": qp_json(out), "trace": trace_json(trace)}
    emit(args, payload, serialize_qp(out) + "\n".join(trace_text(trace)))
    return 0


def report_json(r: DualityReport) -> dict:
    return {
        "vertex": r.vertex,
        "agree_quiver": r.agree_quiver,
        "agree_potential": r.agree_potential,
        "agree_phi": r.agree_phi,
        "phi": {x: words_json(img) for x, img in r.phi.images.items()},
        "phi_trivial_part": potential_json(r.phi_trivial_part),
        "mutated": qp_json(r.qp_mutated),
        "dual": qp_json(r.qp_dual),
        "notes": r.notes,
    }


def report_text(r: DualityReport) -> list[str]:
    lines = [
        f"vertex {r.vertex}: {'AGREE' if r.agree else 'DISAGREE'}",
        f"  agree_quiver: {str(r.agree_quiver).lower()}",
        f"  agree_potential: {str(r.agree_potential).lower()}",
        f"  agree_phi: {str(r.agree_phi).lower()}",
    ]
    for x, img in r.phi.images.items():
        lines.append(f"  phi: {x} -> {words_text(img)}")
    lines.append("  mutated potential: " + (" ".join(f"{q(c)} {' '.join(w)} ;" for w, c in r.qp_mutated.potential) or "0"))
    lines += [f"  note: {n}" for n in r.notes]
    return lines


def cmd_verify(args) -> int:
    qp = load_valid(args.file)
    vertices = [args.k] if args.k is not None else list(qp.quiver.vertices)
    reports, lines = [], []
    disagree = False
    for k in sorted(vertices):
        try:
            r = verify_duality(qp, k, args.fuel, cyclic=not args.linear)
        except PreconditionError as exc:
            if args.k is not None:
                raise
            reports.append({"vertex": k, "error": {"type": type(exc).__name__, "message": str(exc)}})
            lines.append(f"vertex {k}: skipped ({type(exc).__name__}: {exc})")
            continue
        disagree |= not r.agree
        reports.append(report_json(r))
        lines += report_text(r)
    emit(args, {"command": "verify", "name": qp.name, "reports": reports}, "\n".join(lines))
    return 1 if disagree else 0


def status_json(v: int, s) -> dict:
    if isinstance(s, CertifiedDualizable):
        return {"vertex": v, "status": "certified", "reason": s.reason, "bound": s.bound}
    if isinstance(s, ObstructionFound):
        return {
            "vertex": v,
            "status": "obstruction",
            "bound": s.bound,
            "target": s.target,
            "witness": [{"coefficient": q(c), "arrows": list(p.word)} for p, c in s.witness.terms.items()],
            "reason": s.reason,
            "certificates": {
                a: [t.to_dict() for t in m.certificate] for a, m in s.memberships.items()
            },
        }
    return {"vertex": v, "status": "inconclusive", "bound": s.bound, "reason": s.note}


def cmd_delta(args) -> int:
    qp = load_valid(args.file)
    status = delta_status(qp, args.mode, args.max_len, cyclic=not args.linear)
    payload = {
        "command": "delta",
        "mode": args.mode,
        "bound": args.max_len,
        "delta": status.delta,
        "vertices": [status_json(v, s) for v, s in sorted(status.vertices.items())],
    }
    lines = []
    for v, s in sorted(status.vertices.items()):
        if isinstance(s, CertifiedDualizable):
            why = "syntactic" if s.reason == "syntactic" else f"bounded, no obstruction up to L={s.bound}"
            lines.append(f"vertex {v}: certified dualisable ({why})")
        elif isinstance(s, ObstructionFound):
            lines.append(
                f"vertex {v}: obstruction at L={s.bound}, target {s.target}, f = {s.witness.format(qp.quiver)}"
            )
        else:
            assert isinstance(s, Inconclusive)
            lines.append(f"vertex {v}: inconclusive ({s.note})")
    lines.append("delta = {" + ", ".join(map(str, status.delta)) + "}")
    emit(args, payload, "\n".join(lines))
    return 1 if any(isinstance(s, ObstructionFound) for s in status.vertices.values()) else 0


def cmd_member(args) -> int:
    qp = load_valid(args.file)
    try:
        x = PathElement.from_words(qp.quiver, parse_terms(args.elem))
    except KeyError as exc:
        raise ParseError(f"--elem: {exc.args[0]}") from None
    ideal = BoundedIdeal(qp, args.max_len)
    verdict = ideal.membership(x)
    payload = {"command": "member", "element": element_json(x, qp.quiver), "bound": args.max_len}
    if isinstance(verdict, InIdeal):
        assert verdict.replay(ideal.presentation) == x
        payload.update(verdict="in_ideal", certificate=[t.to_dict() for t in verdict.certificate])
        lines = [f"in ideal (L={args.max_len}); certificate:"]
        lines += [
            f"  {q(t.coefficient)} * ({t.left}) * d/d{t.relation} * ({t.right})" for t in verdict.certificate
        ]
    elif isinstance(verdict, NotInIdealCertified):
        payload.update(verdict="not_in_ideal", reason=verdict.reason)
        lines = [f"not in ideal: {verdict.reason}"]
    else:
        payload.update(verdict="unknown")
        lines = [f"unknown: not in the ideal span up to L={args.max_len}"]
    emit(args, payload, "\n".join(lines))
    return 0


def cmd_dot(args) -> int:
    qp = load_qp(args.file)
    dot = export_dot(qp.quiver)
    emit(args, {"command": "dot", "dot": dot}, dot)
    return 0


def cmd_fixture(args) -> int:
    text = fixtures.fixture_text(args.name)
    emit(args, {"command": "fixture", "name": args.name, "text": text}, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="qpseiberg",
        parents=[common],
        description="Mutation and Seiberg duality of quivers with potentials.",
        epilog="FILE may be '-' for stdin or 'fixture:NAME' for a built-in fixture.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, file=True, vertex=False, linear=False, fuel=False):
        p = sub.add_parser(name, parents=[common], help=help)
        if vertex == "optional":
            p.add_argument("-k", type=int, default=None, help="vertex (default: every vertex)")
        elif vertex:
            p.add_argument("-k", type=int, required=True, help="vertex")
        if fuel:
            p.add_argument("--fuel", type=int, default=100, help="reduction iteration bound")
        if linear:
            p.add_argument("--linear", action="store_true", help="read length-2 subpaths linearly, not cyclically")
        if file:
            p.add_argument("file", metavar="FILE")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "validate and test for a good potential", linear=True)
    p.add_argument("--no-cycle-cover", action="store_true", help="do not require every vertex on a cycle")
    add("relations", cmd_relations, "print the Jacobian relations")
    add("premutate", cmd_premutate, "print the premutated quiver with potential", vertex=True)
    add("mutate", cmd_mutate, "mutate at a vertex", vertex=True, fuel=True)
    add("dual", cmd_dual, "Seiberg dual at a vertex", vertex=True, fuel=True, linear=True)
    add("verify", cmd_verify, "compare mutation with Seiberg duality", vertex="optional", fuel=True, linear=True)
    p = add("delta", cmd_delta, "dualisable vertices", linear=True)
    p.add_argument("--mode", choices=("syntactic", "bounded", "layered"), default="layered")
    p.add_argument("--max-len", type=int, default=DEFAULT_BOUND, help="path length bound L")
    p = add("member", cmd_member, "bounded membership in the Jacobian ideal")
    p.add_argument("--elem", required=True, help="element as terms '<coef> <arrow>... ;'")
    p.add_argument("--max-len", type=int, default=DEFAULT_BOUND, help="path length bound L")
    add("dot", cmd_dot, "export the quiver as Graphviz DOT")
    p = add("fixture", cmd_fixture, "print a built-in fixture", file=False)
    p.add_argument("name", choices=fixtures.NAMES)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "text"
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (ParseError, InvalidQuiver, OSError, KeyError, ValueError, QPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
