"""Command-line interface.

Exit codes: 0 success / property holds, 1 property fails, 2 usage or parse
error, 3 a capacity guard refused the request.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import core
from .core import canonical_index, image, is_quasigroup
from .errors import AlgebraError, CapacityExceeded
from .fixtures import FIXTURE_NAMES, load_fixture
from .identities import identity_set, inverse_sets, has_unique_inverses
from .opfile import parse_operation_file, write_operation_file
from .orthogonality import (
    OperationSet,
    enumerate_ort,
    enumerate_quasigroups,
    is_orthogonal_set,
    transversal_family,
    verify_bijection,
)
from .perms import format_cycles, parse_permutation
from .superposition import (
    hadamard_product,
    iterate_hadamard_cycle,
    lift_operation,
    mult_set,
    self_superpose,
    superpose,
    tri_right,
    tri_symmetric,
)
from .terms import lifted_identity_check, parse_identity, satisfies_identity
from .transforms import ConjugationPerm, Isotopism, apply_isotopism, conjugate, find_isomorphism

OK, FALSE, USAGE, CAPACITY = 0, 1, 2, 3


class Outcome:
    """What a command hands back: human text, a JSON-able dict, an exit code."""

    def __init__(self, text: str, data: dict, code: int = OK):
        self.text = text
        self.data = data
        self.code = code


def load(spec: str):
    if spec in FIXTURE_NAMES:
        return load_fixture(spec)
    path = Path(spec)
    if not path.exists():
        raise AlgebraError(f"{spec!r} is neither a fixture name nor a readable file")
    return parse_operation_file(path.read_text())


def op_json(op):
    return {"arity": op.arity, "order": op.order, "entries": op.entries()}


def symbols(values):
    return sorted(v + 1 for v in values)


def render(op) -> str:
    return write_operation_file(op)


def _maybe_write(op, out):
    if out:
        Path(out).write_text(write_operation_file(op))


def _operation_outcome(op, out=None, extra=None):
    _maybe_write(op, out)
    data = {"operation": op_json(op)}
    text = render(op)
    if extra:
        data.update(extra)
        text += "".join(f"{k}: {v}\n" for k, v in extra.items())
    return Outcome(text, data)


def cmd_info(args):
    op = load(args.operation)
    report = identity_set(op)
    data = {
        "arity": op.arity,
        "order": op.order,
        "image": symbols(image(op)),
        "quasigroup": is_quasigroup(op),
        "identity_sets": [symbols(s) for s in report.per_position],
        "identity": symbols(report.intersection),
        "monoid": report.is_monoid,
        "unique_inverses": has_unique_inverses(op),
    }
    if report.is_monoid:
        data["inverses"] = {str(a + 1): symbols(v) for a, v in inverse_sets(op).items()}
    lines = [
        f"arity: {op.arity}",
        f"order: {op.order}",
        f"image: {data['image']}",
        f"quasigroup: {data['quasigroup']}",
    ]
    for i, s in enumerate(data["identity_sets"]):
        lines.append(f"I_{i}: {s}")
    lines.append(f"identity set: {data['identity']}")
    lines.append(f"unique inverses: {data['unique_inverses']}")
    for a, v in data.get("inverses", {}).items():
        lines.append(f"Inv({a}): {v}")
    return Outcome("\n".join(lines) + "\n", data)


def cmd_superpose(args):
    f = load(args.f)
    return _operation_outcome(superpose(f, [load(g) for g in args.gs]), args.output)


def cmd_hadamard(args):
    res = hadamard_product(load(args.star), load(args.a), load(args.b))
    return _operation_outcome(res.operation, args.output, {"hadamard_certified": res.certified})


def cmd_tri_right(args):
    return _operation_outcome(tri_right(load(args.a), load(args.star)))


def cmd_tri_sym(args):
    return _operation_outcome(tri_symmetric(load(args.a), load(args.star)))


def cmd_plus(args):
    return _operation_outcome(self_superpose(load(args.f), load(args.g)))


def cmd_lift(args):
    lifted = lift_operation(load(args.f), args.component_arity)
    t = lifted.table
    _maybe_write(t, args.output)
    label = lifted.label
    if t.arity == 2:
        width = len(label(t.order - 1))
        rows = [
            " ".join(label(v).rjust(width) for v in t.table[r * t.order:(r + 1) * t.order].tolist())
            for r in range(t.order)
        ]
        text = "\n".join(rows) + "\n"
    else:
        text = " ".join(label(v) for v in t.table.tolist()) + "\n"
    data = {
        "carrier_size": t.order,
        "component_arity": lifted.component_arity,
        "labels": [label(v) for v in t.table.tolist()],
        "operation": op_json(t),
    }
    return Outcome(text, data)


def cmd_conjugate(args):
    f = load(args.f)
    sigma = ConjugationPerm(parse_permutation(args.perm, f.arity + 1))
    return _operation_outcome(conjugate(f, sigma))


def cmd_isotope(args):
    f = load(args.f)
    parts = args.perms.split(",") if "(" not in args.perms else _split_cycles(args.perms)
    maps = tuple(parse_permutation(p, f.order) for p in parts)
    return _operation_outcome(apply_isotopism(f, Isotopism(maps)))


def _split_cycles(text):
    # "(1 2),(),(1 2)(3 4)" -> groups separated by top-level commas
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def cmd_isomorphic(args):
    perm = find_isomorphism(load(args.f), load(args.g))
    if perm is None:
        return Outcome("not isomorphic\n", {"isomorphic": False}, FALSE)
    images = [p + 1 for p in perm]
    return Outcome(
        f"isomorphic via {format_cycles(perm)} (images {' '.join(map(str, images))})\n",
        {"isomorphic": True, "permutation": images, "cycles": format_cycles(perm)},
    )


def _identity_outcome(res, render_value):
    data = {"holds": res.holds, "mode": res.mode, "checked": res.checked}
    if res.holds:
        return Outcome(f"holds ({res.mode}, {res.checked} assignments)\n", data)
    cex = {f"x{k}": render_value(v) for k, v in sorted(res.counterexample.items())}
    data["counterexample"] = cex
    shown = ", ".join(f"{k}={v}" for k, v in cex.items())
    return Outcome(f"fails ({res.mode}) at {shown}\n", data, FALSE)


def cmd_identity_check(args):
    op = load(args.f)
    lhs, rhs = parse_identity(args.identity, op.arity)
    return _identity_outcome(satisfies_identity(op, lhs, rhs, jobs=args.jobs), lambda v: v + 1)


def cmd_lifted_identity_check(args):
    f = load(args.f)
    lhs, rhs = parse_identity(args.identity, f.arity)
    res = lifted_identity_check(f, args.component_arity, lhs, rhs)
    return _identity_outcome(res, lambda v: f"g{v + 1}")


def _opset(names):
    return OperationSet(tuple(load(n) for n in names))


def cmd_orthogonal(args):
    ok = is_orthogonal_set(_opset(args.gs))
    return Outcome(("orthogonal" if ok else "not orthogonal") + "\n", {"orthogonal": ok}, OK if ok else FALSE)


def cmd_ort_count(args):
    s = _opset(args.gs)
    members = list(enumerate_ort(s, jobs=args.jobs, stream=args.stream))
    data = {"count": len(members)}
    text = f"|Ort(S)| = {len(members)}\n"
    if args.list:
        data["members"] = [op_json(g) for g in members]
        data["indices"] = [canonical_index(g) + 1 for g in members]
        text += "".join(f"# g{canonical_index(g) + 1}\n{render(g)}" for g in members)
    return Outcome(text, data)


def cmd_census(args):
    count = sum(1 for _ in enumerate_quasigroups(args.arity, args.order))
    return Outcome(
        f"{args.arity}-ary quasigroups of order {args.order}: {count}\n",
        {"arity": args.arity, "order": args.order, "count": count},
    )


def cmd_verify_theorem(args):
    rep = verify_bijection(_opset(args.gs), jobs=args.jobs)
    data = {
        "quasigroup_count": rep.quasigroup_count,
        "ort_count": rep.ort_count,
        "injective": rep.injective,
        "all_in_ort": rep.all_in_ort,
        "surjective": rep.surjective,
        "roundtrip_ok": rep.roundtrip_ok,
        "verified": rep.verified,
        "certificates": [list(c) for c in rep.certificates],
    }
    text = "".join(f"{k}: {v}\n" for k, v in data.items() if k != "certificates")
    for c in rep.certificates:
        text += f"certificate: {c}\n"
    return Outcome(text, data, OK if rep.verified else FALSE)


def cmd_transversals(args):
    verdict = transversal_family(load(args.f), [load(g) for g in args.gs])
    data = {"latin": verdict.latin, "lines_checked": verdict.lines_checked}
    text = f"every line is a Latin transversal: {verdict.latin} ({verdict.lines_checked} lines)\n"
    if verdict.failure:
        axis, cells, img = verdict.failure
        data["failure"] = {
            "axis": axis + 1,
            "line": [[x + 1 for x in c] for c in cells],
            "cells": [[x + 1 for x in c] for c in img],
        }
        text += f"first failing line (axis {axis + 1}): {data['failure']['line']} -> cells {data['failure']['cells']}\n"
    return Outcome(text, data, OK if verdict.latin else FALSE)


def cmd_mult_set(args):
    ops = mult_set(load(args.star), side="left" if args.left else "both", jobs=args.jobs)
    data = {"count": len(ops), "members": [op_json(g) for g in ops]}
    text = f"count: {len(ops)}\n" + "".join(f"# g{canonical_index(g) + 1}\n{render(g)}" for g in ops)
    return Outcome(text, data)


def cmd_iterate_hadamard(args):
    cyc = iterate_hadamard_cycle(load(args.star))
    labels = [f"g{canonical_index(h) + 1}" for h in cyc.trajectory]
    data = {"preperiod": cyc.preperiod, "period": cyc.period, "trajectory": labels}
    text = f"preperiod: {cyc.preperiod}\nperiod: {cyc.period}\ntrajectory: {' '.join(labels)}\n"
    return Outcome(text, data)


def cmd_fixture(args):
    if args.name is None:
        return Outcome("\n".join(FIXTURE_NAMES) + "\n", {"fixtures": list(FIXTURE_NAMES)})
    return _operation_outcome(load_fixture(args.name), args.output)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report instead of text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    common.add_argument("--guard", type=int, default=None, metavar="BYTES", help="memory guard for a single table")

    parser = argparse.ArgumentParser(prog="mquasi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    p = add("info", cmd_info, "structural summary of an operation")
    p.add_argument("operation")

    p = add("superpose", cmd_superpose, "superpose F on components G1..Gm")
    p.add_argument("f")
    p.add_argument("gs", nargs="+")
    p.add_argument("-o", "--output")

    p = add("hadamard", cmd_hadamard, "Hadamard quasigroup product of A and B under STAR")
    p.add_argument("star")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output")

    p = add("tri-right", cmd_tri_right, "(a*b) star b")
    p.add_argument("a")
    p.add_argument("star")

    p = add("tri-sym", cmd_tri_sym, "(a*b) star (b*a)")
    p.add_argument("a")
    p.add_argument("star")

    p = add("plus", cmd_plus, "F superposed on copies of G")
    p.add_argument("f")
    p.add_argument("g")

    p = add("lift", cmd_lift, "Cayley table of the lifted groupoid")
    p.add_argument("f")
    p.add_argument("--component-arity", type=int, required=True)
    p.add_argument("-o", "--output")

    p = add("conjugate", cmd_conjugate, "conjugate by a permutation of the m+1 positions")
    p.add_argument("f")
    p.add_argument("--perm", required=True)

    p = add("isotope", cmd_isotope, "apply an isotopism")
    p.add_argument("f")
    p.add_argument("--perms", required=True, help="P1,...,Pm+1")

    p = add("isomorphic", cmd_isomorphic, "search for an isomorphism F -> G")
    p.add_argument("f")
    p.add_argument("g")

    p = add("identity-check", cmd_identity_check, "check an identity 'LHS = RHS' in F")
    p.add_argument("f")
    p.add_argument("identity")

    p = add("lifted-identity-check", cmd_lifted_identity_check, "check an identity in the lifted groupoid")
    p.add_argument("f")
    p.add_argument("--component-arity", type=int, required=True)
    p.add_argument("identity")

    p = add("orthogonal", cmd_orthogonal, "is G1..Gm an orthogonal set?")
    p.add_argument("gs", nargs="+")

    p = add("ort-count", cmd_ort_count, "size (and members) of Ort(S)")
    p.add_argument("gs", nargs="+")
    p.add_argument("--list", action="store_true")
    p.add_argument("--stream", action="store_true", help="allow scans beyond the candidate guard")

    p = add("census", cmd_census, "count m-ary quasigroups of a given order")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--order", type=int, required=True)

    p = add("verify-theorem", cmd_verify_theorem, "check quasigroups <-> Ort(S) bijection")
    p.add_argument("gs", nargs="+")

    p = add("transversals", cmd_transversals, "line-by-line transversal test of a superposition")
    p.add_argument("f")
    p.add_argument("gs", nargs="+")

    p = add("mult-set", cmd_mult_set, "operations distributive over STAR")
    p.add_argument("star")
    p.add_argument("--left", action="store_true", help="left distributivity only")

    p = add("iterate-hadamard", cmd_iterate_hadamard, "iterate the Hadamard square until it cycles")
    p.add_argument("star")

    p = add("fixture", cmd_fixture, "export a built-in table (no NAME lists them)")
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = core.MAX_TABLE_ENTRIES
    if args.guard is not None:
        core.MAX_TABLE_ENTRIES = max(1, args.guard // 8)
    try:
        outcome = args.func(args)
    except CapacityExceeded as exc:
        print(f"mquasi: {exc}", file=sys.stderr)
        return CAPACITY
    except (AlgebraError, OSError) as exc:
        print(f"mquasi: {exc}", file=sys.stderr)
        return USAGE
    finally:
        core.MAX_TABLE_ENTRIES = saved
    if args.json:
        print(json.dumps({"command": args.command, "exit_code": outcome.code, **outcome.data}, indent=2))
    else:
        sys.stdout.write(outcome.text)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
