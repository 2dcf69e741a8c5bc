"""Command-line front end.

Exit codes: 0 success or pass, 3 witness found (``tc2``), 2 usage or cap
error, 1 a ``verify`` run with a violated check.  Errors are printed as one
line starting with ``error:``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import harness
from .builders import SpecError, named_group
from .closure import (
    BRUTE_FORCE_MAX_DEGREE,
    DegreeTooLarge,
    closure2,
    orbitals,
)
from .embedding import EmbeddingError, embed_into_wreath, make_context, restrict_to_N, universal_action
from .perm import CapExceeded, DegreeMismatch, PermGroup, format_cycles, load_group, parse_cycles
from .structure import (
    all_subgroups,
    center,
    fitting,
    is_nilpotent,
    normal_abelian_subgroups,
    normal_subgroups,
    subgroup_from_elements,
)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_ERROR = 2
EXIT_WITNESS = 3


def _load(spec: str) -> PermGroup:
    if os.path.isfile(spec):
        return load_group(spec)
    return named_group(spec)


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2, sort_keys=True) + "\n" if args.json else text.rstrip("\n") + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_make(args) -> int:
    group = _load(args.spec)
    payload = group.to_json()
    out = json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    G = _load(args.spec)
    subs = all_subgroups(G)
    normals = normal_subgroups(G)
    nab = normal_abelian_subgroups(G)
    payload = {
        "name": G.name,
        "degree": G.degree,
        "order": G.order,
        "abelian": G.is_abelian,
        "nilpotent": is_nilpotent(G),
        "center_order": center(G).order,
        "fitting_order": fitting(G).order,
        "subgroups": len(subs),
        "normal_subgroups": len(normals),
        "normal_abelian": [{"order": s.order, "cyclic": s.is_cyclic} for s in nab],
    }
    lines = [f"{k}: {v}" for k, v in payload.items() if k != "normal_abelian"]
    lines.append("normal abelian subgroups (order, cyclic):")
    lines += [f"  {s['order']:>4}  {'yes' if s['cyclic'] else 'no'}" for s in payload["normal_abelian"]]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_orbitals(args) -> int:
    G = _load(args.spec)
    col = orbitals(G)
    payload = col.to_json()
    width = len(str(col.count - 1))
    rows = [" ".join(str(c).rjust(width) for c in row) for row in col.colors]
    _emit(args, payload, f"{col.count} orbitals on {col.degree} points\n" + "\n".join(rows))
    return EXIT_OK


def cmd_closure(args) -> int:
    G = _load(args.spec)
    closure = closure2(G, method=args.method, brute_max_degree=args.max_degree)
    witnesses = [g for g in closure.generators if g not in G]
    payload = {
        "degree": G.degree,
        "group_order": G.order,
        "closure_order": closure.order,
        "closed": closure.order == G.order,
        "generators": [format_cycles(g) for g in closure.generators],
        "witnesses": [format_cycles(g) for g in witnesses],
    }
    text = (
        f"|G| = {G.order}, |G^(2)| = {closure.order} "
        f"({'2-closed' if payload['closed'] else 'not 2-closed'})\n"
        f"closure generators: {' '.join(payload['generators'])}\n"
        f"outside G: {' '.join(payload['witnesses']) or '-'}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_tc2(args) -> int:
    G = _load(args.spec)
    method = "backtrack" if args.method == "auto" else args.method
    v = harness.check_tc2_bounded(G, args.max_degree, method=method, name=args.spec)
    if v.status == harness.WITNESS:
        w = v.witness
        text = (
            f"witness-found at degree {w['degree']}: closure order {v.details['closure_order']} > {G.order}\n"
            f"action generators: {' '.join(w['generators'])}\n"
            f"extra permutation: {w['permutation']}"
        )
    else:
        text = f"pass (bounded): {v.details['actions_checked']} faithful actions of degree <= {args.max_degree} are 2-closed"
    _emit(args, v.to_json(), text)
    return EXIT_WITNESS if v.status == harness.WITNESS else EXIT_OK


def cmd_embed(args) -> int:
    G = _load(args.group)
    gens = [parse_cycles(s, G.degree) for s in args.normal.split(";") if s.strip()]
    for g in gens:
        if g not in G:
            raise SpecError(f"{format_cycles(g)} is not an element of the group")
    N = subgroup_from_elements(G, gens)
    delta = _load(args.delta)
    ctx = make_context(G, N, delta)
    omega = universal_action(ctx)
    wreath = embed_into_wreath(ctx)
    _, blocks = restrict_to_N(ctx)
    payload = {
        "omega": omega.to_json(),
        "report": {
            **wreath.to_json(),
            "index": ctx.k_order,
            "blocks": len(blocks.blocks),
            "blocks_invariant": blocks.invariant,
            "blocks_match_twisted_delta": blocks.matches_twisted_delta,
        },
    }
    text = (
        f"Omega degree {omega.degree} = {delta.degree} x {ctx.k_order}\n"
        f"generators: {' '.join(format_cycles(g) for g in omega.generators)}\n"
        f"homomorphism: {wreath.homomorphism}, injective: {wreath.injective}, base in N: {wreath.base_in_n}\n"
        f"blocks: {len(blocks.blocks)}, invariant: {blocks.invariant}, twisted copies of Delta: {blocks.matches_twisted_delta}"
    )
    _emit(args, payload, text)
    return EXIT_OK if wreath.ok and blocks.ok else EXIT_VIOLATED


def cmd_verify(args) -> int:
    verdicts = harness.run_suite(args.suite)
    payload = [v.to_json(timing=args.timing) for v in verdicts]
    lines = [f"{v.status:>14}  {v.name}" + (f"  ({v.seconds:.2f}s)" if args.timing else "") for v in verdicts]
    out = json.dumps(payload, indent=2, sort_keys=True) + "\n" if args.json else "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_VIOLATED if any(v.status == harness.VIOLATED for v in verdicts) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twoclosure", description="2-closures of finite permutation groups")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("spec", help="group spec, e.g. lemma24:2,2 or file:g.json")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("-o", "--output", help="write output to PATH")

    p = sub.add_parser("make", help="build a group and print its JSON")
    p.add_argument("spec")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("analyze", help="order, nilpotency, center, Fitting subgroup, subgroup counts")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("orbitals", help="orbital coloring of Omega x Omega")
    common(p)
    p.set_defaults(func=cmd_orbitals)

    p = sub.add_parser("closure", help="2-closure of a permutation group")
    common(p)
    p.add_argument("--method", choices=["auto", "brute", "backtrack"], default="auto")
    p.add_argument("--max-degree", type=int, default=BRUTE_FORCE_MAX_DEGREE, help="brute-force degree limit")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("tc2", help="bounded search for a non-2-closed faithful action")
    common(p)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--method", choices=["auto", "brute", "backtrack"], default="auto")
    p.set_defaults(func=cmd_tc2)

    p = sub.add_parser("embed", help="universal embedding Omega = Delta x G/N")
    common(p, spec=False)
    p.add_argument("--group", required=True)
    p.add_argument("--normal", required=True, help='generators of N in cycle notation, ";"-separated')
    p.add_argument("--delta", required=True, help="faithful N-set as FILE or SPEC")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="run a named harness suite")
    p.add_argument("--suite", required=True, choices=sorted(harness.SUITES) + ["all"])
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds (not reproducible)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, CapExceeded, DegreeTooLarge, DegreeMismatch, EmbeddingError, ValueError, OSError) as exc:
        msg = str(exc).replace("\n", " ")
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
