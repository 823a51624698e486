"""Command-line surface: generate, inspect, export, and verify from the shell.

Subcommands: gen, head, tensor, psi, weyl, verify (iso | head-location |
decomposition | perfectness | psi-bijection), convert.  Graphs are written as
JSON or DOT; verification reports as JSON or text.  Exit code 0 iff all
requested checks pass; usage and validation problems exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .crystal_core import TensorElem, canonical_key
from .errors import CrystalError
from .graph_ops import (
    DEFAULT_BUDGET,
    CrystalGraph,
    from_json,
    graph_from_elements,
    head,
    head_crystal,
    pretty_key,
    to_dot,
    to_json_obj,
    weyl_word,
)
from .path_model import generate_bl_lambda_crystal, ground_state, path_from_json_obj
from .perfect_families import PerfectCoordA, bl_elements, psi_map
from .root_data import AffineType, build_root_data, parse_weight
from .theorem_lab import (
    verify_decomposition,
    verify_head_location,
    verify_iso_theorem,
    verify_perfectness,
    verify_psi_bijection,
)

BUDGET_ENV = "CRYSTAL_BUDGET"


def _budget(args) -> int:
    if getattr(args, "budget", None):
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise CrystalError(f"bad {BUDGET_ENV} value {env!r}")
    return DEFAULT_BUDGET

def _family(args) -> AffineType:
    if not getattr(args, "family", None):
        raise CrystalError("--family is required (label like A1:2)")
    return AffineType.parse(args.family)


def _weight(t, text):
    return parse_weight(build_root_data(t), text)


def _coords(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise CrystalError(f"bad coordinate list {text!r}")


def _write_out(text: str, out: str | None):
    """Write to a file atomically, or to stdout."""
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".crystalkit-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _graph_json(g, canonical=False) -> str:
    obj = to_json_obj(g)
    if canonical:
        return json.dumps(obj, separators=(",", ":"), sort_keys=True)
    return json.dumps(obj, indent=1, sort_keys=True)


def _render_graph(g, fmt, canonical=False) -> str:
    if fmt == "dot":
        return to_dot(g)
    if fmt == "json":
        return _graph_json(g, canonical)
    lines = [
        f"nodes: {g.node_count()}",
        f"edges: {g.edge_count()}",
        f"frontier: {len(g.frontier)}",
        f"colors: {list(g.colors)}",
    ]
    return "\n".join(lines) + "\n"


def _bl_graph(t, l, budget) -> CrystalGraph:
    return graph_from_elements(
        (PerfectCoordA(t, c) for c in bl_elements(t, l)), budget=budget
    )


def _parse_tensor_spec(text):
    parts = [p.strip() for p in text.split("x")]
    if len(parts) != 2:
        raise CrystalError(f"tensor spec must be 'SPEC x SPEC', got {text!r}")
    return parts


def _factor_elements(t, spec, depth, N, budget):
    kind, _, arg = spec.partition(":")
    if kind == "bl":
        if not arg.isdigit():
            raise CrystalError(f"bad level in factor spec {spec!r}")
        return [PerfectCoordA(t, c) for c in bl_elements(t, int(arg))]
    if kind == "hw":
        if depth is None:
            raise CrystalError("tensor with a hw: factor needs --depth")
        ball = generate_bl_lambda_crystal(
            t, _weight(t, arg), depth, N=N, budget=budget
        )
        return [rec.elem for rec in ball.nodes.values()]
    raise CrystalError(f"factor spec must be 'hw:WEIGHT' or 'bl:LEVEL', got {spec!r}")


def _build_graph(args) -> CrystalGraph:
    """Build a graph from gen-style flags (--bl | --hw | --tensor), or load
    --input."""
    if getattr(args, "input", None):
        with open(args.input) as fh:
            return from_json(fh.read())
    t = _family(args)
    budget = _budget(args)
    chosen = [
        name
        for name in ("bl", "hw", "tensor")
        if getattr(args, name, None) is not None
    ]
    if len(chosen) != 1:
        raise CrystalError("specify exactly one of --bl, --hw, --tensor (or --input)")
    if args.bl is not None:
        return _bl_graph(t, args.bl, budget)
    if args.hw is not None:
        if args.depth is None:
            raise CrystalError("--hw needs --depth")
        return generate_bl_lambda_crystal(
            t, _weight(t, args.hw), args.depth, N=args.truncation, budget=budget
        )
    left_spec, right_spec = _parse_tensor_spec(args.tensor)
    left = _factor_elements(t, left_spec, args.depth, args.truncation, budget)
    right = _factor_elements(t, right_spec, args.depth, args.truncation, budget)
    return graph_from_elements(
        (TensorElem(a, b) for a in left for b in right), budget=budget
    )


def _add_gen_flags(p, with_input=True):
    p.add_argument("--family", help="affine type label, e.g. A1:2")
    p.add_argument("--bl", type=int, help="perfect crystal level")
    p.add_argument("--hw", help="highest weight crystal, weight token like L0+2L1")
    p.add_argument("--tensor", help="product spec, e.g. 'hw:L0 x bl:2'")
    p.add_argument("--depth", type=int, help="truncation depth")
    p.add_argument("--truncation", type=int, help="path model slot count N")
    p.add_argument("--budget", type=int, help=f"node budget (env {BUDGET_ENV})")
    if with_input:
        p.add_argument("--input", help="read a graph JSON file instead of generating")


def _add_output_flags(p, formats=("json", "dot", "text")):
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--out", help="output path (atomic write); stdout by default")
    p.add_argument(
        "--canonical", action="store_true", help="byte-stable compact JSON output"
    )


def _cmd_gen(args) -> int:
    g = _build_graph(args)
    _write_out(_render_graph(g, args.format, args.canonical), args.out)
    return 0


def _cmd_head(args) -> int:
    g = _build_graph(args)
    H = head(g)
    hc = head_crystal(g, H)
    if args.format == "json":
        obj = {"head": sorted(H), "head_crystal": to_json_obj(hc)}
        text = (
            json.dumps(obj, separators=(",", ":"), sort_keys=True)
            if args.canonical
            else json.dumps(obj, indent=1, sort_keys=True)
        )
    elif args.format == "dot":
        text = to_dot(hc)
    else:
        lines = [f"head: {len(H)} nodes"]
        lines += [f"  {pretty_key(k)}" for k in sorted(H)]
        text = "\n".join(lines) + "\n"
    _write_out(text, args.out)
    return 0


def _cmd_tensor(args) -> int:
    args.bl = None
    args.hw = None
    args.tensor = f"{args.left} x {args.right}"
    args.input = None
    return _cmd_gen(args)


def _cmd_psi(args) -> int:
    t = _family(args)
    lam = _weight(t, args.lam)
    image = psi_map(t, args.l, lam, _coords(args.coords))
    _write_out(",".join(str(x) for x in image), args.out)
    return 0


def _cmd_weyl(args) -> int:
    g = _build_graph(args)
    node = args.node
    if node not in g.nodes:
        # accept bare coordinates for perfect crystal graphs
        key = canonical_key(PerfectCoordA(_family(args), _coords(node)))
        if key not in g.nodes:
            raise CrystalError(f"node {node!r} not found in the graph")
        node = key
    word = [int(x) for x in args.word.split(",") if x != ""]
    result = weyl_word(g, node, word)
    _write_out(pretty_key(result) if args.format == "text" else result, args.out)
    return 0


def _report_out(report, args) -> int:
    if args.format == "json":
        text = json.dumps(report.to_json_obj(), indent=1, sort_keys=True)
    else:
        text = report.to_text()
    _write_out(text, args.out)
    return 0 if report.passed else 1


def _require(args, *names):
    for name in names:
        if getattr(args, "lam" if name == "lambda" else name, None) is None:
            raise CrystalError(f"verify {args.check} needs --{name}")


def _cmd_verify(args) -> int:
    t = _family(args)
    budget = _budget(args)
    stage_seconds = args.stage_seconds
    if args.check == "iso":
        _require(args, "k", "l", "lambda", "depth")
        lam = _weight(t, args.lam)
        report = verify_iso_theorem(
            t, args.k, args.l, lam, args.depth, N=args.truncation,
            budget=budget, stage_seconds=stage_seconds,
        )
    elif args.check == "head-location":
        _require(args, "l", "lambda", "depth")
        lam = _weight(t, args.lam)
        report = verify_head_location(
            t, args.l, lam, args.depth, N=args.truncation,
            budget=budget, stage_seconds=stage_seconds,
        )
    elif args.check == "decomposition":
        _require(args, "depth")
        g = _build_graph(args)
        report = verify_decomposition(
            t, g, args.depth, N=args.truncation,
            budget=budget, stage_seconds=stage_seconds,
        )
    elif args.check == "perfectness":
        _require(args, "l")
        report = verify_perfectness(t, args.l, stage_seconds=stage_seconds)
    else:  # psi-bijection
        _require(args, "k", "l", "lambda")
        lam = _weight(t, args.lam)
        report = verify_psi_bijection(
            t, args.k, args.l, lam, stage_seconds=stage_seconds
        )
    return _report_out(report, args)


def _cmd_path(args) -> int:
    """Ground-state paths and single operator steps, one per invocation."""
    t = _family(args)
    if (args.ground is None) == (args.step is None):
        raise CrystalError("specify exactly one of --ground or --step")
    if args.ground is not None:
        if args.truncation is None:
            raise CrystalError("--ground needs --truncation")
        p = ground_state(t, _weight(t, args.ground), args.truncation)
    else:
        if args.input is None:
            raise CrystalError("--step needs --input PATH (a path JSON file)")
        with open(args.input) as fh:
            p = path_from_json_obj(t, json.load(fh))
        op = args.step.strip()
        if len(op) < 2 or op[0] not in "ef" or not op[1:].isdigit():
            raise CrystalError(f"step must look like f0 or e2, got {op!r}")
        i = int(op[1:])
        if i >= t.num_nodes:
            raise CrystalError(f"color {i} not in the index set of {t.label()}")
        p = p.f(i) if op[0] == "f" else p.e(i)
    text = "null" if p is None else json.dumps(p.serialize(), sort_keys=True)
    _write_out(text, args.out)
    return 0


def _cmd_convert(args) -> int:
    with open(args.input) as fh:
        g = from_json(fh.read())
    fmt = args.to
    if fmt == "dot":
        text = to_dot(g)
    else:
        text = _graph_json(g, args.canonical)
    _write_out(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="crystalkit",
        description="Affine crystal graphs: generation, heads, and theorem checks.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a crystal graph")
    _add_gen_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("head", help="head node list and head crystal")
    _add_gen_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_head)

    p = sub.add_parser("tensor", help="tensor product of two crystals")
    p.add_argument("--family", required=True)
    p.add_argument("--left", required=True, help="factor spec, e.g. hw:L0 or bl:2")
    p.add_argument("--right", required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--truncation", type=int)
    p.add_argument("--budget", type=int)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_tensor)

    p = sub.add_parser("psi", help="apply the head-set coordinate bijection")
    p.add_argument("--family", required=True)
    p.add_argument("--l", type=int, required=True, help="level of B_l")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--coords", required=True, help="comma-separated coordinates")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_psi)

    p = sub.add_parser("weyl", help="apply a Weyl group word to a node")
    _add_gen_flags(p)
    p.add_argument("--node", required=True, help="node key or bare coordinates")
    p.add_argument("--word", required=True, help="comma-separated colors, rightmost acts first")
    _add_output_flags(p, formats=("json", "text"))
    p.set_defaults(fn=_cmd_weyl)

    p = sub.add_parser("verify", help="run a theorem verification")
    p.add_argument(
        "check",
        choices=["iso", "head-location", "decomposition", "perfectness", "psi-bijection"],
    )
    _add_gen_flags(p)
    p.add_argument("--k", type=int, help="level of lambda")
    p.add_argument("--l", type=int, help="level of B_l")
    p.add_argument("--lambda", dest="lam", help="weight token, e.g. L0+2L1")
    p.add_argument(
        "--stage-seconds", type=float, default=10.0,
        help="wall clock budget per verification stage (default 10)",
    )
    _add_output_flags(p, formats=("json", "text"))
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("path", help="ground-state paths and single operator steps")
    p.add_argument("--family", required=True)
    p.add_argument("--ground", help="weight token: print the ground-state path")
    p.add_argument("--truncation", type=int, help="slot count N for --ground")
    p.add_argument("--step", help="operator like f0 or e2, applied to --input")
    p.add_argument("--input", help="path JSON file for --step")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_path)

    p = sub.add_parser("convert", help="convert between graph JSON and DOT")
    p.add_argument("--input", required=True)
    p.add_argument("--to", choices=["json", "dot"], required=True)
    p.add_argument("--out")
    p.add_argument("--canonical", action="store_true")
    p.set_defaults(fn=_cmd_convert)
    return ap


def main(argv=None) -> int:
    from .errors import TruncationFault

    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except TruncationFault as exc:
        print(
            f"error: {exc} (suggested N increase: {exc.suggested_increase})",
            file=sys.stderr,
        )
        return 2
    except CrystalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
