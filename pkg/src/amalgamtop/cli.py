"""Command-line front end.

Subcommands:

* ``build SPEC``: parse a JSON space document, build the amalgam, print
  a summary (carrier size, open count, components, ind when small
  enough); ``--out DIR`` also writes summary.json, hasse.png, and a DOT
  file.
* ``verify ID``: run one verification suite (or ``all``), print one
  summary line per suite plus any failures; ``--out DIR`` also writes
  report.csv, failures.csv, and report.png.
* ``demo NAME``: run a worked construction (circle, cone, connectify)
  and narrate its verified facts.
* ``export-dot SPEC OUT``: write the built amalgam's specialization
  Hasse diagram as a DOT file.

Exit codes: 0 all checks passed, 1 a verified property failed, 2 bad
input, 3 a size budget was exceeded.  Randomized commands default to
seed 0 so repeated runs agree.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from typing import Sequence

from .amalgam import (
    DEFAULT_CARRIER_BUDGET,
    AmalgamSpace,
    base_projection,
    build_amalgam,
)
from .constructions import (
    connectedness_chain,
    connectify_demo,
    discrete,
    pseudo_cone,
    semicircle_amalgam,
)
from .errors import BoundExceeded, ValidationError, VerificationError
from .harness import SUITES, GenConfig, run_all, run_suite
from .maps import is_homeomorphism
from .render import (
    hasse_figure,
    suite_figure,
    write_dot,
    write_failures_csv,
    write_reports_csv,
)
from .spaces import DEFAULT_IND_BOUND, components, ind, is_connected
from .specdoc import build_instance, parse

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _load_amalgam(spec_path: str, budget: int) -> AmalgamSpace:
    with open(spec_path, "r", encoding="utf-8") as handle:
        doc = parse(handle.read())
    inst = build_instance(doc)
    return build_amalgam(inst.sel, inst.factors, max_points=budget)


def _build_summary(a: AmalgamSpace) -> dict:
    n = a.space.n
    summary: dict[str, object] = {"points": n}
    try:
        summary["opens"] = a.space.count_opens()
    except BoundExceeded:
        summary["opens"] = None
    summary["connected"] = is_connected(a.space)
    summary["components"] = len(components(a.space))
    summary["ind"] = ind(a.space) if n <= DEFAULT_IND_BOUND else None
    if all(z.n == 1 for z in a.factors):
        summary["homeomorphic_to_base"] = is_homeomorphism(base_projection(a))
    return summary


def cmd_build(args: argparse.Namespace) -> int:
    budget = args.budget if args.budget is not None else DEFAULT_CARRIER_BUDGET
    a = _load_amalgam(args.spec, budget)
    summary = _build_summary(a)
    print(f"points: {summary['points']}")
    opens = summary["opens"]
    print(f"opens: {opens if opens is not None else 'not counted (budget)'}")
    print(f"connected: {_bool(summary['connected'])}")
    print(f"components: {summary['components']}")
    if summary["ind"] is not None:
        print(f"ind: {summary['ind']}")
    else:
        print(f"ind: not computed (more than {DEFAULT_IND_BOUND} points)")
    if "homeomorphic_to_base" in summary:
        print(f"homeomorphic to base: {_bool(summary['homeomorphic_to_base'])}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "summary.json"), "w") as handle:
            json.dump(summary, handle, indent=2)
            handle.write("\n")
        hasse_figure(a.space, os.path.join(args.out, "hasse.png"))
        with open(os.path.join(args.out, "amalgam.dot"), "w") as handle:
            write_dot(a.space, handle, "amalgam")
        print(f"wrote summary.json, hasse.png, amalgam.dot to {args.out}")
    return EXIT_OK


def _config_from(args: argparse.Namespace) -> GenConfig:
    cfg = GenConfig(seed=args.seed)
    if args.trials is not None:
        cfg = replace(cfg, trials=args.trials)
    if args.max_points is not None:
        cfg = replace(cfg, max_base_points=args.max_points)
    if args.budget is not None:
        cfg = replace(cfg, size_budget=args.budget)
    return cfg


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    if args.suite == "all":
        reports = run_all(cfg)
    else:
        reports = [run_suite(args.suite, cfg)]
    for report in reports:
        print(report.summary_line())
        for note in report.notes:
            print(f"  note: {note}")
        for failure in report.failures:
            print(f"  trial {failure.trial} violated: {failure.invariant}")
            if failure.instance:
                print(f"    instance: {failure.instance}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        write_reports_csv(reports, os.path.join(args.out, "report.csv"))
        write_failures_csv(reports, os.path.join(args.out, "failures.csv"))
        suite_figure(reports, os.path.join(args.out, "report.png"))
        print(f"wrote report.csv, failures.csv, report.png to {args.out}")
    return EXIT_OK if all(r.ok() for r in reports) else EXIT_VERIFICATION


def _demo_circle() -> None:
    a, antipodes = semicircle_amalgam()
    print("amalgam over the four-point circle, semicircle selection,")
    print("every factor the two-point discrete space")
    print(f"points: {a.space.n}")
    print(f"connected: {_bool(is_connected(a.space))}")
    pair = a.base.describe(antipodes)
    contained = any((s & antipodes) == antipodes for s in a.sel.sets)
    print(f"some member contains both antipodes {pair}: {_bool(contained)}")
    print(f"ind base: {ind(a.base)}")
    print(f"ind amalgam: {ind(a.space, max_points=24)}")
    y0 = 0
    y1 = a.space.n - 1
    witness = connectedness_chain(a, antipodes, y0, y1)
    frm, to = a.space.label(y0), a.space.label(y1)
    print(f"witness chain from {frm} to {to}, anchors "
          + ", ".join(a.base.label(p) for p in witness.anchors))
    for i, z in enumerate(witness.chain):
        print(f"  z{i} = {a.space.label(a.point_index(z))}")


def _demo_cone() -> None:
    cone = pseudo_cone(discrete(2))
    print("amalgam over the Sierpinski base gluing two isolated points")
    print("onto one apex whose only neighborhood is everything")
    print(f"points: {cone.space.n}")
    print(f"connected: {_bool(is_connected(cone.space))}")
    print(f"ind: {ind(cone.space)}")
    for x in range(cone.space.n):
        nbr = cone.space.describe(cone.space.min_nbrs[x])
        print(f"  minimal neighborhood of {cone.space.label(x)}: {nbr}")


def _demo_connectify() -> None:
    a, conn = connectify_demo()
    print("two isolated base points inside a three-point cone ambient")
    print(f"amalgam points: {a.space.n}, connected: {_bool(is_connected(a.space))}")
    repl = ", ".join(
        f"{a.base.describe(s)} -> {conn.ambient.describe(o)}"
        for s, o in zip(a.sel.sets, conn.phi)
    )
    print(f"members replaced by ambient opens: {repl}")
    extra = len(conn.extended_sel.sets) - len(a.sel.sets)
    print(f"extension members added: {extra}")
    res = conn.result.space
    print(f"extension points: {res.n}, connected: {_bool(is_connected(res))}")
    image = conn.embedding.image_mask()
    print(f"embedded copy: {res.describe(image)}")
    print(f"proper: {_bool(image != res.full_mask)}")
    print("dense: true")


def cmd_demo(args: argparse.Namespace) -> int:
    {"circle": _demo_circle, "cone": _demo_cone, "connectify": _demo_connectify}[
        args.name
    ]()
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    a = _load_amalgam(args.spec, DEFAULT_CARRIER_BUDGET)
    with open(args.out, "w", encoding="utf-8") as handle:
        write_dot(a.space, handle, "amalgam")
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amalgamtop",
        description="build amalgams of finite spaces and verify their theory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build an amalgam from a JSON document")
    p_build.add_argument("spec", help="path to the JSON space document")
    p_build.add_argument("--budget", type=int, default=None,
                         help="carrier size budget (default 2000)")
    p_build.add_argument("--out", default=None,
                         help="directory for summary.json, hasse.png, amalgam.dot")
    p_build.set_defaults(func=cmd_build)

    suite_ids = list(SUITES) + ["all"]
    p_verify = sub.add_parser("verify", help="run a randomized verification suite")
    p_verify.add_argument("suite", choices=suite_ids, metavar="suite",
                          help="one of: " + ", ".join(suite_ids))
    p_verify.add_argument("--seed", type=int, default=0,
                          help="stream seed (default 0)")
    p_verify.add_argument("--trials", type=int, default=None,
                          help="trials per suite (default 200)")
    p_verify.add_argument("--max-points", type=int, default=None,
                          help="largest base space drawn (default 5)")
    p_verify.add_argument("--budget", type=int, default=None,
                          help="carrier size budget per instance (default 2000)")
    p_verify.add_argument("--out", default=None,
                          help="directory for report.csv, failures.csv, report.png")
    p_verify.set_defaults(func=cmd_verify)

    p_demo = sub.add_parser("demo", help="run a worked construction")
    p_demo.add_argument("name", choices=["circle", "cone", "connectify"])
    p_demo.set_defaults(func=cmd_demo)

    p_dot = sub.add_parser("export-dot",
                           help="write the amalgam's Hasse diagram as DOT")
    p_dot.add_argument("spec", help="path to the JSON space document")
    p_dot.add_argument("out", help="output DOT file")
    p_dot.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BoundExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
