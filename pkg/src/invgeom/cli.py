"""Command-line front end.

Subcommands: gen, analyze, graph, metric, verify, qi, examples.  Exit
codes: 0 success, 1 verification failure, 2 usage or parse error.
Reports are deterministic for a fixed seed and cap.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import families, fileio
from .action import cayley_self_action
from .cayley import cayley_graph, cayley_metric
from .config import SweepConfig, default_config
from .errors import InvgeomError, ParseError
from .geometry import orbit_map_qi, qi_constants, rips_graph
from .monoid import natural_leq_matrix
from .presheaf import cayley_presheaf
from .report import checks_to_json, checks_to_text, jsonable
from .verify import run_verification


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=None, help="sampling seed")
    parser.add_argument(
        "--cap-exhaustive",
        type=int,
        default=None,
        help="override the exhaustive-sweep caps",
    )


def _config(args):
    cfg = default_config().with_cap(args.cap_exhaustive)
    if args.seed is not None:
        cfg = SweepConfig(
            assoc_exhaustive_cap=cfg.assoc_exhaustive_cap,
            assoc_samples=cfg.assoc_samples,
            triple_exhaustive_cap=cfg.triple_exhaustive_cap,
            triple_samples=cfg.triple_samples,
            element_cap=cfg.element_cap,
            seed=args.seed,
        )
    return cfg


def _parse_gens(text):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise ParseError(f"--gens expects comma-separated indices, got {text!r}")


def _load_setup(args, config):
    """Resolve --input to (monoid, gens, action-or-None)."""
    try:
        data = json.loads(Path(args.input).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.input}: invalid JSON at line {exc.lineno}")
    if "act" in data:
        action, file_gens = fileio.load_action(args.input, config=config)
        monoid = action.monoid
    else:
        monoid, file_gens = fileio.load_monoid_any(args.input, config=config)
        action = None
    gens = _parse_gens(getattr(args, "gens", None))
    if gens is None:
        gens = file_gens
    if gens is None:
        gens = tuple(range(monoid.order))
    return monoid, gens, action


def _self_action(monoid, gens, action, config):
    return action if action is not None else cayley_self_action(monoid, gens, config)


def cmd_gen(args):
    config = _config(args)
    monoid, _ = fileio.load_monoid_any(args.input, config=config)
    fileio.save_monoid_table(args.out, monoid)
    print(f"wrote table of order {monoid.order} to {args.out}")
    return 0


def cmd_analyze(args):
    config = _config(args)
    monoid, _, _ = _load_setup(args, config)
    print(f"order: {monoid.order}")
    print(f"identity: {monoid.element_label(monoid.identity)}")
    idem = ", ".join(monoid.element_label(e) for e in monoid.idempotents)
    print(f"idempotents ({len(monoid.idempotents)}): {idem}")
    print("L-classes:")
    for cls in monoid.lclasses:
        print("  {" + ", ".join(monoid.element_label(s) for s in cls) + "}")
    by_ran = {}
    for s in range(monoid.order):
        by_ran.setdefault(monoid.ran(s), []).append(s)
    print("R-classes:")
    for r in sorted(by_ran):
        print("  {" + ", ".join(monoid.element_label(s) for s in by_ran[r]) + "}")
    leq = natural_leq_matrix(monoid)
    strict = leq & ~np.eye(monoid.order, dtype=bool)
    covers = strict & ~(strict @ strict)
    print("natural order (Hasse covers s < t):")
    for s, t in np.argwhere(covers):
        print(
            f"  {monoid.element_label(int(s))} < {monoid.element_label(int(t))}"
        )
    return 0


def cmd_graph(args):
    config = _config(args)
    monoid, gens, action = _load_setup(args, config)
    labels = tuple(monoid.element_label(s) for s in range(monoid.order))
    if args.kind == "cayley":
        graph = cayley_graph(monoid, gens)
        text = fileio.dot_labeled_digraph(
            graph, vertex_labels=labels, edge_label=monoid.element_label
        )
    elif args.kind == "schutzenberger":
        p = cayley_presheaf(monoid, gens, config)
        anchor = args.component if args.component is not None else monoid.identity
        text = fileio.dot_fiber(
            p,
            int(p.proj[anchor]),
            vertex_labels=labels,
            edge_label=monoid.element_label,
        )
    else:
        act = _self_action(monoid, gens, action, config)
        x1 = args.basepoint if args.basepoint is not None else min(act.identity_fiber())
        rips = rips_graph(act, x1, Fraction(args.radius))
        text = fileio.dot_rips(rips, vertex_labels=labels)
    Path(args.out).write_text(text)
    print(f"wrote {args.kind} graph to {args.out}")
    return 0


def cmd_metric(args):
    config = _config(args)
    monoid, gens, action = _load_setup(args, config)
    if args.kind == "word":
        table = cayley_metric(monoid, gens, config)
        metric = table.metric
    else:
        act = _self_action(monoid, gens, action, config)
        x1 = args.basepoint if args.basepoint is not None else min(act.identity_fiber())
        metric = rips_graph(act, x1, Fraction(args.radius)).metric
    labels = [monoid.element_label(s) for s in range(monoid.order)]
    fileio.save_metric(f"{args.out}.json", metric)
    Path(f"{args.out}.txt").write_text(fileio.metric_to_text(metric, labels=labels))
    print(f"wrote {args.kind} metric to {args.out}.json and {args.out}.txt")
    return 0


def cmd_verify(args):
    config = _config(args)
    monoid, gens, action = _load_setup(args, config)
    act = _self_action(monoid, gens, action, config)
    checks, passed = run_verification(
        act,
        gens,
        radius=Fraction(args.radius),
        basepoint=args.basepoint,
        config=config,
    )
    text = checks_to_text(checks)
    print(text, end="")
    if args.out:
        Path(f"{args.out}.json").write_text(
            fileio.dumps_canonical(checks_to_json(checks))
        )
        Path(f"{args.out}.txt").write_text(text)
    return 0 if passed else 1


def cmd_qi(args):
    config = _config(args)
    monoid, gens, action = _load_setup(args, config)
    act = _self_action(monoid, gens, action, config)
    x1 = args.basepoint if args.basepoint is not None else min(act.identity_fiber())
    radius = Fraction(args.radius)
    orbit = orbit_map_qi(act, x1, gens, config)
    rips = rips_graph(act, x1, radius)
    word = cayley_metric(monoid, gens, config)
    between = qi_constants(np.arange(monoid.order), rips.metric, word.metric)
    report = {
        "orbit_map": {
            "L": orbit.mult,
            "C": orbit.add,
            "coarse_radius": orbit.coarse_radius,
            "order_preserving": orbit.order_preserving,
        },
        "rips_vs_word": {
            "L": between.mult,
            "C": between.add,
            "coarse_radius": between.coarse_radius,
            "radius": radius,
        },
    }
    text = fileio.dumps_canonical(jsonable(report))
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text)
    return 0


def cmd_examples(args):
    config = _config(args)
    if args.action == "list":
        for spec in families.list_examples():
            print(f"{spec.name}: {spec.description}")
        return 0
    built = families.build_example(args.name, config=config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    monoid = built.monoid
    monoid_path = out_dir / f"{args.name}.monoid.json"
    fileio.save_monoid_table(monoid_path, monoid)
    written = [monoid_path]
    if built.spec.family == "symmetric-inverse":
        # the full generating set, so the file regenerates the monoid alone
        gens_path = out_dir / f"{args.name}.gens.json"
        n = built.spec.params["n"]
        fileio.save_generator_file(
            gens_path, n, families.symmetric_inverse_generators(n)
        )
        written.append(gens_path)
    presheaf = cayley_presheaf(monoid, built.quasi_generators, config)
    presheaf_path = out_dir / f"{args.name}.presheaf.json"
    fileio.save_presheaf(presheaf_path, presheaf)
    written.append(presheaf_path)
    action = cayley_self_action(monoid, built.quasi_generators, config)
    action_path = out_dir / f"{args.name}.action.json"
    fileio.save_action(
        action_path,
        action,
        monoid_path.name,
        presheaf_path.name,
        gens=built.quasi_generators,
    )
    written.append(action_path)
    for path in written:
        print(f"wrote {path}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="invgeom",
        description="Finite inverse monoids as extended metric spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="build a monoid file from generators or a table")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="print idempotents, Green classes, Hasse order")
    p.add_argument("--input", required=True)
    p.add_argument("--gens", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", help="DOT export of a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument(
        "--kind", choices=("cayley", "schutzenberger", "rips"), default="cayley"
    )
    p.add_argument("--gens", default=None)
    p.add_argument("--component", type=int, default=None,
                   help="element whose Schützenberger component to export")
    p.add_argument("--radius", default="1")
    p.add_argument("--basepoint", type=int, default=None)
    p.add_argument("--format", choices=("dot",), default="dot")
    _add_common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("metric", help="matrix export of a word or Rips metric")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--kind", choices=("word", "rips"), default="word")
    p.add_argument("--gens", default=None)
    p.add_argument("--radius", default="1")
    p.add_argument("--basepoint", type=int, default=None)
    p.add_argument("--format", choices=("matrix",), default="matrix")
    _add_common(p)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("verify", help="run the full predicate suite")
    p.add_argument("--input", required=True)
    p.add_argument("--gens", default=None)
    p.add_argument("--radius", default="1")
    p.add_argument("--basepoint", type=int, default=None)
    p.add_argument("--out", default=None, help="report base path")
    p.add_argument("--format", choices=("report",), default="report")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("qi", help="quasi-isometry constants between metrics")
    p.add_argument("--input", required=True)
    p.add_argument("--gens", default=None)
    p.add_argument("--radius", default="1")
    p.add_argument("--basepoint", type=int, default=None)
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_qi)

    p = sub.add_parser("examples", help="list or emit bundled examples")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--out-dir", default=".")
    _add_common(p)
    p.set_defaults(func=cmd_examples)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "examples" and args.action == "emit" and not args.name:
        parser.error("examples emit requires a name")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvgeomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
