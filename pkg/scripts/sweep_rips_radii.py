#!/usr/bin/env python3
"""Sweep Rips radii on a bundled example and tabulate predicate outcomes.

For each radius the script reports whether the Rips metric has L-class
components, the uniform-properness witness size, and the quasi-isometry
constants against the word metric.

Usage:
  python scripts/sweep_rips_radii.py --example i3 --max-radius 4
"""

import argparse

import numpy as np

from invgeom import (
    build_example,
    cayley_metric,
    cayley_self_action,
    properness_witness,
    qi_constants,
    rips_graph,
    validate_metric_predicates,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--example", default="i3")
    parser.add_argument("--max-radius", type=int, default=4)
    args = parser.parse_args()

    built = build_example(args.example)
    m = built.monoid
    action = cayley_self_action(m, built.quasi_generators)
    x1 = min(action.identity_fiber())
    word = cayley_metric(m, built.quasi_generators)

    print(f"{built.spec.name}: order {m.order}; radii 0..{args.max_radius}")
    print(f"{'R':>3} {'components=L':>13} {'|F1|':>5} {'uniform':>8} {'(L, C) vs word':>16}")
    for radius in range(args.max_radius + 1):
        rips = rips_graph(action, x1, radius)
        f1 = properness_witness(action, x1, radius)
        rep = validate_metric_predicates(m, rips.metric, f1=f1)
        if rep.components.passed:
            qi = qi_constants(np.arange(m.order), rips.metric, word.metric)
            constants = f"({qi.mult}, {qi.add})"
        else:
            constants = "n/a"
        print(
            f"{radius:>3} {str(rep.components.passed):>13} {len(f1):>5} "
            f"{str(rep.uniform_properness.passed):>8} {constants:>16}"
        )


if __name__ == "__main__":
    main()
