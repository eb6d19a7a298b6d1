#!/usr/bin/env python3
"""End-to-end tour: threshold solving, witness inspection, evaluation.

Models a service-reliability scenario: a deployment is "mostly stable"
when, with high probability, a dependency is either degraded or recovers
quickly; the `- c` connective expresses a demanded quality margin.
"""

import sys
from fractions import Fraction

from nexfuz import (
    Comp,
    MetricSpace,
    Sequent,
    eval_formula,
    get_logic,
    parse,
    parse_interval,
    sat,
    sat_threshold,
)


def show(title, verdict):
    print(f"== {title}: {'SAT' if verdict.sat else 'UNSAT'}")
    if verdict.sat:
        model = verdict.model
        print(f"   witness has {len(model.states)} states, root {verdict.state}")


def main() -> int:
    # Probabilistic reading: stability margin of 1/4 below the degraded or
    # fast-recovery likelihood being generally high.
    lgen = get_logic("lgen")
    formula = parse("(stable - 1/4) & G (degraded | recovers)")
    verdict = sat_threshold(formula, Comp.GE, Fraction(3, 5), lgen)
    show("generally-high reliability at >= 3/5", verdict)
    print("   degree at witness root:",
          eval_formula(verdict.model, verdict.state, formula))

    # Quantitative reading: recovery guaranteed with probability > 9/10.
    mp = get_logic("mp")
    verdict = sat_threshold(parse("outage & M{9/10} recovers"), Comp.GT, Fraction(1, 2), mp)
    show("probable recovery despite outage", verdict)

    # Fuzzy-relational reading with an exact conflict: the degree of having
    # a stable successor must be exactly 1/2.
    alc = get_logic("alc")
    seq = Sequent([(parse("dia stable & ~(dia stable)"), parse_interval("[1/2,1]"))])
    verdict = sat(seq, alc)
    show("diamond conflict pinned at 1/2", verdict)
    print("   dia stable evaluates to",
          eval_formula(verdict.model, verdict.state, parse("dia stable")))

    # Metric reading: zones on a line; reaching a nearby zone cheaply.
    space = MetricSpace.make(
        ["east", "mid", "west"],
        [[0, Fraction(1, 4), Fraction(1, 2)],
         [Fraction(1, 4), 0, Fraction(1, 4)],
         [Fraction(1, 2), Fraction(1, 4), 0]],
    )
    metric = get_logic("metric-fuzzy", space)
    verdict = sat_threshold(parse("dia{east, 3/4} serviced"), Comp.GE, Fraction(1, 2), metric)
    show("east zone reachable with margin", verdict)
    return 0


if __name__ == "__main__":
    sys.exit(main())
