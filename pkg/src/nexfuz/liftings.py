"""Modal operator semantics over finite successor data.

Each function computes the exact truth degree of one modal operator from
finite successor information.  The suprema in the point-set definitions are
replaced by finite maxima; for the probabilistic operators the supremum over
all thresholds is attained at a successor value because the cumulative mass
above a threshold is a left-continuous step function of the threshold.
"""

from __future__ import annotations

from fractions import Fraction

from .metricspace import MetricSpace
from .numerics import ZERO


def diamond_value(edges: list[tuple[Fraction, Fraction]]) -> Fraction:
    """max over successors of min(transition degree, argument value)."""
    best = ZERO
    for degree, value in edges:
        best = max(best, min(degree, value))
    return best


def generally_value(dist: list[tuple[Fraction, Fraction]]) -> Fraction:
    """max over thresholds a of min(a, mass of {successor value >= a}).

    `dist` pairs each successor's probability with the argument value there.
    Only successor values need to be tried as thresholds.
    """
    best = ZERO
    for _, alpha in dist:
        mass = sum((w for w, v in dist if v >= alpha), ZERO)
        best = max(best, min(alpha, mass))
    return best


def more_than_value(dist: list[tuple[Fraction, Fraction]], p: Fraction) -> Fraction:
    """Largest successor value a with mass of {value >= a} > p, else 0."""
    best = ZERO
    for _, alpha in dist:
        if alpha <= best:
            continue
        mass = sum((w for w, v in dist if v >= alpha), ZERO)
        if mass > p:
            best = alpha
    return best


def metric_diamond_value(
    edges: list[tuple[str, Fraction, Fraction]],
    base_label: str,
    reach: Fraction,
    space: MetricSpace,
) -> Fraction:
    """max over labelled edges of min(degree, value, reach - distance).

    `edges` lists (edge label, transition degree, argument value at target);
    the reach term is truncated at 0.
    """
    best = ZERO
    for label, degree, value in edges:
        slack = max(ZERO, reach - space.dist(base_label, label))
        best = max(best, min(degree, value, slack))
    return best
