"""Shared test utilities: random generators, direct one-step evaluation,
and an independent classical modal-logic oracle."""

from __future__ import annotations

import random
from fractions import Fraction

from nexfuz.liftings import (
    diamond_value,
    generally_value,
    metric_diamond_value,
    more_than_value,
)
from nexfuz.metricspace import MetricSpace
from nexfuz.models import FiniteModel
from nexfuz.numerics import Interval, ONE, ZERO
from nexfuz.sequents import Sequent
from nexfuz.syntax import (
    And,
    Atom,
    Diamond,
    Formula,
    Generally,
    Minus,
    Modal,
    MetricDiamond,
    MoreThan,
    Neg,
    Zero,
)

ATOMS = ("a", "b", "c")


def rand_rational(rng: random.Random, max_den: int = 16) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def rand_interval(rng: random.Random, max_den: int = 16) -> Interval:
    x, y = sorted((rand_rational(rng, max_den), rand_rational(rng, max_den)))
    return Interval.make(x, y, lo_open=x != y and rng.random() < 0.3,
                         hi_open=x != y and rng.random() < 0.3)


def rand_modal_op(rng: random.Random, logic_name: str, space: MetricSpace | None = None,
                  max_den: int = 16):
    if logic_name == "alc":
        return Diamond()
    if logic_name == "lgen":
        return Generally()
    if logic_name == "mp":
        return MoreThan(rand_rational(rng, max_den))
    label = rng.choice(space.labels)
    return MetricDiamond(label, rand_rational(rng, max_den))


class _FormulaBuilder:
    """Random formulas with a per-depth-level modal budget shared across one
    whole sequent, so that every recursion layer of the solver sees at most
    `layer_budget` modal literals."""

    def __init__(self, rng, logic_name, space, max_den, layer_budget):
        self.rng = rng
        self.logic_name = logic_name
        self.space = space
        self.max_den = max_den
        self.layer_budget = layer_budget
        self.budgets: dict[int, int] = {}

    def build(self, depth: int, level: int = 0) -> Formula:
        rng = self.rng
        remaining = self.budgets.setdefault(level, self.layer_budget)
        choices = ["atom", "atom", "neg", "minus", "and", "zero"]
        if depth > 0 and remaining > 0:
            choices += ["modal", "modal", "modal"]
        kind = rng.choice(choices)
        if kind == "atom":
            return Atom(rng.choice(ATOMS))
        if kind == "zero":
            return Zero()
        if kind == "neg":
            return Neg(self.build(depth, level))
        if kind == "minus":
            return Minus(self.build(depth, level), rand_rational(rng, self.max_den))
        if kind == "and":
            return And(self.build(depth, level), self.build(depth, level))
        self.budgets[level] -= 1
        return Modal(
            rand_modal_op(rng, self.logic_name, self.space, self.max_den),
            self.build(depth - 1, level + 1),
        )


def rand_formula(
    rng: random.Random,
    logic_name: str,
    depth: int,
    space: MetricSpace | None = None,
    max_den: int = 16,
    layer_budget: int = 4,
) -> Formula:
    return _FormulaBuilder(rng, logic_name, space, max_den, layer_budget).build(depth)


def rand_sequent(
    rng: random.Random,
    logic_name: str,
    depth: int = 3,
    space: MetricSpace | None = None,
    max_den: int = 16,
    max_literals: int = 2,
    layer_budget: int = 4,
) -> Sequent:
    builder = _FormulaBuilder(rng, logic_name, space, max_den, layer_budget)
    out = Sequent()
    for _ in range(rng.randint(1, max_literals)):
        out = out.insert(builder.build(depth), rand_interval(rng, max_den))
    return out


def rand_metric_space(rng: random.Random, max_labels: int = 3, max_den: int = 8) -> MetricSpace:
    """Random finite metric space from points on the rational line."""
    n = rng.randint(1, max_labels)
    labels = [f"l{i}" for i in range(n)]
    points = [rand_rational(rng, max_den) for _ in range(n)]
    matrix = [[abs(points[i] - points[j]) for j in range(n)] for i in range(n)]
    return MetricSpace.make(labels, matrix)


def rand_model(
    rng: random.Random,
    kind: str,
    n_states: int,
    space: MetricSpace | None = None,
    max_den: int = 16,
) -> FiniteModel:
    states = tuple(f"x{i}" for i in range(n_states))
    atoms = {x: {a: rand_rational(rng, max_den) for a in ATOMS} for x in states}
    trans: dict = {}
    if kind == "prob":
        for x in states:
            supp = rng.sample(states, rng.randint(1, n_states))
            weights = [rng.randint(1, max_den) for _ in supp]
            total = sum(weights)
            trans[x] = {y: Fraction(w, total) for y, w in zip(supp, weights)}
    elif kind == "fuzzyrel":
        for x in states:
            row = {}
            for y in states:
                if rng.random() < 0.6:
                    row[y] = rand_rational(rng, max_den)
            trans[x] = row
    else:
        for x in states:
            row = {}
            for y in states:
                for label in space.labels:
                    if rng.random() < 0.4:
                        row[(label, y)] = (
                            ONE if kind == "metric-crisp" else rand_rational(rng, max_den)
                        )
            trans[x] = row
    model = FiniteModel(kind, states, trans, atoms, space)
    model.validate()
    return model


# ---------------------------------------------------------------------------
# Direct one-step evaluation (independent of the solver path)
# ---------------------------------------------------------------------------


def eval_prop(formula: Formula, valuation: dict[Formula, Fraction]) -> Fraction:
    """Evaluate a one-step formula under truth values for its modal/atom labels."""
    if isinstance(formula, Zero):
        return ZERO
    if formula in valuation:
        return valuation[formula]
    if isinstance(formula, Neg):
        return ONE - eval_prop(formula.arg, valuation)
    if isinstance(formula, Minus):
        return max(ZERO, eval_prop(formula.arg, valuation) - formula.c)
    if isinstance(formula, And):
        return min(eval_prop(formula.left, valuation), eval_prop(formula.right, valuation))
    raise AssertionError(f"no valuation for label {formula!r}")


def seq_satisfied(seq: Sequent, valuation: dict[Formula, Fraction]) -> bool:
    return all(i.contains(eval_prop(f, valuation)) for f, i in seq.items())


def onestep_modal_value(op, tau_values: list[Fraction], structure, space=None) -> Fraction:
    """Truth value of one modal literal in an explicit one-step model.

    `tau_values[j]` is the variable's value at state j; `structure` is the
    kind-specific transition data (degrees, weights, or (label, degree))."""
    if isinstance(op, Diamond):
        return diamond_value(list(zip(structure, tau_values)))
    if isinstance(op, Generally):
        return generally_value(list(zip(structure, tau_values)))
    if isinstance(op, MoreThan):
        return more_than_value(list(zip(structure, tau_values)), op.p)
    if isinstance(op, MetricDiamond):
        triples = [
            (label, degree, value)
            for (label, degree), value in zip(structure, tau_values)
        ]
        return metric_diamond_value(triples, op.label, op.c, space)
    raise AssertionError(f"unknown operator {op!r}")


# ---------------------------------------------------------------------------
# Classical relational modal logic (oracle for the crisp-fragment check)
# ---------------------------------------------------------------------------


def classical_sat(formula: Formula) -> bool:
    """Complete decision for crisp relational modal logic with one diamond.

    States are sets of signed demands (formula, polarity).  Non-branching
    demands are saturated in place; negated conjunctions branch; finally
    each positive diamond demand spawns one recursive successor check that
    also carries every negative diamond demand.
    """

    def sat_set(demands: list[tuple[Formula, bool]]) -> bool:
        queue = list(demands)
        literals: dict[str, bool] = {}
        dias: list[Formula] = []
        boxes: list[Formula] = []
        while queue:
            f, pos = queue.pop()
            if isinstance(f, Zero):
                if pos:
                    return False
            elif isinstance(f, Atom):
                if literals.get(f.name, pos) != pos:
                    return False
                literals[f.name] = pos
            elif isinstance(f, Neg):
                queue.append((f.arg, not pos))
            elif isinstance(f, And):
                if pos:
                    queue.append((f.left, True))
                    queue.append((f.right, True))
                else:
                    rest = (
                        list(queue)
                        + [(Atom(k), v) for k, v in literals.items()]
                        + [(Modal(Diamond(), d), True) for d in dias]
                        + [(Modal(Diamond(), b), False) for b in boxes]
                    )
                    return sat_set(rest + [(f.left, False)]) or sat_set(
                        rest + [(f.right, False)]
                    )
            elif isinstance(f, Modal):
                (dias if pos else boxes).append(f.arg)
            else:
                raise AssertionError(f"classical oracle cannot handle {f!r}")
        return all(sat_set([(d, True)] + [(b, False) for b in boxes]) for d in dias)

    return sat_set([(formula, True)])
