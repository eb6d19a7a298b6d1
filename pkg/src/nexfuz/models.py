"""Finite models: construction, validation, exact evaluation, witnesses.

A model is a finite coalgebra of one of four kinds plus an atom valuation:

* "prob":          per-state finite-support probability distribution;
* "fuzzyrel":      rational transition degree per state pair (sparse);
* "metric":        per-state labelled fuzzy edges over a metric label space;
* "metric-crisp":  as "metric" with degrees restricted to {0, 1}.

Evaluation is exact and memoized per (state, subformula) within one call.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .liftings import diamond_value, generally_value, metric_diamond_value, more_than_value
from .metricspace import MetricSpace
from .numerics import ONE, ZERO, format_rational, parse_rational
from .onestep import TransitionWitness
from .sequents import Sequent
from .syntax import (
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
    Var,
    Zero,
)

KINDS = ("prob", "fuzzyrel", "metric", "metric-crisp")


class ModelError(ValueError):
    pass


@dataclass
class FiniteModel:
    kind: str
    states: tuple[str, ...]
    # prob/fuzzyrel: {state: {successor: degree}};
    # metric kinds:  {state: {(label, successor): degree}}
    trans: dict
    atoms: dict[str, dict[str, Fraction]]
    space: MetricSpace | None = None
    root: str | None = None

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ModelError(f"unknown model kind {self.kind!r}")
        state_set = set(self.states)
        if len(state_set) != len(self.states):
            raise ModelError("duplicate state names")
        if self.kind in ("metric", "metric-crisp") and self.space is None:
            raise ModelError("metric models need a metric space")
        if self.root is not None and self.root not in state_set:
            raise ModelError(f"root state {self.root!r} is not a state")
        for x, row in self.trans.items():
            if x not in state_set:
                raise ModelError(f"transition from unknown state {x!r}")
            for key, degree in row.items():
                if not ZERO <= degree <= ONE:
                    raise ModelError(f"transition degree {degree} outside [0, 1]")
                if self.kind in ("prob", "fuzzyrel"):
                    if key not in state_set:
                        raise ModelError(f"transition to unknown state {key!r}")
                else:
                    label, y = key
                    if y not in state_set:
                        raise ModelError(f"transition to unknown state {y!r}")
                    self.space.index(label)
                    if self.kind == "metric-crisp" and degree not in (ZERO, ONE):
                        raise ModelError("crisp transition degree must be 0 or 1")
        if self.kind == "prob":
            for x in self.states:
                total = sum(self.trans.get(x, {}).values(), ZERO)
                if total != ONE:
                    raise ModelError(f"distribution at {x!r} sums to {total}, not 1")
        for x, row in self.atoms.items():
            if x not in state_set:
                raise ModelError(f"atom valuation at unknown state {x!r}")
            for name, value in row.items():
                if not ZERO <= value <= ONE:
                    raise ModelError(f"atom value {value} outside [0, 1]")

    def atom_value(self, state: str, name: str) -> Fraction:
        try:
            return self.atoms[state][name]
        except KeyError:
            raise ModelError(f"atom {name!r} undefined at state {state!r}") from None

    def successors(self, state: str) -> dict:
        return self.trans.get(state, {})

    # -- JSON -----------------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind in ("prob", "fuzzyrel"):
            trans = {
                x: {y: format_rational(d) for y, d in row.items()}
                for x, row in self.trans.items()
            }
        else:
            trans = {
                x: [
                    {"label": label, "to": y, "deg": format_rational(d)}
                    for (label, y), d in row.items()
                ]
                for x, row in self.trans.items()
            }
        out = {
            "kind": self.kind,
            "states": list(self.states),
            "trans": trans,
            "atoms": {
                x: {a: format_rational(v) for a, v in row.items()}
                for x, row in self.atoms.items()
            },
        }
        if self.space is not None:
            out["metric"] = self.space.to_json()
        if self.root is not None:
            out["root"] = self.root
        return out

    @staticmethod
    def from_json(data: dict) -> FiniteModel:
        try:
            kind = data["kind"]
            states = tuple(data["states"])
            raw_trans = data["trans"]
            raw_atoms = data.get("atoms", {})
        except (TypeError, KeyError) as exc:
            raise ModelError("model JSON needs kind/states/trans") from exc
        space = None
        if "metric" in data:
            space = MetricSpace.from_json(data["metric"])
        trans: dict = {}
        if kind in ("prob", "fuzzyrel"):
            for x, row in raw_trans.items():
                trans[x] = {y: parse_rational(d) for y, d in row.items()}
        else:
            for x, row in raw_trans.items():
                trans[x] = {
                    (e["label"], e["to"]): parse_rational(e["deg"]) for e in row
                }
        atoms = {
            x: {a: parse_rational(v) for a, v in row.items()}
            for x, row in raw_atoms.items()
        }
        model = FiniteModel(kind, states, trans, atoms, space, data.get("root"))
        model.validate()
        return model

    @staticmethod
    def load(path: str) -> FiniteModel:
        with open(path, "r", encoding="utf-8") as fh:
            return FiniteModel.from_json(json.load(fh))

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")


def eval_formula(model: FiniteModel, state: str, formula: Formula) -> Fraction:
    """Exact truth degree of `formula` at `state`."""
    memo: dict[tuple[str, Formula], Fraction] = {}

    def ev(x: str, f: Formula) -> Fraction:
        key = (x, f)
        if key in memo:
            return memo[key]
        if isinstance(f, Zero):
            value = ZERO
        elif isinstance(f, Atom):
            value = model.atom_value(x, f.name)
        elif isinstance(f, Var):
            raise ModelError("cannot evaluate a truth variable in a model")
        elif isinstance(f, Neg):
            value = ONE - ev(x, f.arg)
        elif isinstance(f, Minus):
            value = max(ZERO, ev(x, f.arg) - f.c)
        elif isinstance(f, And):
            value = min(ev(x, f.left), ev(x, f.right))
        elif isinstance(f, Modal):
            value = _modal(model, x, f, ev)
        else:
            raise ModelError(f"not a formula: {f!r}")
        memo[key] = value
        return value

    return ev(state, formula)


def _modal(model: FiniteModel, x: str, f: Modal, ev) -> Fraction:
    op = f.op
    row = model.successors(x)
    if isinstance(op, Diamond):
        if model.kind != "fuzzyrel":
            raise ModelError(f"diamond evaluated on a {model.kind!r} model")
        return diamond_value([(d, ev(y, f.arg)) for y, d in row.items()])
    if isinstance(op, Generally):
        if model.kind != "prob":
            raise ModelError(f"'generally' evaluated on a {model.kind!r} model")
        return generally_value([(w, ev(y, f.arg)) for y, w in row.items()])
    if isinstance(op, MoreThan):
        if model.kind != "prob":
            raise ModelError(f"M{{p}} evaluated on a {model.kind!r} model")
        return more_than_value([(w, ev(y, f.arg)) for y, w in row.items()], op.p)
    if isinstance(op, MetricDiamond):
        if model.kind not in ("metric", "metric-crisp"):
            raise ModelError(f"metric diamond evaluated on a {model.kind!r} model")
        triples = [(label, d, ev(y, f.arg)) for (label, y), d in row.items()]
        return metric_diamond_value(triples, op.label, op.c, model.space)
    raise ModelError(f"unknown modal operator {op!r}")


def check_sequent(model: FiniteModel, state: str, seq: Sequent) -> bool:
    """Exact membership of every literal's truth degree in its interval."""
    return all(
        interval.contains(eval_formula(model, state, f)) for f, interval in seq.items()
    )


# ---------------------------------------------------------------------------
# Witness assembly
# ---------------------------------------------------------------------------


def assemble_witness(
    kind: str,
    witness: TransitionWitness,
    children: list[tuple[FiniteModel, str]],
    space: MetricSpace | None = None,
) -> tuple[FiniteModel, str]:
    """Disjoint union of child witnesses under a fresh root state.

    Child state names are prefixed to keep them disjoint; the root's
    transition structure targets each child's designated state.  For the
    probabilistic kind the witness may declare one extra successor beyond
    the children (no modal constraints at this layer); an inert dummy state
    with a self-loop is created for it.
    """
    if witness.kind != kind:
        raise ModelError(f"witness kind {witness.kind!r} does not match {kind!r}")
    for child, _ in children:
        if child.kind != kind:
            raise ModelError(f"child kind {child.kind!r} does not match {kind!r}")

    root = "s0"
    states: list[str] = [root]
    trans: dict = {}
    atoms: dict[str, dict[str, Fraction]] = {root: dict(witness.atom_values)}

    targets: list[str] = []
    for k, (child, child_state) in enumerate(children):
        prefix = f"c{k}."
        for y in child.states:
            states.append(prefix + y)
        for y, row in child.trans.items():
            if kind in ("prob", "fuzzyrel"):
                trans[prefix + y] = {prefix + z: d for z, d in row.items()}
            else:
                trans[prefix + y] = {
                    (label, prefix + z): d for (label, z), d in row.items()
                }
        for y, row in child.atoms.items():
            atoms[prefix + y] = dict(row)
        targets.append(prefix + child_state)

    edges = witness.edges
    if kind == "prob":
        if len(edges) == len(children) + 1:
            dummy = "sink"
            states.append(dummy)
            trans[dummy] = {dummy: ONE}
            atoms[dummy] = {}
            targets.append(dummy)
        elif len(edges) != len(children):
            raise ModelError("probabilistic witness arity mismatch")
        trans[root] = {}
        for target, weight in zip(targets, edges):
            if weight != ZERO:
                trans[root][target] = trans[root].get(target, ZERO) + weight
        total = sum(trans[root].values(), ZERO)
        if total != ONE:
            raise ModelError(f"witness distribution sums to {total}, not 1")
    elif kind == "fuzzyrel":
        if len(edges) != len(children):
            raise ModelError("fuzzy witness arity mismatch")
        trans[root] = {
            target: degree for target, degree in zip(targets, edges) if degree != ZERO
        }
    else:
        if len(edges) != len(children):
            raise ModelError("metric witness arity mismatch")
        trans[root] = {}
        for target, (label, degree) in zip(targets, edges):
            if degree != ZERO:
                trans[root][(label, target)] = degree

    model = FiniteModel(kind, tuple(states), trans, atoms, space, root)
    return model, root
