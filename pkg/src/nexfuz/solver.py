"""Recursive satisfiability with witness extraction.

The decision procedure, per recursion level:

1. split the input sequent into a propositional layer over fresh truth
   variables plus bindings of the variables to the guarded subformulas;
2. saturate the propositional layer, enumerating open end-sequents;
3. for each end-sequent, ask the instance logic for a conclusion whose
   variable sequents are all recursively satisfiable (after substituting
   the bound formulas back in);
4. on success, feed the children's exact truth values to the instance's
   realize construction and join the child witnesses under a fresh root.

Recursion depth is bounded by the modal depth of the input.  All
nondeterminism is resolved by exhaustive, deterministically ordered
backtracking, so verdicts and witnesses are reproducible.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .lp import CapExceeded
from .models import FiniteModel, assemble_witness, check_sequent, eval_formula
from .numerics import Comp, Interval
from .onestep import (
    Decomposition,
    OneStepLogic,
    WithAtoms,
    split_atoms,
    substitute,
    top_level_decompose,
    with_atoms,
)
from .prop_tableau import saturate
from .sequents import Sequent
from .syntax import Formula, Modal, Var, modal_depth, subformulas

MAX_LITERALS_ENV = "NEXFUZ_MAX_LITERALS"


@dataclass
class SolverCaps:
    """Explicit limits; exceeding one raises CapExceeded, never UNSAT."""

    max_layer_literals: int = 8

    @staticmethod
    def from_env() -> SolverCaps:
        caps = SolverCaps()
        raw = os.environ.get(MAX_LITERALS_ENV)
        if raw:
            caps.max_layer_literals = int(raw)
        return caps


@dataclass
class SolveStats:
    """Counters backing the space-shape assertions in the test suite."""

    max_depth: int = 0
    nodes: int = 0
    level_input_size: dict[int, int] = field(default_factory=dict)
    level_peak_size: dict[int, int] = field(default_factory=dict)
    level_peak_stack: dict[int, int] = field(default_factory=dict)
    witness_branching: list[tuple[int, int]] = field(default_factory=list)

    def _bump(self, table: dict[int, int], level: int, value: int) -> None:
        table[level] = max(table.get(level, 0), value)


@dataclass
class Verdict:
    sat: bool
    model: FiniteModel | None = None
    state: str | None = None

    def __bool__(self) -> bool:
        return self.sat


class _ChildOutcome:
    """Adapter giving the instance logics access to child truth values."""

    __slots__ = ("verdict", "binding")

    def __init__(self, verdict: Verdict, binding: dict[Var, Formula]):
        self.verdict = verdict
        self.binding = binding

    @property
    def sat(self) -> bool:
        return self.verdict.sat

    def value_of(self, var: Var) -> Fraction:
        return eval_formula(self.verdict.model, self.verdict.state, self.binding[var])


def _check_signature(seq: Sequent, logic: OneStepLogic) -> None:
    for f, _ in seq.items():
        for sub in subformulas(f):
            if isinstance(sub, Modal) and not logic.supports(sub.op):
                raise ValueError(f"modality {sub.op} is not part of logic {logic.name!r}")


def sat(
    seq: Sequent,
    logic: OneStepLogic,
    caps: SolverCaps | None = None,
    stats: SolveStats | None = None,
    verify: bool | None = None,
    declared_atoms=(),
) -> Verdict:
    """Decide satisfiability of an exact sequent over formulas.

    Returns a verdict carrying a checkable witness model on success.  With
    `verify` (defaulting to the interpreter's debug mode) the witness is
    model-checked against the input before returning.
    """
    caps = caps or SolverCaps.from_env()
    stats = stats if stats is not None else SolveStats()
    if verify is None:
        verify = __debug__
    wrapped = logic if isinstance(logic, WithAtoms) else with_atoms(logic, declared_atoms)
    _check_signature(seq, wrapped)
    space = wrapped.space
    memo: dict[Sequent, Verdict] = {}

    def solve(current: Sequent, depth: int) -> Verdict:
        if current in memo:
            return memo[current]
        stats.nodes += 1
        stats.max_depth = max(stats.max_depth, depth)
        stats._bump(stats.level_input_size, depth, current.combined_size())
        decomp = top_level_decompose(current)
        if len(decomp.variables) > caps.max_layer_literals:
            raise CapExceeded(
                f"{len(decomp.variables)} modal literals in one layer "
                f"(cap {caps.max_layer_literals})"
            )
        verdict = Verdict(False)
        for gamma_g in saturate(
            decomp.lifted,
            stack_hook=lambda d: stats._bump(stats.level_peak_stack, depth, d),
        ):
            stats._bump(stats.level_peak_size, depth, gamma_g.combined_size())
            found = wrapped.search(gamma_g, _solver_for(decomp, depth))
            if found is not None:
                verdict = _build_witness(gamma_g, found, decomp)
                break
        memo[current] = verdict
        return verdict

    def _solver_for(decomp: Decomposition, depth: int):
        def solve_child(q: Sequent) -> _ChildOutcome:
            child_seq = substitute(q, decomp.binding)
            stats._bump(stats.level_peak_size, depth, child_seq.combined_size())
            return _ChildOutcome(solve(child_seq, depth + 1), decomp.binding)

        return solve_child

    def _build_witness(gamma_g: Sequent, found, decomp: Decomposition) -> Verdict:
        children = found.children

        def tau(j: int, var: Var) -> Fraction:
            return children[j].value_of(var)

        witness = wrapped.realize(gamma_g, found.conclusion, tau)
        if witness.kind == "prob":
            n_modal = len(split_atoms(gamma_g)[1])
            support = sum(1 for w in witness.edges if w != 0)
            stats.witness_branching.append((n_modal, support))
        model, root = assemble_witness(
            wrapped.kind,
            witness,
            [(c.verdict.model, c.verdict.state) for c in children],
            space,
        )
        return Verdict(True, model, root)

    result = solve(seq, 0)
    if result.sat and verify and not check_sequent(result.model, result.state, seq):
        raise AssertionError("witness model fails to satisfy the input sequent")
    if stats.max_depth > max((modal_depth(f) for f, _ in seq.items()), default=0):
        raise AssertionError("recursion exceeded the modal depth of the input")
    return result


def sat_threshold(
    formula: Formula,
    comp: Comp,
    p: Fraction,
    logic: OneStepLogic,
    caps: SolverCaps | None = None,
    stats: SolveStats | None = None,
    verify: bool | None = None,
) -> Verdict:
    """Decide whether the formula attains a truth degree `comp p` somewhere."""
    interval = Interval.from_comparison(comp, Fraction(p))
    seq = Sequent([(formula, interval)])
    return sat(seq, logic, caps=caps, stats=stats, verify=verify)
