"""Fuzzy-relational diamond logic: single-conclusion modal rule.

The rule has exactly one conclusion with one successor sequent per literal.
State i is dedicated to the lower bound of literal i; an upper bound of
literal j is imposed on state i's value of v_j exactly when no transition
degree could meet literal i's lower bound while staying under that upper
bound (their intervals are disjoint).  The realize step picks each
transition degree inside literal i's own interval, additionally staying
under every upper bound whose interval does meet it.
"""

from __future__ import annotations

from typing import Callable, Iterator

from ..liftings import diamond_value
from ..numerics import Interval, ONE, ZERO
from ..onestep import (
    Conclusion,
    OneStepLogic,
    TransitionWitness,
    exact_over_vars,
    modal_literals,
)
from ..sequents import Sequent, SequentError
from ..syntax import Diamond, ModalOp


class FuzzyAlcLogic(OneStepLogic):
    name = "alc"
    kind = "fuzzyrel"

    def supports(self, op: ModalOp) -> bool:
        return isinstance(op, Diamond)

    @staticmethod
    def _literals(gamma: Sequent):
        lits = modal_literals(gamma)
        for op, var, _ in lits:
            if not isinstance(op, Diamond):
                raise SequentError(f"unsupported modality {op} for the diamond logic")
        if len({var for _, var, _ in lits}) != len(lits):
            raise SequentError("duplicate variables in an end-sequent")
        return [(var, interval) for _, var, interval in lits]

    def conclusions(self, gamma: Sequent) -> Iterator[Conclusion]:
        lits = self._literals(gamma)
        if any(interval.is_empty for _, interval in lits):
            return
        variables = [var for var, _ in lits]
        uppers = [
            Interval.make(ZERO, interval.hi, hi_open=interval.hi_open)
            for _, interval in lits
        ]
        sequents = []
        for i, (v_i, interval_i) in enumerate(lits):
            cell: dict = {v_i: Interval.make(interval_i.lo, ONE, lo_open=interval_i.lo_open)}
            for j, (v_j, _) in enumerate(lits):
                if j != i and interval_i.intersect(uppers[j]).is_empty:
                    cell[v_j] = uppers[j]
            sequents.append(exact_over_vars(cell, variables))
        yield Conclusion(0, tuple(sequents))

    def realize(self, gamma, conclusion, tau) -> TransitionWitness:
        lits = self._literals(gamma)
        uppers = [
            Interval.make(ZERO, interval.hi, hi_open=interval.hi_open)
            for _, interval in lits
        ]
        degrees = []
        for i, (v_i, interval_i) in enumerate(lits):
            allowed = Interval.make(interval_i.lo, ONE, lo_open=interval_i.lo_open)
            for j in range(len(lits)):
                if not interval_i.intersect(uppers[j]).is_empty:
                    allowed = allowed.intersect(uppers[j])
            if allowed.is_empty:
                raise SequentError("internal: empty degree range in diamond realize")
            degrees.append(allowed.pick())
        witness = TransitionWitness("fuzzyrel", tuple(degrees))
        _check_roundtrip(lits, conclusion, tau, degrees)
        return witness


def _check_roundtrip(lits, conclusion: Conclusion, tau: Callable, degrees) -> None:
    """Re-evaluate each literal's lifting on the realized structure."""
    for var, interval in lits:
        edges = [(degrees[j], tau(j, var)) for j in range(len(degrees))]
        if not interval.contains(diamond_value(edges)):
            raise SequentError("internal: realized diamond value escapes its interval")
