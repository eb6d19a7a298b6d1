"""One-step layer: decomposition, substitution, the pluggable modal rule API.

A sequent over formulas is split into a propositional part over fresh truth
variables (one per outermost modal occurrence) plus a binding of those
variables to the guarded subformulas.  Instance logics consume saturated
end-sequents over modal labels and produce *conclusions*: alternative lists
of exact sequents over the variables describing admissible successor states,
together with a `realize` construction that turns concrete successor truth
values into an actual transition structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Protocol, Sequence

from .numerics import Interval, UNIT
from .sequents import Sequent, SequentError
from .syntax import And, Atom, Formula, Minus, Modal, ModalOp, Neg, Var, Zero


@dataclass(frozen=True)
class Decomposition:
    variables: tuple[Var, ...]
    binding: dict[Var, Formula]
    lifted: Sequent

    def __iter__(self):
        return iter((self.variables, self.binding, self.lifted))


def top_level_decompose(seq: Sequent) -> Decomposition:
    """Replace each outermost modal argument with a fresh variable.

    Fresh variables are numbered v1, v2, ... in left-to-right order over the
    sequent's literals, one per modal occurrence even when arguments repeat.
    Atoms are nullary and stay in place.
    """
    variables: list[Var] = []
    binding: dict[Var, Formula] = {}

    def rewrite(f: Formula) -> Formula:
        if isinstance(f, (Zero, Atom)):
            return f
        if isinstance(f, Var):
            raise SequentError("input formulas must not contain truth variables")
        if isinstance(f, Neg):
            return Neg(rewrite(f.arg))
        if isinstance(f, Minus):
            return Minus(rewrite(f.arg), f.c)
        if isinstance(f, And):
            return And(rewrite(f.left), rewrite(f.right))
        if isinstance(f, Modal):
            v = Var(f"v{len(variables) + 1}")
            variables.append(v)
            binding[v] = f.arg
            return Modal(f.op, v)
        raise TypeError(f"not a formula: {f!r}")

    lifted = Sequent((rewrite(f), i) for f, i in seq.items())
    return Decomposition(tuple(variables), binding, lifted)


def substitute(q: Sequent, binding: dict[Var, Formula]) -> Sequent:
    """Replace variables by their bound formulas, intersecting on collisions."""
    out = Sequent()
    for label, interval in q.items():
        if not isinstance(label, Var):
            raise SequentError(f"expected a variable label, found {label!r}")
        out = out.insert(binding[label], interval)
    return out


# ---------------------------------------------------------------------------
# Transition witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransitionWitness:
    """Root transition structure produced by `realize`.

    `kind` matches the finite-model kinds.  `edges` is per successor state:
    a probability weight ("prob"), a fuzzy degree ("fuzzyrel"), or a
    (label, degree) pair ("metric"/"metric-crisp").  For the probabilistic
    kind the edge list may be longer than the conclusion (a single inert
    dummy successor) so that the weights can sum to one.
    """

    kind: str
    edges: tuple
    atom_values: dict[str, Fraction] = field(default_factory=dict)

    @property
    def successor_count(self) -> int:
        return len(self.edges)

    def with_atoms(self, values: dict[str, Fraction]) -> TransitionWitness:
        return replace(self, atom_values=dict(values))


# ---------------------------------------------------------------------------
# Modal rule API
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Conclusion:
    """One alternative of a modal rule: an indexed list of variable sequents."""

    index: int
    sequents: tuple[Sequent, ...]
    data: object = None  # instance-specific payload for realize


ChildSolver = Callable[[Sequent], "object"]
# The solver passes a callable mapping a variable sequent to a child result;
# the result object must be truthy iff satisfiable and carry `value_of(var)`
# giving the exact truth value of the bound formula in the child witness.


class ChildResult(Protocol):
    sat: bool

    def value_of(self, var: Var) -> Fraction: ...


@dataclass
class SearchSuccess:
    conclusion: Conclusion
    children: list  # one ChildResult per conclusion sequent


class OneStepLogic:
    """A pluggable instance logic: modal rule enumeration plus realize."""

    name: str = "?"
    kind: str = "?"
    space = None  # metric label space, for the metric instances only

    def supports(self, op: ModalOp) -> bool:
        raise NotImplementedError

    def conclusions(self, gamma: Sequent) -> Iterator[Conclusion]:
        """Lazily enumerate the conclusions of the modal rule for `gamma`.

        `gamma` is an exact sequent whose labels are all of the form
        Modal(op, Var); the conclusions are exact over the variables.
        """
        raise NotImplementedError

    def realize(
        self,
        gamma: Sequent,
        conclusion: Conclusion,
        tau: Callable[[int, Var], Fraction],
    ) -> TransitionWitness:
        """Build a transition structure over the conclusion's states.

        `tau(j, v)` is the actual truth value of v's bound formula at state
        j; values are guaranteed to lie inside conclusion.sequents[j][v].
        """
        raise NotImplementedError

    def search(self, gamma: Sequent, solve_child: ChildSolver) -> SearchSuccess | None:
        """Find a conclusion whose sequents are all satisfiable.

        The default iterates `conclusions` in order; instances may override
        with an equivalent decision procedure when plain enumeration is too
        large, preserving the verdict.
        """
        for conclusion in self.conclusions(gamma):
            children = []
            for q in conclusion.sequents:
                result = solve_child(q)
                if not result.sat:
                    break
                children.append(result)
            else:
                return SearchSuccess(conclusion, children)
        return None


def split_atoms(gamma: Sequent) -> tuple[list[tuple[str, Interval]], Sequent]:
    """Separate atom literals from modal literals."""
    atoms: list[tuple[str, Interval]] = []
    modal = Sequent()
    for label, interval in gamma.items():
        if isinstance(label, Atom):
            atoms.append((label.name, interval))
        elif isinstance(label, Modal):
            modal = modal.insert(label, interval)
        else:
            raise SequentError(f"end-sequent label is neither modal nor atom: {label!r}")
    return atoms, modal


class WithAtoms(OneStepLogic):
    """Wrapper adding atom literals (nullary modalities) to an instance logic.

    Atom literals need no successors: they only pin the root's atom values.
    Contradictory atom bounds yield no conclusions; otherwise the inner
    logic's conclusions pass through unchanged and `realize` attaches the
    chosen atom values to the witness.  `declared_atoms` optionally extends
    the atom signature; unused declared atoms default to value 0 in
    witnesses and can never change a verdict.
    """

    def __init__(self, inner: OneStepLogic, declared_atoms: Iterable[str] = ()):
        self.inner = inner
        self.name = inner.name
        self.kind = inner.kind
        self.space = getattr(inner, "space", None)
        self.declared_atoms = tuple(sorted(set(declared_atoms)))

    def supports(self, op: ModalOp) -> bool:
        return self.inner.supports(op)

    def _atom_values(self, atoms: list[tuple[str, Interval]]) -> dict[str, Fraction] | None:
        values: dict[str, Fraction] = {name: Fraction(0) for name in self.declared_atoms}
        for name, interval in atoms:
            if interval.is_empty:
                return None
            values[name] = interval.pick()
        return values

    def conclusions(self, gamma: Sequent) -> Iterator[Conclusion]:
        atoms, modal = split_atoms(gamma)
        if self._atom_values(atoms) is None:
            return
        yield from self.inner.conclusions(modal)

    def realize(self, gamma, conclusion, tau) -> TransitionWitness:
        atoms, modal = split_atoms(gamma)
        values = self._atom_values(atoms)
        if values is None:
            raise SequentError("realize called on contradictory atom bounds")
        return self.inner.realize(modal, conclusion, tau).with_atoms(values)

    def search(self, gamma: Sequent, solve_child: ChildSolver) -> SearchSuccess | None:
        atoms, modal = split_atoms(gamma)
        if self._atom_values(atoms) is None:
            return None
        return self.inner.search(modal, solve_child)


def with_atoms(logic: OneStepLogic, declared_atoms: Iterable[str] = ()) -> OneStepLogic:
    return WithAtoms(logic, declared_atoms)


def modal_literals(gamma: Sequent) -> list[tuple[ModalOp, Var, Interval]]:
    """Unpack an end-sequent over Modal(op, Var) labels, in literal order."""
    out = []
    for label, interval in gamma.items():
        if not isinstance(label, Modal) or not isinstance(label.arg, Var):
            raise SequentError(f"not a one-layer modal label: {label!r}")
        out.append((label.op, label.arg, interval))
    return out


def exact_over_vars(intervals: dict[Var, Interval], variables: Sequence[Var]) -> Sequent:
    """Build a variable sequent total over `variables` (default full interval)."""
    return Sequent((v, intervals.get(v, UNIT)) for v in variables)
