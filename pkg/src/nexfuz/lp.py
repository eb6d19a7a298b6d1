"""Exact rational linear feasibility.

Two engines:

* :func:`feasible` -- Fourier-Motzkin elimination with native handling of
  strict inequalities, intended for systems with few variables.  Returns an
  exact rational witness point or None.
* :func:`simplex_feasible` -- two-phase simplex, used where the variable
  count makes elimination impractical.  Strict inequalities are handled by
  maximizing a shared slack.

Both engines verify returned witnesses by re-substitution before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .numerics import Comp, ONE, ZERO


class CapExceeded(RuntimeError):
    """A configured enumeration or size cap was hit; distinct from infeasible."""


class LpError(RuntimeError):
    pass


EQ = "=="


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: Comp | str
    rhs: Fraction

    def evaluate(self, point: Sequence[Fraction]) -> bool:
        lhs = sum((c * x for c, x in zip(self.coeffs, point)), ZERO)
        if self.rel == EQ:
            return lhs == self.rhs
        return self.rel.holds(lhs, self.rhs)


@dataclass
class LinSystem:
    num_vars: int
    constraints: list[Constraint]

    def add(self, coeffs: Iterable, rel, rhs) -> None:
        row = tuple(Fraction(c) for c in coeffs)
        if len(row) != self.num_vars:
            raise LpError(f"constraint arity {len(row)} != {self.num_vars}")
        self.constraints.append(Constraint(row, rel, Fraction(rhs)))

    def check(self, point: Sequence[Fraction]) -> bool:
        return all(c.evaluate(point) for c in self.constraints)


def system(num_vars: int) -> LinSystem:
    return LinSystem(num_vars, [])


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination
# ---------------------------------------------------------------------------
#
# Internal row form: (coeffs, strict, rhs) meaning coeffs . x < rhs when
# strict else coeffs . x <= rhs.  Equalities are eliminated by substitution
# before the elimination loop.


def _check_const_row(strict: bool, rhs: Fraction) -> bool:
    return ZERO < rhs if strict else ZERO <= rhs


def _dedupe(rows):
    best = {}
    out_zero = []
    for coeffs, strict, rhs in rows:
        lead = next((c for c in coeffs if c != 0), None)
        if lead is None:
            out_zero.append((coeffs, strict, rhs))
            continue
        scale = abs(lead)
        key = tuple(c / scale for c in coeffs)
        rhs = rhs / scale
        prev = best.get(key)
        if prev is None or rhs < prev[1] or (rhs == prev[1] and strict and not prev[0]):
            best[key] = (strict, rhs)
    return [(list(k), s, r) for k, (s, r) in best.items()] + out_zero


def feasible(
    sys_: LinSystem,
    cap: int = 64,
    order: Sequence[int] | None = None,
) -> list[Fraction] | None:
    """Fourier-Motzkin feasibility; returns an exact witness point or None.

    `order` optionally fixes the variable elimination order (useful to
    cross-check that the verdict does not depend on it).
    """
    n = sys_.num_vars
    if n > cap:
        raise CapExceeded(f"linear system has {n} variables (cap {cap})")

    rows: list[tuple[list[Fraction], bool, Fraction]] = []
    eqs: list[tuple[list[Fraction], Fraction]] = []
    for c in sys_.constraints:
        if c.rel == EQ:
            eqs.append((list(c.coeffs), c.rhs))
        elif c.rel in (Comp.LE, Comp.LT):
            rows.append((list(c.coeffs), c.rel is Comp.LT, c.rhs))
        elif c.rel in (Comp.GE, Comp.GT):
            rows.append(([-x for x in c.coeffs], c.rel is Comp.GT, -c.rhs))
        else:
            raise LpError(f"unknown relation {c.rel!r}")

    # Eliminate equalities by substitution; record var = const + expr . x.
    subst: list[tuple[int, list[Fraction], Fraction]] = []
    active = list(range(n))
    while eqs:
        coeffs, rhs = eqs.pop()
        pivot = next((j for j in active if coeffs[j] != 0), None)
        if pivot is None:
            if any(c != 0 for c in coeffs):
                raise LpError("internal: equality over eliminated variables")
            if rhs != 0:
                return None
            continue
        pc = coeffs[pivot]
        expr = [(-coeffs[j] / pc if j != pivot else ZERO) for j in range(n)]
        const = rhs / pc
        subst.append((pivot, expr, const))
        active.remove(pivot)

        def substitute(row_coeffs, row_rhs, pivot=pivot, expr=expr, const=const):
            f = row_coeffs[pivot]
            if f == 0:
                return row_coeffs, row_rhs
            out = [row_coeffs[j] + f * expr[j] for j in range(n)]
            out[pivot] = ZERO
            return out, row_rhs - f * const

        eqs = [substitute(c2, r2) for c2, r2 in eqs]
        rows = [
            (sc, s2, sr)
            for (sc, sr), s2 in ((substitute(c2, r2), s2) for c2, s2, r2 in rows)
        ]

    if order is None:
        elim_order = list(active)
    else:
        elim_order = [v for v in order if v in active]
        if set(elim_order) != set(active):
            raise LpError("elimination order must cover the free variables")

    # Eliminate inequalities variable by variable, keeping the bound lists
    # for witness back-substitution.  A bound is (expr, strict, const) and
    # reads var <= const + expr . x (upper) or var >= const + expr . x.
    saved: list[tuple[int, list, list]] = []
    for var in elim_order:
        lowers, uppers, rest_rows = [], [], []
        for coeffs, strict, rhs in rows:
            a = coeffs[var]
            if a == 0:
                rest_rows.append((coeffs, strict, rhs))
                continue
            expr = [(-coeffs[j] / a if j != var else ZERO) for j in range(n)]
            bound = (expr, strict, rhs / a)
            if a > 0:
                uppers.append(bound)
            else:
                lowers.append(bound)
        new_rows = rest_rows
        for lexpr, lstrict, lconst in lowers:
            for uexpr, ustrict, uconst in uppers:
                # lconst + lexpr.x (<) var (<) uconst + uexpr.x
                coeffs = [le - ue for le, ue in zip(lexpr, uexpr)]
                new_rows.append((coeffs, lstrict or ustrict, uconst - lconst))
        rows = []
        for coeffs, strict, rhs in _dedupe(new_rows):
            if all(c == 0 for c in coeffs):
                if not _check_const_row(strict, rhs):
                    return None
            else:
                rows.append((coeffs, strict, rhs))
        saved.append((var, lowers, uppers))

    for coeffs, strict, rhs in rows:
        if any(c != 0 for c in coeffs):
            raise LpError("internal: leftover variable after elimination")
        if not _check_const_row(strict, rhs):
            return None

    # Back-substitute a witness point.
    point: list[Fraction] = [ZERO] * n
    for var, lowers, uppers in reversed(saved):
        lo = None
        for expr, strict, const in lowers:
            value = const + sum((e * point[j] for j, e in enumerate(expr)), ZERO)
            if lo is None or value > lo[0] or (value == lo[0] and strict):
                lo = (value, strict)
        hi = None
        for expr, strict, const in uppers:
            value = const + sum((e * point[j] for j, e in enumerate(expr)), ZERO)
            if hi is None or value < hi[0] or (value == hi[0] and strict):
                hi = (value, strict)
        if lo is None and hi is None:
            point[var] = ZERO
        elif lo is None:
            point[var] = hi[0] - 1 if hi[1] else hi[0]
        elif hi is None:
            point[var] = lo[0] + 1 if lo[1] else lo[0]
        elif lo[0] == hi[0]:
            if lo[1] or hi[1]:
                raise LpError("internal: empty range during back-substitution")
            point[var] = lo[0]
        else:
            point[var] = (lo[0] + hi[0]) / 2
    for var, expr, const in reversed(subst):
        point[var] = const + sum((expr[j] * point[j] for j in range(n)), ZERO)

    if not sys_.check(point):
        raise LpError("internal: witness fails re-substitution")
    return point


# ---------------------------------------------------------------------------
# Simplex
# ---------------------------------------------------------------------------


def _simplex_max(c: list[Fraction], A: list[list[Fraction]], b: list[Fraction]):
    """Maximize c.x subject to A x = b, x >= 0 (b >= 0 required).

    Two-phase dense tableau simplex with Bland's rule and a maintained
    reduced-cost row.  Returns (status, x) with status in {"optimal",
    "unbounded", "infeasible"}.
    """
    m = len(A)
    n = len(c)
    rows = [list(A[i]) + [ONE if j == i else ZERO for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    obj: list[Fraction] = []  # reduced costs z_j - c_j, then objective value

    def pivot(r: int, col: int) -> None:
        piv = rows[r][col]
        if piv != ONE:
            rows[r] = [v / piv for v in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                if f != 0:
                    rows[i] = [v - f * w for v, w in zip(rows[i], prow)]
        f = obj[col]
        if f != 0:
            obj[:] = [v - f * w for v, w in zip(obj, prow)]
        basis[r] = col

    def reset_objective(cost: list[Fraction]) -> None:
        obj.clear()
        width = len(rows[0])
        acc = [ZERO] * width
        for i in range(len(rows)):
            cb = cost[basis[i]]
            if cb != 0:
                acc = [a + cb * v for a, v in zip(acc, rows[i])]
        obj.extend(a - cj for a, cj in zip(acc[:-1], cost + [ZERO]))
        obj.append(acc[-1])

    def run(allowed: int) -> str:
        while True:
            entering = None
            for j in range(allowed):
                if obj[j] < 0 and j not in basis:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            leaving = None
            best = None
            for i in range(len(rows)):
                if rows[i][entering] > 0:
                    ratio = rows[i][-1] / rows[i][entering]
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leaving]
                    ):
                        best = ratio
                        leaving = i
            if leaving is None:
                return "unbounded"
            pivot(leaving, entering)

    total = n + m
    phase1 = [ZERO] * n + [-ONE] * m
    reset_objective(phase1)
    run(total)
    value = sum((phase1[basis[i]] * rows[i][-1] for i in range(len(rows))), ZERO)
    if value != 0:
        return "infeasible", None
    # Drive artificials out of the basis; rows that cannot pivot are redundant.
    for i in range(len(rows) - 1, -1, -1):
        if basis[i] >= n:
            col = next((j for j in range(n) if rows[i][j] != 0), None)
            if col is None:
                del rows[i]
                del basis[i]
            else:
                pivot(i, col)
    reset_objective(list(c) + [ZERO] * m)
    status = run(n)
    if status == "unbounded":
        return "unbounded", None
    x = [ZERO] * n
    for i in range(len(rows)):
        if basis[i] < n:
            x[basis[i]] = rows[i][-1]
    return "optimal", x


def simplex_feasible(sys_: LinSystem, nonneg: bool = False) -> list[Fraction] | None:
    """Feasibility with an exact witness; no variable-count cap.

    With `nonneg` the variables are taken to be nonnegative (and the
    returned witness guarantees it); otherwise each is split into two
    nonnegative parts.  Strict inequalities are enforced by maximizing a
    shared slack and requiring it positive.
    """
    n = sys_.num_vars
    ineqs = [c for c in sys_.constraints if c.rel != EQ]
    eqs = [c for c in sys_.constraints if c.rel == EQ]
    has_strict = any(c.rel in (Comp.LT, Comp.GT) for c in ineqs)
    base = n if nonneg else 2 * n
    # Columns: x (split unless nonneg), delta, slack per inequality + bound.
    cols = base + 1 + len(ineqs) + 1
    A: list[list[Fraction]] = []
    b: list[Fraction] = []

    def new_row(coeffs, delta_coef, slack_index, rhs):
        row = [ZERO] * cols
        for j, cj in enumerate(coeffs):
            row[j] = cj
            if not nonneg:
                row[n + j] = -cj
        row[base] = delta_coef
        if slack_index is not None:
            row[base + 1 + slack_index] = ONE
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        A.append(row)
        b.append(rhs)

    for c in eqs:
        new_row(c.coeffs, ZERO, None, c.rhs)
    for k, c in enumerate(ineqs):
        if c.rel in (Comp.LE, Comp.LT):
            coeffs, rhs = list(c.coeffs), c.rhs
        else:
            coeffs, rhs = [-x for x in c.coeffs], -c.rhs
        delta = ONE if c.rel.strict else ZERO
        new_row(coeffs, delta, k, rhs)
    new_row([ZERO] * n, ONE, len(ineqs), ONE)  # delta <= 1

    objective = [ZERO] * cols
    objective[base] = ONE
    status, x = _simplex_max(objective, A, b)
    if status == "infeasible":
        return None
    if status == "unbounded":
        raise LpError("internal: bounded slack objective reported unbounded")
    if has_strict and x[base] == 0:
        return None
    point = x[:n] if nonneg else [x[j] - x[n + j] for j in range(n)]
    if not sys_.check(point):
        raise LpError("internal: simplex witness fails re-substitution")
    return point


# ---------------------------------------------------------------------------
# Caratheodory support reduction
# ---------------------------------------------------------------------------


def caratheodory_reduce(
    vectors: list[tuple[Fraction, ...]],
    weights: list[Fraction],
) -> tuple[list[int], list[Fraction]]:
    """Shrink a convex combination to at most dim+1 points with the same sum.

    Given sum(w_k v_k) with w >= 0 and sum(w) = 1, returns (indices, new
    weights) preserving the weighted sum exactly.  Zero weights are dropped.
    """
    if not vectors:
        return [], []
    dim = len(vectors[0])
    idx = [k for k, w in enumerate(weights) if w > 0]
    w = {k: weights[k] for k in idx}
    while len(idx) > dim + 1:
        mu = _affine_dependency([vectors[k] for k in idx])
        if all(m <= 0 for m in mu):
            mu = [-m for m in mu]
        t = None
        for pos, k in enumerate(idx):
            if mu[pos] > 0:
                cand = w[k] / mu[pos]
                if t is None or cand < t:
                    t = cand
        for pos, k in enumerate(idx):
            w[k] = w[k] - t * mu[pos]
        idx = [k for k in idx if w[k] > 0]
    return idx, [w[k] for k in idx]


def _affine_dependency(points: list[tuple[Fraction, ...]]) -> list[Fraction]:
    """A nonzero mu with sum(mu_k p_k) = 0 and sum(mu_k) = 0; needs len > dim+1."""
    dim = len(points[0])
    count = len(points)
    m = [[points[k][d] for k in range(count)] for d in range(dim)]
    m.append([ONE] * count)
    rows = len(m)
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(count):
        pivot_row = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][col]
        m[r] = [v / pv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [v - f * vv for v, vv in zip(m[i], m[r])]
        pivots.append((r, col))
        r += 1
        if r == rows:
            break
    pivot_cols = {c for _, c in pivots}
    free = next((c for c in range(count) if c not in pivot_cols), None)
    if free is None:
        raise LpError("internal: no affine dependency among points")
    mu = [ZERO] * count
    mu[free] = ONE
    for row, col in pivots:
        mu[col] = -m[row][free]
    return mu
