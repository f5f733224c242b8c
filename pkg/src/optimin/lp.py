"""Exact-rational linear programming via two-phase simplex with Bland's rule.

Everything is a `Fraction`; there is no epsilon anywhere.  Bland's rule
(always pivot on the lowest eligible index) makes the method cycling-proof,
and degenerate ratio ties are broken by the lowest basic-variable index, so
the returned vertex is deterministic.  Problem sizes here are desk scale, so
a dense tableau is plenty.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rational import to_fraction

ZERO = Fraction(0)
ONE = Fraction(1)

LESS_EQUAL = "<="
EQUAL = "="
GREATER_EQUAL = ">="
_RELATIONS = (LESS_EQUAL, EQUAL, GREATER_EQUAL)


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def holds_at(self, point: Sequence[Fraction]) -> bool:
        lhs = sum((c * x for c, x in zip(self.coefficients, point)), ZERO)
        if self.relation == LESS_EQUAL:
            return lhs <= self.rhs
        if self.relation == GREATER_EQUAL:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """min/max c.x subject to linear constraints and optional variable bounds.

    Bounds default to free variables; pass ``(0, None)`` for nonnegativity.
    """

    objective: tuple[Fraction, ...]
    maximize: bool
    constraints: tuple[Constraint, ...]
    bounds: tuple[tuple[Fraction | None, Fraction | None], ...]

    @classmethod
    def build(cls, objective, maximize, constraints, bounds=None) -> "LinearProgram":
        obj = tuple(to_fraction(c) for c in objective)
        if not obj:
            raise ValueError("an LP needs at least one variable")
        rows = []
        for coeffs, rel, rhs in constraints:
            coeffs = tuple(to_fraction(c) for c in coeffs)
            if len(coeffs) != len(obj):
                raise ValueError(
                    f"constraint has {len(coeffs)} coefficients, expected {len(obj)}"
                )
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
            rows.append(Constraint(coeffs, rel, to_fraction(rhs)))
        if bounds is None:
            bounds = ((None, None),) * len(obj)
        else:
            bounds = tuple(
                (
                    None if lo is None else to_fraction(lo),
                    None if hi is None else to_fraction(hi),
                )
                for lo, hi in bounds
            )
            if len(bounds) != len(obj):
                raise ValueError("one bound pair per variable required")
        return cls(obj, bool(maximize), tuple(rows), bounds)


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    point: tuple[Fraction, ...] | None = None
    objective_value: Fraction | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


class _Infeasible(Exception):
    pass


class _Unbounded(Exception):
    pass


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Solve exactly; the returned point is re-verified against every constraint."""
    try:
        point = _solve(lp)
    except _Infeasible:
        return LPSolution("infeasible")
    except _Unbounded:
        return LPSolution("unbounded")
    value = sum((c * x for c, x in zip(lp.objective, point)), ZERO)
    _verify(lp, point)
    return LPSolution("optimal", tuple(point), value)


def _verify(lp: LinearProgram, point: Sequence[Fraction]) -> None:
    for k, row in enumerate(lp.constraints):
        if not row.holds_at(point):
            raise AssertionError(f"solver bug: constraint {k} violated at {point}")
    for j, (lo, hi) in enumerate(lp.bounds):
        if lo is not None and point[j] < lo:
            raise AssertionError(f"solver bug: lower bound of variable {j} violated")
        if hi is not None and point[j] > hi:
            raise AssertionError(f"solver bug: upper bound of variable {j} violated")


def _solve(lp: LinearProgram) -> list[Fraction]:
    n_orig = len(lp.objective)

    # Rewrite onto nonnegative internal variables:
    #   lb only      x = lb + y
    #   ub only      x = ub - y
    #   both         x = lb + y plus a row y <= ub - lb
    #   free         x = y+ - y-
    # recover[j] = (sign, offset, column) with x_j = sign*y_col + offset, plus
    # an optional negative column for the free split.
    columns: list[tuple[int, Fraction, int, int | None]] = []
    n_internal = 0
    extra_rows: list[tuple[dict[int, Fraction], str, Fraction]] = []
    for j, (lo, hi) in enumerate(lp.bounds):
        if lo is not None and hi is not None and lo > hi:
            raise _Infeasible
        if lo is not None:
            columns.append((1, lo, n_internal, None))
            if hi is not None:
                extra_rows.append(({n_internal: ONE}, LESS_EQUAL, hi - lo))
            n_internal += 1
        elif hi is not None:
            columns.append((-1, hi, n_internal, None))
            n_internal += 1
        else:
            columns.append((1, ZERO, n_internal, n_internal + 1))
            n_internal += 2

    def expand(coeffs: Sequence[Fraction]) -> tuple[list[Fraction], Fraction]:
        """Rewrite sum c_j x_j as sum c'_k y_k + const."""
        row = [ZERO] * n_internal
        const = ZERO
        for j, c in enumerate(coeffs):
            if c == 0:
                continue
            sign, offset, col, neg = columns[j]
            row[col] += c * sign
            if neg is not None:
                row[neg] -= c
            const += c * offset
        return row, const

    rows: list[list[Fraction]] = []
    rels: list[str] = []
    rhs: list[Fraction] = []
    for con in lp.constraints:
        coeffs, const = expand(con.coefficients)
        rows.append(coeffs)
        rels.append(con.relation)
        rhs.append(con.rhs - const)
    for sparse, rel, b in extra_rows:
        row = [ZERO] * n_internal
        for col, c in sparse.items():
            row[col] = c
        rows.append(row)
        rels.append(rel)
        rhs.append(b)

    obj_row, obj_const = expand(lp.objective)
    if lp.maximize:
        obj_row = [-c for c in obj_row]

    y = _simplex(rows, rels, rhs, obj_row)

    point = []
    for sign, offset, col, neg in columns:
        val = y[col] if neg is None else y[col] - y[neg]
        point.append(sign * val + offset)
    return point


def _simplex(rows, rels, rhs, cost) -> list[Fraction]:
    """Two-phase tableau simplex over y >= 0; returns an optimal y or raises."""
    m = len(rows)
    n = len(cost)

    # Equality form with slacks, rhs made nonnegative.  A <= row that kept its
    # sign provides its slack as a ready-made basic variable; only the other
    # rows need artificials in phase 1.
    tableau: list[list[Fraction]] = []
    n_slack = sum(1 for r in rels if r != EQUAL)
    total = n + n_slack
    basis: list[int] = []
    needs_artificial: list[int] = []
    slack_at = 0
    for r in range(m):
        row = list(rows[r]) + [ZERO] * n_slack + [rhs[r]]
        slack_col = None
        if rels[r] == LESS_EQUAL:
            slack_col = n + slack_at
            row[slack_col] = ONE
            slack_at += 1
        elif rels[r] == GREATER_EQUAL:
            slack_col = n + slack_at
            row[slack_col] = -ONE
            slack_at += 1
        if row[-1] < 0:
            row = [-c for c in row]
        if slack_col is not None and row[slack_col] == ONE:
            basis.append(slack_col)
        else:
            basis.append(-1)  # placeholder, resolved below
            needs_artificial.append(r)
        tableau.append(row)

    art_start = total
    if needs_artificial:
        for r in range(m):
            pad = [ZERO] * len(needs_artificial)
            tableau[r] = tableau[r][:-1] + pad + [tableau[r][-1]]
        for k, r in enumerate(needs_artificial):
            tableau[r][art_start + k] = ONE
            basis[r] = art_start + k
        width = art_start + len(needs_artificial)

        # Reduced costs of min(sum of artificials); the last entry tracks
        # minus the current objective value.
        phase1 = [ZERO] * (width + 1)
        for r in needs_artificial:
            for k in range(width + 1):
                phase1[k] -= tableau[r][k]
        for k in range(art_start, width):
            phase1[k] = ZERO

        _pivot_until_optimal(tableau, basis, phase1, limit=art_start)
        if phase1[-1] != 0:
            raise _Infeasible

        # Drive leftover artificials out of the basis; a zero row is redundant.
        drop_rows = []
        for r in range(m):
            if basis[r] >= art_start:
                col = next(
                    (k for k in range(art_start) if tableau[r][k] != 0), None
                )
                if col is None:
                    drop_rows.append(r)
                else:
                    _pivot(tableau, basis, r, col)
        for r in sorted(drop_rows, reverse=True):
            del tableau[r]
            del basis[r]
        for row in tableau:
            del row[art_start:-1]

    # Phase 2 on the original cost.
    cost_row = list(cost) + [ZERO] * (total - n) + [ZERO]
    for r, b in enumerate(basis):
        if cost_row[b] != 0:
            factor = cost_row[b]
            for k in range(total + 1):
                cost_row[k] -= factor * tableau[r][k]
    _pivot_until_optimal(tableau, basis, cost_row, limit=total)

    y = [ZERO] * total
    for r, b in enumerate(basis):
        y[b] = tableau[r][-1]
    return y[:n]


def _pivot_until_optimal(tableau, basis, cost_row, limit) -> None:
    while True:
        # Bland: entering column = lowest index with a negative reduced cost.
        enter = next((k for k in range(limit) if cost_row[k] < 0), None)
        if enter is None:
            return
        leave = None
        best = None
        for r, row in enumerate(tableau):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[r] < basis[leave])
                ):
                    best = ratio
                    leave = r
        if leave is None:
            raise _Unbounded
        _pivot(tableau, basis, leave, enter)
        factor = cost_row[enter]
        if factor != 0:
            pivot_row = tableau[leave]
            for k in range(len(cost_row)):
                cost_row[k] -= factor * pivot_row[k]


def _pivot(tableau, basis, r, c) -> None:
    pivot_row = tableau[r]
    inv = ONE / pivot_row[c]
    if inv != 1:
        tableau[r] = pivot_row = [v * inv for v in pivot_row]
    for rr, row in enumerate(tableau):
        if rr == r:
            continue
        factor = row[c]
        if factor != 0:
            tableau[rr] = [v - factor * p for v, p in zip(row, pivot_row)]
    basis[r] = c
