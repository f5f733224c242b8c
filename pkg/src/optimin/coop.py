"""Transferable-utility cooperative games.

Coalitions are bitmasks over players 0..n-1.  The worst-case value of an
allocation charges the complement of any profitably deviating coalition an
equal share of the shortfall it is left with; allocations whose value vectors
are Pareto optimal form the solution set, searched on an integer lattice of
imputations.  Core membership, the Shapley value, and the nucleolus are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, ResourceLimitError
from .games import ValueVector
from .lp import LinearProgram, solve_lp
from .noncoop import pareto_filter
from .rational import to_fraction

ZERO = Fraction(0)

Allocation = tuple[Fraction, ...]

SHAPLEY_MAX_PLAYERS = 12
NUCLEOLUS_MAX_PLAYERS = 8


class TUGame:
    """Characteristic function on all nonempty coalitions of n players.

    `worth[mask]` is the coalition's transferable worth; the empty coalition
    is implicitly 0.  Construction verifies completeness and flags (but does
    not reject) games whose grand coalition fails to cover some partition.
    """

    __slots__ = ("n", "_worth", "cohesive")

    def __init__(self, n: int, worth: dict[int, object]) -> None:
        if n < 1:
            raise ValueError("a TU game needs at least one player")
        self.n = n
        full = (1 << n) - 1
        table: list[Fraction] = [ZERO] * (full + 1)
        seen = set()
        for mask, value in worth.items():
            if not isinstance(mask, int) or not 1 <= mask <= full:
                raise ValueError(f"coalition mask {mask!r} out of range")
            table[mask] = to_fraction(value)
            seen.add(mask)
        missing = [m for m in range(1, full + 1) if m not in seen]
        if missing:
            raise ValueError(
                f"worth missing for {len(missing)} coalitions, e.g. mask {missing[0]}"
            )
        self._worth = tuple(table)
        self.cohesive = self._check_cohesive()

    def _check_cohesive(self) -> bool:
        # Best partition value at each coalition via subset DP; cohesive iff
        # no partition of the grand coalition beats its worth.
        full = (1 << self.n) - 1
        best = list(self._worth)
        for mask in range(1, full + 1):
            sub = (mask - 1) & mask
            while sub:
                if best[sub] + best[mask ^ sub] > best[mask]:
                    best[mask] = best[sub] + best[mask ^ sub]
                sub = (sub - 1) & mask
        return best[full] == self._worth[full]

    def worth(self, mask: int) -> Fraction:
        if not 0 <= mask < (1 << self.n):
            raise ValueError(f"coalition mask {mask!r} out of range")
        return self._worth[mask]

    @property
    def grand_coalition(self) -> int:
        return (1 << self.n) - 1

    def singletons(self) -> list[Fraction]:
        return [self._worth[1 << i] for i in range(self.n)]

    def proper_coalitions(self) -> list[int]:
        return list(range(1, self.grand_coalition))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TUGame):
            return NotImplemented
        return self.n == other.n and self._worth == other._worth

    def __repr__(self) -> str:
        return f"TUGame(n={self.n}, u(N)={self._worth[-1]})"


def coalition_members(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def coalition_sum(x: Sequence[Fraction], mask: int) -> Fraction:
    total = ZERO
    i = 0
    while mask:
        if mask & 1:
            total += x[i]
        mask >>= 1
        i += 1
    return total


def as_allocation(game: TUGame, x: Sequence) -> Allocation:
    vec = tuple(to_fraction(v) for v in x)
    if len(vec) != game.n:
        raise DomainError(f"allocation has {len(vec)} entries for {game.n} players")
    return vec


def is_feasible(game: TUGame, x: Sequence[Fraction]) -> bool:
    return coalition_sum(x, game.grand_coalition) <= game.worth(game.grand_coalition)


def is_imputation(game: TUGame, x: Sequence[Fraction]) -> bool:
    if coalition_sum(x, game.grand_coalition) != game.worth(game.grand_coalition):
        return False
    return all(x[i] >= game.worth(1 << i) for i in range(game.n))


@dataclass(frozen=True)
class DeviationSet:
    """Coalitions excluding `player` that profit by breaking away from `allocation`."""

    player: int
    allocation: Allocation
    coalitions: tuple[int, ...]

    def __bool__(self) -> bool:
        return bool(self.coalitions)


def dominating_coalitions(game: TUGame, x: Sequence, excluding: int) -> DeviationSet:
    """All S not containing `excluding` with x(S) < u(S).

    A coalition can hand every member strictly more than x exactly when its
    worth exceeds what x gives it in total, so the strict-sum test is the
    whole domination condition.
    """
    x = as_allocation(game, x)
    if not is_feasible(game, x):
        raise DomainError(f"allocation {x} exceeds the grand coalition worth")
    if not 0 <= excluding < game.n:
        raise DomainError(f"no player {excluding} in a {game.n}-player game")
    found = []
    for mask in game.proper_coalitions():
        if mask >> excluding & 1:
            continue
        if coalition_sum(x, mask) < game.worth(mask):
            found.append(mask)
    return DeviationSet(excluding, x, tuple(found))


def coop_value(game: TUGame, x: Sequence) -> ValueVector:
    """Worst-case payoffs: deviators leave, the rest split the shortfall equally."""
    x = as_allocation(game, x)
    if not is_feasible(game, x):
        raise DomainError(f"allocation {x} exceeds the grand coalition worth")
    full = game.grand_coalition
    values = []
    for i in range(game.n):
        best = x[i]
        for mask in dominating_coalitions(game, x, i).coalitions:
            rest = full ^ mask
            shortfall = coalition_sum(x, rest) - game.worth(rest)
            candidate = x[i] - Fraction(shortfall, bin(rest).count("1"))
            if candidate < best:
                best = candidate
        values.append(best)
    return tuple(values)


def imputation_grid(game: TUGame, step, floors: Sequence | None = None) -> list[Allocation]:
    """Efficient allocations on the `step` lattice at or above the floors.

    Default floors are the individual worths (the imputation set); passing
    lower floors widens the search domain below individual rationality.
    """
    step = to_fraction(step)
    if step <= 0:
        raise DomainError(f"grid step must be positive, got {step}")
    total = game.worth(game.grand_coalition)
    if floors is None:
        lows = game.singletons()
    else:
        lows = [to_fraction(v) for v in floors]
        if len(lows) != game.n:
            raise DomainError(f"need one floor per player, got {len(lows)}")
    if sum(lows, ZERO) > total:
        raise DomainError(
            "imputation set is empty: individual worths exceed the grand coalition"
        )
    if (total / step).denominator != 1:
        return []
    # Minimal multiples of `step` at or above each individual worth.
    min_units = [-((-low) // step) for low in lows]
    total_units = total / step
    points: list[Allocation] = []

    def rec(i: int, remaining: Fraction, acc: list[Fraction]) -> None:
        if i == game.n - 1:
            if remaining >= min_units[i]:
                points.append(tuple((u * step) for u in acc + [remaining]))
            return
        tail_min = sum(min_units[i + 1 :])
        u = min_units[i]
        while u <= remaining - tail_min:
            rec(i + 1, remaining - u, acc + [u])
            u += 1

    rec(0, total_units, [])
    return points


@dataclass(frozen=True)
class CoopOptimin:
    """Grid search result; `kind` flags that the lattice is an approximation."""

    step: Fraction
    entries: tuple[tuple[Allocation, ValueVector], ...]
    kind: str = field(default="grid-approximate")

    @property
    def allocations(self) -> tuple[Allocation, ...]:
        return tuple(x for x, _ in self.entries)


def optimin_coop(game: TUGame, step, floors: Sequence | None = None) -> CoopOptimin:
    """Pareto-filter the worst-case values over the imputation lattice."""
    step = to_fraction(step)
    points = imputation_grid(game, step, floors)
    if not points:
        return CoopOptimin(step, ())
    entries = [(x, coop_value(game, x)) for x in points]
    kept = pareto_filter(entries, key=lambda e: e[1])
    return CoopOptimin(step, tuple(kept))


def matches_characterization(
    game: TUGame, step, predicate: Callable[[Allocation], bool]
) -> bool:
    """Exact check that the grid solution set is the lattice cut of a closed form.

    True iff every grid survivor satisfies `predicate` and every lattice
    imputation satisfying it survives (membership is exact, not approximate).
    """
    result = optimin_coop(game, step)
    survivors = set(result.allocations)
    expected = {x for x in imputation_grid(game, step) if predicate(x)}
    return survivors == expected


@dataclass(frozen=True)
class CoreResult:
    empty: bool
    witness: Allocation | None
    lp: LinearProgram

    def __bool__(self) -> bool:
        return not self.empty


def core(game: TUGame) -> CoreResult:
    """LP feasibility of efficiency plus every coalition constraint."""
    n = game.n
    constraints = [([1] * n, "=", game.worth(game.grand_coalition))]
    for mask in game.proper_coalitions():
        coeffs = [1 if mask >> i & 1 else 0 for i in range(n)]
        constraints.append((coeffs, ">=", game.worth(mask)))
    lp = LinearProgram.build([0] * n, False, constraints)
    sol = solve_lp(lp)
    if sol.status == "infeasible":
        return CoreResult(True, None, lp)
    if not sol.is_optimal:
        raise AssertionError(f"core LP unexpectedly {sol.status}")
    return CoreResult(False, tuple(sol.point), lp)


def shapley(game: TUGame) -> Allocation:
    """Average marginal contribution over all player orderings, exact.

    Computed with the usual coalition weights |S|!(n-|S|-1)!/n!, which is the
    same average without walking all n! orders.
    """
    n = game.n
    if n > SHAPLEY_MAX_PLAYERS:
        raise ResourceLimitError(
            f"shapley supports up to {SHAPLEY_MAX_PLAYERS} players, got {n}"
        )
    fact = [math.factorial(k) for k in range(n + 1)]
    denom = fact[n]
    out = [ZERO] * n
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size == n:
            continue
        weight = Fraction(fact[size] * fact[n - size - 1], denom)
        base = game.worth(mask) if mask else ZERO
        for i in range(n):
            if mask >> i & 1:
                continue
            out[i] += weight * (game.worth(mask | (1 << i)) - base)
    return tuple(out)


def nucleolus(game: TUGame) -> Allocation:
    """Lexicographically minimize sorted coalition excesses over imputations.

    The usual sequential-LP scheme: minimize the maximum excess, pin the
    coalitions whose excess is maximal in every optimum, and recurse until
    the pinned equalities determine the allocation.
    """
    n = game.n
    if n > NUCLEOLUS_MAX_PLAYERS:
        raise ResourceLimitError(
            f"nucleolus supports up to {NUCLEOLUS_MAX_PLAYERS} players, got {n}"
        )
    total = game.worth(game.grand_coalition)
    lows = game.singletons()
    if sum(lows, ZERO) > total:
        raise DomainError("imputation set is empty; the nucleolus is undefined")
    if n == 1:
        return (total,)

    free = game.proper_coalitions()
    pinned: list[tuple[int, Fraction]] = []  # (mask, excess held at)
    # Individual rationality lives in the variable bounds, which keeps the
    # tableaus small; eps is the only genuinely free variable.
    x_bounds = [(lows[i], None) for i in range(n)]

    def mask_coeffs(mask: int, extra: int = 0) -> list[Fraction]:
        return [Fraction(1) if mask >> i & 1 else ZERO for i in range(n)] + [ZERO] * extra

    def base_constraints(with_eps: bool, cap: Fraction | None = None):
        extra = 1 if with_eps else 0
        cons = [(mask_coeffs(game.grand_coalition, extra), "=", total)]
        for mask, level in pinned:
            cons.append((mask_coeffs(mask, extra), "=", game.worth(mask) - level))
        for mask in free:
            # excess u(S) - x(S) <= eps (or <= cap when eps is fixed)
            coeffs = mask_coeffs(mask, extra)
            if with_eps:
                coeffs[n] = Fraction(1)
                cons.append((coeffs, ">=", game.worth(mask)))
            else:
                cons.append((coeffs, ">=", game.worth(mask) - cap))
        return cons

    while free:
        lp = LinearProgram.build(
            objective=[0] * n + [1],
            maximize=False,
            constraints=base_constraints(with_eps=True),
            bounds=x_bounds + [(None, None)],
        )
        sol = solve_lp(lp)
        if not sol.is_optimal:
            raise AssertionError(f"nucleolus LP unexpectedly {sol.status}")
        eps = sol.objective_value

        at_optimum = tuple(sol.point[:n])
        newly = []
        for mask in free:
            # Only coalitions tight at the found optimum can be tight at every
            # optimum; for those, probe whether the excess can still drop.
            if game.worth(mask) - coalition_sum(at_optimum, mask) < eps:
                continue
            probe = LinearProgram.build(
                objective=mask_coeffs(mask),
                maximize=True,
                constraints=base_constraints(with_eps=False, cap=eps),
                bounds=x_bounds,
            )
            best = solve_lp(probe)
            if not best.is_optimal:
                raise AssertionError(f"nucleolus probe unexpectedly {best.status}")
            if game.worth(mask) - best.objective_value == eps:
                newly.append(mask)
        if not newly:
            raise AssertionError("no coalition tight at the optimum; solver bug")
        for mask in newly:
            pinned.append((mask, eps))
            free.remove(mask)

        point = _pinned_solution(game, pinned)
        if point is not None:
            return point

    point = _pinned_solution(game, pinned)
    if point is None:
        raise AssertionError("nucleolus system never became determined")
    return point


def _pinned_solution(game: TUGame, pinned) -> Allocation | None:
    """Solve the pinned equality system; None while it is underdetermined."""
    n = game.n
    rows = [[Fraction(1)] * n + [game.worth(game.grand_coalition)]]
    for mask, level in pinned:
        rows.append(
            [Fraction(1) if mask >> i & 1 else ZERO for i in range(n)]
            + [game.worth(mask) - level]
        )
    # Gauss-Jordan over exact rationals.
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                factor = rows[k][col]
                rows[k] = [v - factor * p for v, p in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    if len(pivots) < n:
        return None
    solution = [ZERO] * n
    for k, col in enumerate(pivots):
        solution[col] = rows[k][-1]
    return tuple(solution)
