import itertools
import random
from fractions import Fraction as F

from optimin import LinearProgram, solve_lp


def build(objective, maximize, constraints, bounds=None):
    return LinearProgram.build(objective, maximize, constraints, bounds)


class TestBasics:
    def test_bounded_single_variable(self):
        sol = solve_lp(build([1], True, [([1], "<=", 3)]))
        assert sol.status == "optimal"
        assert sol.point == (F(3),)
        assert sol.objective_value == F(3)

    def test_infeasible(self):
        sol = solve_lp(build([1], True, [([1], ">=", 1), ([1], "<=", 0)]))
        assert sol.status == "infeasible"

    def test_unbounded(self):
        sol = solve_lp(build([1], True, [([1], ">=", 1)]))
        assert sol.status == "unbounded"

    def test_equality_and_bounds(self):
        sol = solve_lp(
            build([2, 3], False, [([1, 1], "=", 10)], bounds=[(0, None), (0, 8)])
        )
        assert sol.status == "optimal"
        assert sol.objective_value == F(20)
        assert sol.point == (F(10), F(0))

    def test_conflicting_bounds_infeasible(self):
        sol = solve_lp(build([1], False, [], bounds=[(2, 1)]))
        assert sol.status == "infeasible"

    def test_exact_fractions_survive(self):
        # max x + y st 3x + 5y <= 1, x,y >= 0 -> vertex (1/3, 0)
        sol = solve_lp(
            build([1, 1], True, [([3, 5], "<=", 1)], bounds=[(0, None), (0, None)])
        )
        assert sol.objective_value == F(1, 3)

    def test_coin_game_guarantee_lp(self):
        # Guarantee-maximization form of the 4x2 coin-guessing game.
        cols = [(F(0), F(1), F(1, 4), F(3, 4)), (F(1), F(0), F(1, 2), F(1, 2))]
        constraints = [(list(col) + [-1], ">=", 0) for col in cols]
        constraints.append(([1, 1, 1, 1, 0], "=", 1))
        sol = solve_lp(
            build(
                [0, 0, 0, 0, 1],
                True,
                constraints,
                bounds=[(0, None)] * 4 + [(None, None)],
            )
        )
        assert sol.objective_value == F(3, 5)
        assert sol.point[:4] == (F(1, 5), F(0), F(0), F(4, 5))

    def test_degenerate_lp_terminates(self):
        # Classic cycling-prone instance; Bland's rule must terminate.
        sol = solve_lp(
            build(
                [F(-3, 4), 150, F(-1, 50), 6],
                False,
                [
                    ([F(1, 4), -60, F(-1, 25), 9], "<=", 0),
                    ([F(1, 2), -90, F(-1, 50), 3], "<=", 0),
                    ([0, 0, 1, 0], "<=", 1),
                ],
                bounds=[(0, None)] * 4,
            )
        )
        assert sol.status == "optimal"
        assert sol.objective_value == F(-1, 20)


def enumerate_optimum(objective, maximize, constraints, box):
    """Oracle: visit every basic point of the constraint system inside the box."""
    nvars = len(objective)
    rows = []
    for coeffs, rel, rhs in constraints:
        rows.append((tuple(F(c) for c in coeffs), rel, F(rhs)))
    for j in range(nvars):
        unit = tuple(F(1) if k == j else F(0) for k in range(nvars))
        rows.append((unit, ">=", F(0)))
        rows.append((unit, "<=", F(box)))

    def feasible(pt):
        for coeffs, rel, rhs in rows:
            lhs = sum(c * x for c, x in zip(coeffs, pt))
            if rel == "<=" and lhs > rhs:
                return False
            if rel == ">=" and lhs < rhs:
                return False
            if rel == "=" and lhs != rhs:
                return False
        return True

    best = None
    for active in itertools.combinations(range(len(rows)), nvars):
        matrix = [list(rows[k][0]) + [rows[k][2]] for k in active]
        pt = _solve_square(matrix, nvars)
        if pt is None or not feasible(pt):
            continue
        val = sum(c * x for c, x in zip(objective, pt))
        if best is None or (val > best if maximize else val < best):
            best = val
    return best


def _solve_square(matrix, n):
    rows = [row[:] for row in matrix]
    for col in range(n):
        pivot = next((k for k in range(col, n) if rows[k][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = F(1) / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for k in range(n):
            if k != col and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [v - f * p for v, p in zip(rows[k], rows[col])]
    return tuple(rows[k][-1] for k in range(n))


class TestAgainstEnumeration:
    def test_random_small_lps(self):
        rng = random.Random(7)
        box = 10
        agree = 0
        for _ in range(250):
            nvars = rng.randint(1, 3)
            ncons = rng.randint(1, 5)
            objective = [rng.randint(-5, 5) for _ in range(nvars)]
            maximize = rng.random() < 0.5
            constraints = [
                (
                    [rng.randint(-4, 4) for _ in range(nvars)],
                    rng.choice(["<=", ">="]),
                    rng.randint(-6, 12),
                )
                for _ in range(ncons)
            ]
            lp = build(objective, maximize, constraints, bounds=[(0, box)] * nvars)
            sol = solve_lp(lp)
            oracle = enumerate_optimum(objective, maximize, constraints, box)
            if oracle is None:
                assert sol.status == "infeasible"
            else:
                assert sol.status == "optimal"
                assert sol.objective_value == oracle
                agree += 1
        assert agree > 100  # the sample should be mostly feasible

    def test_no_basic_point_beats_the_reported_optimum(self):
        # Free variables and equalities: enumerate basic points of the raw
        # constraint system and check none improves on the solver's optimum.
        rng = random.Random(9)
        checked = 0
        for _ in range(250):
            nvars = rng.randint(1, 3)
            ncons = rng.randint(nvars, 5)
            objective = [rng.randint(-5, 5) for _ in range(nvars)]
            maximize = rng.random() < 0.5
            constraints = [
                (
                    [rng.randint(-4, 4) for _ in range(nvars)],
                    rng.choice(["<=", ">=", "="]),
                    rng.randint(-6, 6),
                )
                for _ in range(ncons)
            ]
            sol = solve_lp(build(objective, maximize, constraints))
            if sol.status != "optimal":
                continue
            checked += 1
            rows = [
                (tuple(F(c) for c in coeffs), rel, F(rhs))
                for coeffs, rel, rhs in constraints
            ]

            def feasible(pt):
                for coeffs, rel, rhs in rows:
                    lhs = sum(c * x for c, x in zip(coeffs, pt))
                    if rel == "<=" and lhs > rhs:
                        return False
                    if rel == ">=" and lhs < rhs:
                        return False
                    if rel == "=" and lhs != rhs:
                        return False
                return True

            for active in itertools.combinations(range(len(rows)), nvars):
                matrix = [list(rows[k][0]) + [rows[k][2]] for k in active]
                pt = _solve_square(matrix, nvars)
                if pt is None or not feasible(pt):
                    continue
                val = sum(c * x for c, x in zip(objective, pt))
                if maximize:
                    assert val <= sol.objective_value
                else:
                    assert val >= sol.objective_value
        assert checked > 60

    def test_solutions_satisfy_constraints_exactly(self):
        rng = random.Random(8)
        for _ in range(100):
            nvars = rng.randint(1, 3)
            constraints = [
                (
                    [rng.randint(-3, 3) for _ in range(nvars)],
                    rng.choice(["<=", ">=", "="]),
                    rng.randint(-4, 8),
                )
                for _ in range(rng.randint(1, 4))
            ]
            lp = build(
                [rng.randint(-5, 5) for _ in range(nvars)],
                rng.random() < 0.5,
                constraints,
                bounds=[(0, 10)] * nvars,
            )
            sol = solve_lp(lp)
            if sol.status != "optimal":
                continue
            for row in lp.constraints:
                assert row.holds_at(sol.point)  # exact, no epsilon anywhere
