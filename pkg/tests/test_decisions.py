import random
from fractions import Fraction as F

import pytest

from optimin import (
    ConstraintError,
    DecisionProblem,
    DomainError,
    OptimismConstraint,
    decision_value,
    gilboa_reduction_check,
    optimin_acts,
)


def two_by_two():
    # acts a1, a2 against states s1, s2 with the DM table ((4,0),(1,1))
    return DecisionProblem(
        ("act1", "act2"),
        ("s1", "s2"),
        {
            ("act1", "s1"): 4, ("act1", "s2"): 0,
            ("act2", "s1"): 1, ("act2", "s2"): 1,
        },
    )


def mortgage():
    # Committing makes the bad state feel impossible; staying out keeps it live.
    problem = DecisionProblem(
        ("buy", "rent"),
        ("keep_job", "fired"),
        {
            ("buy", "keep_job"): 10, ("buy", "fired"): -10,
            ("rent", "keep_job"): 2, ("rent", "fired"): 1,
        },
    )
    act_dependent = OptimismConstraint(
        {
            ("buy", "keep_job"): ("keep_job",),
            ("buy", "fired"): ("keep_job",),
            ("rent", "keep_job"): ("keep_job", "fired"),
            ("rent", "fired"): ("keep_job", "fired"),
        }
    )
    return problem, act_dependent


class TestDecisionValue:
    def test_all_states_gives_security_level(self):
        problem = two_by_two()
        oc = OptimismConstraint.constant(problem)
        assert decision_value(problem, oc, ("act1", "s1")).dm == F(0)
        assert decision_value(problem, oc, ("act2", "s1")).dm == F(1)

    def test_singleton_constraint_reads_the_table(self):
        problem = two_by_two()
        oc = OptimismConstraint.constant(problem, states=("s1",))
        assert decision_value(problem, oc, ("act1", "s2")).dm == F(4)

    def test_direct_min_example(self):
        problem = two_by_two()
        oc = OptimismConstraint.constant(problem)
        values = {a: decision_value(problem, oc, (a, "s1")).dm for a in problem.acts}
        assert values == {"act1": F(0), "act2": F(1)}

    def test_infeasible_profile_rejected(self):
        problem = DecisionProblem(
            ("a1", "a2"),
            ("s1", "s2"),
            {("a1", "s1"): 1, ("a2", "s1"): 2, ("a2", "s2"): 3},
            feasible_states={"a1": ("s1",), "a2": ("s1", "s2")},
        )
        oc = OptimismConstraint.constant(problem)
        with pytest.raises(DomainError):
            decision_value(problem, oc, ("a1", "s2"))

    def test_empty_constraint_rejected(self):
        problem = two_by_two()
        oc = OptimismConstraint({("act1", "s1"): ()})
        with pytest.raises(ConstraintError):
            decision_value(problem, oc, ("act1", "s1"))

    def test_nature_value_under_antagonism(self):
        problem = DecisionProblem(
            ("a1", "a2"),
            ("s1", "s2"),
            {("a1", "s1"): 4, ("a1", "s2"): 0, ("a2", "s1"): 1, ("a2", "s2"): 1},
            antagonist=True,
        )
        oc = OptimismConstraint.constant(problem)
        value = decision_value(problem, oc, ("a1", "s1"))
        # Nature's worst case over the DM's acts at s1: min(-4, -1) = -4
        assert value.nature == F(-4)


class TestOptiminActs:
    def test_maximin_act_with_full_constraint(self):
        problem = two_by_two()
        oc = OptimismConstraint.constant(problem)
        result = optimin_acts(problem, oc)
        assert result.ranking == "dm-only"
        assert result.acts == ("act2",)
        assert set(result.profiles) == {("act2", "s1"), ("act2", "s2")}

    def test_singleton_constraint_switches_to_best_case_act(self):
        problem = two_by_two()
        oc = OptimismConstraint.constant(problem, states=("s1",))
        result = optimin_acts(problem, oc)
        assert result.acts == ("act1",)
        assert all(v.dm == F(4) for v in result.values)

    def test_mortgage_reversal(self):
        problem, act_dependent = mortgage()
        cautious = optimin_acts(problem, OptimismConstraint.constant(problem))
        assert cautious.acts == ("rent",)
        confident = optimin_acts(problem, act_dependent)
        assert confident.acts == ("buy",)

    def test_antagonist_pareto_ranking(self):
        problem = DecisionProblem(
            ("a1", "a2"),
            ("s1", "s2"),
            {("a1", "s1"): 4, ("a1", "s2"): 0, ("a2", "s1"): 1, ("a2", "s2"): 1},
            antagonist=True,
        )
        result = optimin_acts(problem, OptimismConstraint.constant(problem))
        assert result.ranking == "pareto"
        assert result.profiles  # never empty


class TestInvariants:
    def test_shrinking_constraint_never_lowers_value(self):
        rng = random.Random(71)
        for _ in range(100):
            acts = ("a1", "a2")
            states = ("s1", "s2", "s3")
            table = {
                (a, s): rng.randint(-5, 5) for a in acts for s in states
            }
            problem = DecisionProblem(acts, states, table)
            wide = OptimismConstraint.constant(problem)
            subset = tuple(s for s in states if rng.random() < 0.7) or ("s1",)
            narrow = OptimismConstraint.constant(problem, states=subset)
            for profile in problem.feasible_pairs():
                v_wide = decision_value(problem, wide, profile).dm
                v_narrow = decision_value(problem, narrow, profile).dm
                assert v_narrow >= v_wide

    def test_infeasible_states_never_affect_value(self):
        problem = DecisionProblem(
            ("a1", "a2"),
            ("good", "bad"),
            {("a1", "good"): 1, ("a2", "good"): 5, ("a2", "bad"): -9},
            feasible_states={"a1": ("good",), "a2": ("good", "bad")},
        )
        oc = OptimismConstraint.constant(problem)
        # "bad" is infeasible under a1, so it cannot drag a1's value down.
        assert decision_value(problem, oc, ("a1", "good")).dm == F(1)

    def test_full_constraint_equals_two_player_security(self):
        rng = random.Random(72)
        from optimin import NormalFormGame, maximin_profile

        for _ in range(60):
            acts, states = ("a1", "a2"), ("s1", "s2")
            table = {(a, s): rng.randint(-5, 5) for a in acts for s in states}
            problem = DecisionProblem(acts, states, table)
            oc = OptimismConstraint.constant(problem)
            result = optimin_acts(problem, oc)
            game = NormalFormGame(
                ("dm", "nature"),
                (acts, states),
                [[(table[(a, s)], 0) for s in states] for a in acts],
            )
            dm = maximin_profile(game)[0]
            assert set(result.acts) == {acts[s] for s in dm.strategies}


class TestReductionCheck:
    def test_constant_full_constraint_reduces_to_maximin(self):
        problem = two_by_two()
        report = gilboa_reduction_check(problem, OptimismConstraint.constant(problem))
        assert report.hypotheses_hold
        assert report.verified is True

    def test_constant_singleton_reduces_to_table_lookup(self):
        problem = two_by_two()
        oc = OptimismConstraint.constant(problem, states=("s1",))
        report = gilboa_reduction_check(problem, oc)
        assert report.hypotheses_hold and report.verified is True

    def test_act_dependent_constraint_reports_violation(self):
        problem, act_dependent = mortgage()
        report = gilboa_reduction_check(problem, act_dependent)
        assert not report.constant_constraint
        assert not report.hypotheses_hold
        assert report.verified is None

    def test_notes_mention_vacuous_convexity(self):
        problem = two_by_two()
        report = gilboa_reduction_check(problem, OptimismConstraint.constant(problem))
        assert any("vacuous" in note for note in report.notes)
