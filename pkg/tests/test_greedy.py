import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agasp import (
    INFINITE,
    DomainError,
    Instance,
    approx_single_infcopy,
    count_active,
    eliminate_infinite_dec,
    is_individually_rational,
    oracle_max_ir,
    solve_inc_few_classes,
    solve_kcopy_dec,
    solve_max_ir_fixed_p,
    solve_simple_plus_kcopy_dec,
    solve_single_simple,
)
from agasp.greedy import kcopy_groups

from strategies import instances, shaped, single_simple


def dec(us, k=1):
    """One decreasing class with tolerances ``us`` and ``k`` copies."""
    return Instance.from_projections([[set(range(1, u + 1))] for u in us], copies=[k])


class TestSingleSimple:
    def test_example(self):
        report = solve_single_simple(Instance.from_projections([[{1}], [{2}], [{2}]]))
        assert report.value == 2
        assert report.assignment.groups() == {(0, 0): (1, 2)}
        assert report.algorithm == "prop2-greedy"

    def test_empty(self):
        assert solve_single_simple(Instance.from_projections([[set()]] * 3)).value == 0

    def test_everyone_everything(self):
        inst = Instance.from_projections([[{1, 2, 3}]] * 3)
        assert solve_single_simple(inst).value == 3

    def test_lowest_indices_chosen(self):
        inst = Instance.from_projections([[{2}], [{2}], [{2}]])
        assert solve_single_simple(inst).assignment.groups() == {(0, 0): (0, 1)}

    def test_wrong_shape(self):
        with pytest.raises(DomainError):
            solve_single_simple(dec([1, 1], k=2))

    @settings(max_examples=150, deadline=None)
    @given(single_simple())
    def test_matches_oracle(self, inst):
        assert solve_single_simple(inst).value == oracle_max_ir(inst).value


class TestKCopyDec:
    def test_example(self):
        report = solve_kcopy_dec(dec([3, 3, 2, 1], k=2))
        assert report.value == 3
        assert report.assignment.groups() == {(0, 0): (0, 1), (0, 1): (2,)}
        assert oracle_max_ir(dec([3, 3, 2, 1], k=2)).value == 3

    def test_singletons(self):
        assert solve_kcopy_dec(dec([1, 1, 1], k=3)).value == 3

    def test_zero_tolerance(self):
        inst = Instance.from_projections([[set()], [set()]], copies=[2])
        assert solve_kcopy_dec(inst).value == 0

    def test_not_dec(self):
        with pytest.raises(DomainError):
            solve_kcopy_dec(Instance.from_projections([[{2}], [{2}]], copies=[2]))

    def test_group_helper(self):
        assert kcopy_groups({0: 1, 1: 3, 2: 3, 3: 2}, 2) == [(1, 2), (3,)]

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.integers(0, 6), min_size=1, max_size=6), st.integers(1, 4))
    def test_matches_oracle(self, us, k):
        us = [min(u, len(us)) for u in us]
        inst = dec(us, k)
        report = solve_kcopy_dec(inst)
        assert report.value == oracle_max_ir(inst).value
        sizes = [len(g) for _, g in sorted(report.assignment.groups().items())]
        assert sizes == sorted(sizes, reverse=True)


class TestSimplePlusKCopy:
    def test_two_branch_example(self):
        # class 0 has u = (1, 1) and one copy; class 1 accepts the pair
        inst = Instance.from_projections([[{1}, {1, 2}], [{1}, {1, 2}]], copies=[1, 1])
        report = solve_simple_plus_kcopy_dec(inst)
        assert report.value == 2
        assert len(report.assignment.groups()) == 1

    def test_non_dec_simple_class_rejected(self):
        inst = Instance.from_projections([[{1}, {2}], [{1}, {2}]], copies=[1, 1])
        with pytest.raises(DomainError):
            solve_simple_plus_kcopy_dec(inst)

    def test_no_help_from_simple(self):
        a = [{1, 2}, {1, 2}, {1}]
        inst = Instance.create([2, 1], [[(0, k) for k in s] for s in a])
        base = solve_kcopy_dec(Instance.from_projections([[s] for s in a], copies=[2]))
        assert solve_simple_plus_kcopy_dec(inst).value == base.value

    def test_wrong_shape(self):
        with pytest.raises(DomainError):
            solve_simple_plus_kcopy_dec(dec([1, 2]))

    @settings(max_examples=150, deadline=None)
    @given(shaped("DEC", max_agents=6, max_classes=2, copies=(1, 2, 3)))
    def test_matches_oracle(self, inst):
        if inst.num_classes != 2 or 1 not in inst.copies:
            return
        assert solve_simple_plus_kcopy_dec(inst).value == oracle_max_ir(inst).value


class TestIncFewClasses:
    def test_collapse(self):
        inst = Instance.from_projections([[{1, 2, 3}]] * 3, copies=[5])
        report = solve_inc_few_classes(inst)
        assert report.value == 3
        assert len(report.assignment.groups()) == 1

    def test_all_simple_equals_flow(self):
        inst = Instance.from_projections([[{2, 3}, {3}], [{3}, {1, 2, 3}], [{2, 3}, set()]])
        assert solve_inc_few_classes(inst).value == solve_max_ir_fixed_p(inst).value

    def test_merged_classes(self):
        # classes 0 and 2 are equivalent and merge into one class with two copies
        votes = [[(0, 2), (0, 3), (2, 2), (2, 3)], [(0, 3), (2, 3), (1, 3)], [(1, 2), (1, 3)]]
        inst = Instance.create([1, 1, 1], votes)
        assert inst.copies == (2, 1)
        assert solve_inc_few_classes(inst).value == oracle_max_ir(inst).value

    def test_not_inc(self):
        with pytest.raises(DomainError):
            solve_inc_few_classes(dec([1, 2]))

    @settings(max_examples=150, deadline=None)
    @given(shaped("INC", max_agents=6, max_classes=2))
    def test_matches_oracle(self, inst):
        assert solve_inc_few_classes(inst).value == oracle_max_ir(inst).value


class TestEliminate:
    def test_everyone_alone(self):
        inst = Instance.from_projections([[{1}]] * 4, copies=[INFINITE])
        partial, residual = eliminate_infinite_dec(inst)
        assert count_active(partial) == 4
        assert residual.instance.n == 0

    def test_nobody_alone(self):
        inst = Instance.from_projections([[set(), {1, 2}], [set(), {1}]], copies=[INFINITE, 1])
        partial, residual = eliminate_infinite_dec(inst)
        assert count_active(partial) == 0
        assert residual.instance.copies == (1,)
        assert residual.instance.n == 2

    def test_half(self):
        inst = Instance.from_projections(
            [[{1}, {1, 2}], [set(), {1, 2}], [{1}, set()], [set(), {1}]], copies=[INFINITE, 1]
        )
        partial, residual = eliminate_infinite_dec(inst)
        assert partial.void_agents() == (1, 3)
        inner = oracle_max_ir(residual.instance)
        lifted = residual.lift(partial, inner.assignment)
        assert is_individually_rational(inst, lifted)
        assert count_active(lifted) == oracle_max_ir(inst).value

    def test_requires_unlimited(self):
        with pytest.raises(DomainError):
            eliminate_infinite_dec(dec([1, 1], k=1))

    @settings(max_examples=150, deadline=None)
    @given(shaped("DEC", max_agents=6, max_classes=3, copies=(1, 2, INFINITE)))
    def test_combined_optimum(self, inst):
        if inst.n < 2 or not any(k >= inst.n for k in inst.copies):
            return
        partial, residual = eliminate_infinite_dec(inst)
        inner = oracle_max_ir(residual.instance)
        lifted = residual.lift(partial, inner.assignment)
        assert is_individually_rational(inst, lifted)
        assert count_active(lifted) == oracle_max_ir(inst).value


class TestApprox:
    def test_full(self):
        inst = Instance.from_projections([[{1, 2, 3}]] * 3, copies=[INFINITE])
        assert approx_single_infcopy(inst).value == 3

    def test_singletons(self):
        inst = Instance.from_projections([[{1}]] * 4, copies=[INFINITE])
        report = approx_single_infcopy(inst)
        assert report.value == 4
        assert len(report.assignment.groups()) == 4

    def test_wrong_shape(self):
        with pytest.raises(DomainError):
            approx_single_infcopy(Instance.from_projections([[{1}], [{1}]], copies=[1]))

    def test_not_always_optimal(self):
        # the first pair takes agent 0, who could have been happy alone
        inst = Instance.from_projections(
            [[{1, 2, 3}], [set()], [{1, 3, 5}], [{2}], [{2}]], copies=[INFINITE]
        )
        report = approx_single_infcopy(inst)
        assert report.value == 3
        assert report.assignment.groups()[(0, 0)] == (0, 3)
        assert oracle_max_ir(inst).value == 4

    @settings(max_examples=150, deadline=None)
    @given(instances(max_agents=6, max_classes=1, copies=(INFINITE,)))
    def test_ratio(self, inst):
        report = approx_single_infcopy(inst)
        assert is_individually_rational(inst, report.assignment)
        assert report.value * math.sqrt(inst.n) >= oracle_max_ir(inst).value
