#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Testes das translações: grupos finitos, comensurabilidade, lista de condições e janela
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import ilcm

from abelian import (
    PeriodVector, WindowInfeasible, WindowInstance, WindowParts, WindowPass, WindowViolation,
    check_window, commensurability_classes, finite_abelian_action, generate_conditions,
    unprescribed_condition, primitive_direction, solve_window, vector_lcm,
    verify_window_infeasibility, window_as_decomposition, window_iterated_difference,
)
from action import validate_action
from decompose import INTEGER, RATIONAL
from errors import BadModulus, NonIntegerInput, NotParallel, ShapeMismatch, ZeroPeriod

ONE, TWO, SQRT2 = PeriodVector.of(1, 0), PeriodVector.of(2, 0), PeriodVector.of(0, 1)


def window(periods, values):
    return WindowInstance(tuple(periods), len(values), tuple(Fraction(v) for v in values))


def periodic_indicator(W):
    return [int(x % 2 == 0) + int(x % 3 == 0) for x in range(W)]


# --- grupos finitos ----------------------------------------------------------

def test_finite_abelian_klein_group():
    action = finite_abelian_action((2, 2), [(1, 0), (0, 1), (1, 1)])
    assert action.generators == ((2, 3, 0, 1), (1, 0, 3, 2), (3, 2, 1, 0))


def test_finite_abelian_z6_and_trivial():
    z6 = finite_abelian_action((6,), [(2,), (3,)])
    assert z6.generators == ((2, 3, 4, 5, 0, 1), (3, 4, 5, 0, 1, 2))
    trivial = finite_abelian_action((1,), [(5,)])
    assert trivial.carrier_size == 1 and trivial.generators == ((0,),)


@pytest.mark.parametrize("moduli, periods", [((), []), ((0,), [(1,)]), ((3,), [(1, 1)])])
def test_finite_abelian_bad_modulus(moduli, periods):
    with pytest.raises(BadModulus):
        finite_abelian_action(moduli, periods)


@given(
    st.lists(st.integers(1, 4), min_size=1, max_size=3).flatmap(
        lambda moduli: st.tuples(
            st.just(moduli),
            st.lists(st.tuples(*(st.integers(-5, 5) for _ in moduli)), min_size=1, max_size=4),
        )
    )
)
def test_translations_always_commute(data):
    moduli, periods = data
    action = finite_abelian_action(moduli, periods)
    assert validate_action(action.carrier_size, action.generators) == action


# --- comensurabilidade -------------------------------------------------------

def test_commensurability_examples():
    assert commensurability_classes([ONE, TWO, SQRT2]).classes == ((0, 1), (2,))
    assert commensurability_classes([ONE, ONE, ONE]).classes == ((0, 1, 2),)
    assert commensurability_classes([SQRT2]).classes == ((0,),)


def test_commensurability_zero_period():
    with pytest.raises(ZeroPeriod) as exc:
        commensurability_classes([ONE, PeriodVector.of(0, 0)])
    assert exc.value.index == 2


def test_primitive_direction():
    assert primitive_direction(PeriodVector.of(Fraction(-2, 3), Fraction(4, 3))) == PeriodVector.of(1, -2)


def test_vector_lcm_examples():
    assert vector_lcm([ONE, TWO]) == TWO
    assert vector_lcm([PeriodVector.of(3)]) == PeriodVector.of(3)
    assert vector_lcm([PeriodVector.of(Fraction(1, 2)), PeriodVector.of(Fraction(1, 3))]) == PeriodVector.of(1)


def test_vector_lcm_not_parallel():
    with pytest.raises(NotParallel) as exc:
        vector_lcm([ONE, SQRT2])
    assert exc.value.index == 2


@given(st.lists(st.builds(Fraction, st.integers(-12, 12).filter(bool), st.integers(1, 6)), min_size=1, max_size=4))
def test_vector_lcm_is_multiple_of_each_member(ratios):
    direction = PeriodVector.of(2, -1)
    periods = [direction.scale(q) for q in ratios]
    b = vector_lcm(periods)
    for v in periods:
        quotient = b.coordinates[0] / v.coordinates[0]
        assert quotient.denominator == 1
        assert b == v.scale(quotient)


# --- lista de condições ------------------------------------------------------

def test_conditions_for_one_two_sqrt2():
    conditions = generate_conditions([ONE, TWO, SQRT2])
    assert conditions.trivial_count == 3
    assert [(e.partition.one_based(), e.bs) for e in conditions.entries] == [
        ([[1, 2], [3]], (TWO, SQRT2)),
        ([[1], [2], [3]], (ONE, TWO, SQRT2)),
    ]


def test_conditions_for_incommensurable_periods():
    a, b, c = PeriodVector.of(1, 0, 0), PeriodVector.of(0, 1, 0), PeriodVector.of(0, 0, 1)
    conditions = generate_conditions([a, b, c])
    assert len(conditions.entries) == 1
    assert conditions.entries[0].bs == (a, b, c)


def test_conditions_single_period():
    conditions = generate_conditions([PeriodVector.of(5)])
    assert [e.bs for e in conditions.entries] == [(PeriodVector.of(5),)]


def test_conditions_on_integers_list_every_partition():
    periods = [PeriodVector.of(a) for a in (2, 3, 4)]
    conditions = generate_conditions(periods)
    assert conditions.trivial_count == 0
    assert len(conditions.entries) + conditions.duplicate_count == 5
    for entry in conditions.entries:
        for block, b in zip(entry.partition.blocks, entry.bs):
            expected = 1
            for i in block:
                expected = int(ilcm(expected, int(periods[i].coordinates[0])))
            assert b == PeriodVector.of(expected)


def test_repeated_b_multisets_are_deduplicated():
    # {1,2},{3} e {1},{2,3} dão ambos (2, 2)
    conditions = generate_conditions([PeriodVector.of(2), PeriodVector.of(1), PeriodVector.of(2)])
    keys = [tuple(sorted(b.coordinates for b in e.bs)) for e in conditions.entries]
    assert len(keys) == len(set(keys))
    assert conditions.duplicate_count >= 1


def test_unprescribed_condition_uses_one_lcm_per_class():
    entry = unprescribed_condition([ONE, TWO, SQRT2])
    assert entry.partition.one_based() == [[1, 2], [3]]
    assert entry.bs == (TWO, SQRT2)


# --- janela ------------------------------------------------------------------

def test_window_instance_validation():
    with pytest.raises(ShapeMismatch):
        WindowInstance((2,), 0, ())
    with pytest.raises(ShapeMismatch):
        WindowInstance((0,), 1, (Fraction(0),))
    with pytest.raises(ShapeMismatch):
        WindowInstance((2,), 3, (Fraction(0),))


def test_window_iterated_difference():
    values = [Fraction(x * x) for x in range(10)]
    # Delta_1 Delta_1 x^2 = 2
    assert window_iterated_difference(values, [1, 1], 3) == 2
    assert window_iterated_difference(values, [], 4) == 16


def test_trap_window_reports_single_block_violation():
    instance = window((3, 3), range(10))
    verdict = check_window(instance)
    assert isinstance(verdict, WindowViolation)
    assert verdict.entry.partition.one_based() == [[1, 2]]
    assert verdict.entry.bs == (PeriodVector.of(3),)
    assert (verdict.witness, verdict.value) == (0, 3)
    # a condição com dois blocos é satisfeita em todo ponto testável
    assert all(window_iterated_difference(instance.values, [3, 3], x) == 0 for x in range(4))


def test_periodic_window_passes_and_decomposes():
    instance = window((2, 3), periodic_indicator(12))
    assert isinstance(check_window(instance), WindowPass)
    result = solve_window(instance, INTEGER)
    assert isinstance(result, WindowParts)
    assert [len(p) for p in result.parts] == [2, 3]
    expanded = window_as_decomposition(instance, result)
    assert expanded.total(12).values == instance.values


def test_short_window_is_untestable():
    verdict = check_window(window((2, 3), [0, 1]))
    assert isinstance(verdict, WindowPass)
    assert verdict.tested == 0 and len(verdict.untestable) == 2


@pytest.mark.parametrize("W", [6, 7])
def test_identity_is_not_a_sum_of_periodics(W):
    instance = window((2, 3), range(W))
    for ring in (RATIONAL, INTEGER):
        result = solve_window(instance, ring)
        assert isinstance(result, WindowInfeasible)
        assert len(result.multipliers) == W
        assert verify_window_infeasibility(instance, result)
        assert not verify_window_infeasibility(window((2, 3), [0] * W), result)


def test_window_integer_ring_needs_integers():
    with pytest.raises(NonIntegerInput):
        solve_window(window((2,), [Fraction(1, 2), 0]), INTEGER)


@given(
    st.lists(st.integers(1, 5), min_size=1, max_size=3),
    st.integers(1, 30),
    st.data(),
)
def test_window_consistency_for_periodic_sums(periods, W, data):
    values = [0] * W
    for a in periods:
        residues = data.draw(st.lists(st.integers(-3, 3), min_size=a, max_size=a))
        for x in range(W):
            values[x] += residues[x % a]
    instance = window(periods, values)
    assert not isinstance(check_window(instance), WindowViolation)
    for ring in (RATIONAL, INTEGER):
        assert isinstance(solve_window(instance, ring), WindowParts)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.lists(st.integers(-2, 2), min_size=1, max_size=16))
def test_feasible_windows_never_violate(periods, values):
    instance = window(periods, values)
    if isinstance(solve_window(instance, RATIONAL), WindowParts):
        assert not isinstance(check_window(instance), WindowViolation)
