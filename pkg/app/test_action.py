#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Testes de ações, órbitas, subgrupos cíclicos e partições
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

from abelian import finite_abelian_action
from action import (
    GroupElement, block_lcm_generator, block_members, cyclic_subgroup, enumerate_set_partitions,
    orbit_partition, restrict, validate_action,
)
from errors import CapExceeded, EmptyBlock, EmptySubset, NonBijective, NonCommuting, ShapeMismatch

Z2Z2_PERMS = [[2, 3, 0, 1], [1, 0, 3, 2], [3, 2, 1, 0]]
BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


@pytest.fixture
def z2z2():
    return validate_action(4, Z2Z2_PERMS)


def translations(m, *steps):
    return finite_abelian_action((m,), [(s,) for s in steps])


# --- validação -------------------------------------------------------------

def test_validate_accepts_klein_group(z2z2):
    assert z2z2.carrier_size == 4 and z2z2.n == 3


def test_validate_accepts_equal_generators():
    assert validate_action(2, [[1, 0], [1, 0]]).n == 2


def test_validate_reports_non_commuting_pair():
    with pytest.raises(NonCommuting) as exc:
        validate_action(3, [[1, 2, 0], [1, 0, 2]])
    assert (exc.value.first, exc.value.second, exc.value.point) == (1, 2, 0)


def test_validate_reports_repeated_image():
    with pytest.raises(NonBijective) as exc:
        validate_action(3, [[0, 1, 2], [1, 1, 0]])
    assert (exc.value.generator, exc.value.image) == (2, 1)


@pytest.mark.parametrize("perms", [[[0, 1]], [[0, 1, 3]]])
def test_validate_rejects_bad_shapes(perms):
    with pytest.raises(ShapeMismatch):
        validate_action(3, perms)


# --- elementos ---------------------------------------------------------------

def test_element_word_and_powers(z2z2):
    S = z2z2.element((1, 1, 0))
    assert S.permutation == tuple(Z2Z2_PERMS[2])
    assert S.power(2).is_identity
    assert S.power(-1) == GroupElement(S.permutation, (-1, -1, 0))
    assert z2z2.generator(0).compose(z2z2.generator(0).inverse()).is_identity


# --- órbitas -----------------------------------------------------------------

def test_orbits_examples(z2z2):
    assert orbit_partition(z2z2).orbits == ((0, 1, 2, 3),)
    assert orbit_partition(z2z2, [0]).orbits == ((0, 2), (1, 3))
    assert orbit_partition(translations(6, 2)).orbits == ((0, 2, 4), (1, 3, 5))


def test_orbits_reject_empty_subset(z2z2):
    with pytest.raises(EmptySubset):
        orbit_partition(z2z2, [])


def _power_action(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 12)
    base = list(range(m))
    rng.shuffle(base)
    element = GroupElement(tuple(base), (1,))
    return validate_action(m, [element.power(rng.randint(0, 13)).permutation for _ in range(rng.randint(1, 4))])


@given(st.integers(0, 10**6))
def test_subset_orbits_refine_full_orbits(seed):
    action = _power_action(seed)
    full = orbit_partition(action)
    for j in range(action.n):
        for orbit in orbit_partition(action, [j]).orbits:
            assert len({full.orbit_of[x] for x in orbit}) == 1


def test_restrict_renumbers_points():
    action = translations(6, 2)
    local = restrict(action, (5, 1, 3))
    assert local.carrier_size == 3
    assert local.generators[0] == (1, 2, 0)


def test_restrict_rejects_non_invariant_set():
    action = translations(6, 2, 3)
    with pytest.raises(ShapeMismatch):
        restrict(action, (1, 3, 5))
    with pytest.raises(ShapeMismatch):
        block_lcm_generator(action, (1, 3, 5), [0])
    with pytest.raises(ShapeMismatch):
        block_members(action, (1, 3, 5), [0])


# --- subgrupos cíclicos ------------------------------------------------------

def test_cyclic_orders(z2z2):
    action = translations(6, 2)
    assert cyclic_subgroup(action, action.generator(0))[0] == 3
    assert cyclic_subgroup(action, action.identity())[0] == 1
    assert cyclic_subgroup(z2z2, z2z2.generator(2))[0] == 2


def test_cyclic_scan_cap():
    action = translations(7, 1)
    with pytest.raises(CapExceeded):
        cyclic_subgroup(action, action.generator(0), cap=5)


def test_block_lcm_generator_examples(z2z2):
    everything = range(4)
    assert block_lcm_generator(z2z2, everything, [0, 1]).is_identity
    assert block_lcm_generator(z2z2, everything, [1]) == z2z2.generator(1)

    z12 = translations(12, 2, 3)
    S = block_lcm_generator(z12, range(12), [0, 1])
    assert S.permutation == tuple((x + 6) % 12 for x in range(12))


def test_block_lcm_rejects_empty_block(z2z2):
    with pytest.raises(EmptyBlock):
        block_lcm_generator(z2z2, range(4), [])


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_block_generator_spans_intersection(seed):
    action = _power_action(seed)
    for orbit in orbit_partition(action).orbits:
        local = restrict(action, orbit)
        everything = range(local.carrier_size)
        block = list(range(action.n))
        S = block_lcm_generator(action, orbit, block)
        members = {p.permutation for p in block_members(action, orbit, block)}
        spanned = {p.permutation for p in cyclic_subgroup(local, S)[1]}
        assert spanned == members
        for i in block:
            powers = {p.permutation for p in cyclic_subgroup(local, local.generator(i))[1]}
            assert S.permutation in powers
        assert block_lcm_generator(local, everything, [0]) == local.generator(0)


# --- partições ---------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 9))
def test_bell_numbers(n):
    partitions = enumerate_set_partitions(n)
    assert len(partitions) == BELL[n]
    assert len(set(partitions)) == BELL[n]
    for p in partitions:
        assert sorted(i for block in p.blocks for i in block) == list(range(n))


def test_partition_order_is_restricted_growth():
    assert [p.one_based() for p in enumerate_set_partitions(3)] == [
        [[1, 2, 3]],
        [[1, 2], [3]],
        [[1, 3], [2]],
        [[1], [2, 3]],
        [[1], [2], [3]],
    ]


def test_partition_cap():
    with pytest.raises(CapExceeded):
        enumerate_set_partitions(9)
    assert len(enumerate_set_partitions(9, cap=9)) == 21147
