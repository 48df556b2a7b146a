#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Testes da aritmética exata: Bezout, MMC racional, Gauss e Hermite
"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.core.intfunc import igcdex

from errors import EmptyInput, NonIntegerEntry, NonPositive, ParseError, ShapeMismatch, ZeroElement
from numeric import (
    Feasible, Infeasible, RatMatrixSystem, column_hermite, ext_gcd, format_rational, gauss_solve,
    hnf_solve_integer, parse_rational, rational_lcm, rational_lcm_many, verify_infeasible,
)

nonzero = st.integers(min_value=-10**6, max_value=10**6).filter(lambda v: v != 0)
positive_q = st.builds(Fraction, st.integers(1, 30), st.integers(1, 30))


# --- racionais -------------------------------------------------------------

def test_parse_rational_forms():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == Fraction(-4)
    assert parse_rational(7) == Fraction(7)


@pytest.mark.parametrize("bad", ["0.5", "1e3", 1.5, True, "1/0", "abc", None])
def test_parse_rational_rejects_inexact(bad):
    with pytest.raises(ParseError):
        parse_rational(bad, "f[0]")


def test_format_rational():
    assert format_rational(Fraction(3)) == "3"
    assert format_rational(Fraction(-2, 4)) == "-1/2"


# --- ext_gcd ---------------------------------------------------------------

def test_ext_gcd_examples():
    assert ext_gcd(2, 3) == (1, (-1, 1))
    assert ext_gcd(5) == (5, (1,))
    g, d = ext_gcd(4, 6)
    assert g == 2 and 4 * d[0] + 6 * d[1] == 2


def test_ext_gcd_errors():
    with pytest.raises(EmptyInput):
        ext_gcd()
    with pytest.raises(ZeroElement) as exc:
        ext_gcd(3, 0, 2)
    assert exc.value.position == 1


@given(nonzero, nonzero)
def test_ext_gcd_matches_igcdex(a, b):
    x, y, g = igcdex(a, b)
    assert ext_gcd(a, b)[0] == g
    assert a * x + b * y == g


@given(st.lists(nonzero, min_size=1, max_size=6))
def test_ext_gcd_identity(ms):
    g, d = ext_gcd(*ms)
    assert g > 0
    assert sum(di * mi for di, mi in zip(d, ms)) == g
    assert all(m % g == 0 for m in ms)


# --- rational_lcm ----------------------------------------------------------

def test_rational_lcm_examples():
    assert rational_lcm(1, 2) == 2
    assert rational_lcm(Fraction(1, 2), Fraction(1, 3)) == 1
    assert rational_lcm(Fraction(3, 4), Fraction(1, 2)) == Fraction(3, 2)


def test_rational_lcm_rejects_non_positive():
    with pytest.raises(NonPositive):
        rational_lcm(0, 1)
    with pytest.raises(NonPositive):
        rational_lcm_many(Fraction(-1, 2))


@given(positive_q, positive_q)
def test_rational_lcm_is_least_common_multiple(a, b):
    q = rational_lcm(a, b)
    assert (q / a).denominator == 1 and (q / b).denominator == 1
    # nenhum múltiplo menor de a é também múltiplo de b
    k = 1
    while k * a < q:
        assert (k * a / b).denominator != 1
        k += 1


def test_rational_lcm_many_folds():
    assert rational_lcm_many(Fraction(1, 2), Fraction(1, 3), 2) == 2
    assert rational_lcm_many(Fraction(5, 7)) == Fraction(5, 7)


# --- sistemas --------------------------------------------------------------

def test_system_shape_checks():
    with pytest.raises(ShapeMismatch):
        RatMatrixSystem.build([[1, 2], [1]], [0, 0], 2)
    with pytest.raises(ShapeMismatch):
        RatMatrixSystem.build([[1, 2]], [0, 0], 2)


def test_gauss_small_cases():
    result = gauss_solve(RatMatrixSystem.build([[1, 1]], [1]))
    assert isinstance(result, Feasible)
    assert result.solution == (Fraction(1), Fraction(0))
    assert isinstance(gauss_solve(RatMatrixSystem.build([[1], [1]], [1, 2])), Infeasible)


def test_gauss_infeasibility_certificate():
    system = RatMatrixSystem.build([[1, 1], [1, 1], [0, 2]], [1, 2, 0])
    result = gauss_solve(system)
    assert isinstance(result, Infeasible)
    assert result.equation == 1
    assert result.multipliers == (Fraction(-1), Fraction(1), Fraction(0))
    assert verify_infeasible(system, result, integral=False)
    forged = Infeasible(result.reason, result.equation, (Fraction(1), Fraction(0), Fraction(0)))
    assert not verify_infeasible(system, forged, integral=False)


matrices = st.integers(1, 5).flatmap(
    lambda cols: st.lists(st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), min_size=1, max_size=5)
)


@given(matrices, st.data())
def test_gauss_certificates_verify(rows, data):
    rhs = data.draw(st.lists(st.integers(-4, 4), min_size=len(rows), max_size=len(rows)))
    system = RatMatrixSystem.build(rows, rhs, len(rows[0]))
    result = gauss_solve(system)
    if isinstance(result, Infeasible):
        assert verify_infeasible(system, result, integral=False)


@given(matrices, st.data())
def test_gauss_finds_planted_solution(rows, data):
    cols = len(rows[0])
    x = data.draw(st.lists(st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)), min_size=cols, max_size=cols))
    rhs = [sum(a * v for a, v in zip(row, x)) for row in rows]
    system = RatMatrixSystem.build(rows, rhs, cols)
    result = gauss_solve(system)
    assert isinstance(result, Feasible)
    assert system.satisfied_by(result.solution)


def test_hnf_small_cases():
    result = hnf_solve_integer(RatMatrixSystem.build([[1, 1]], [1]))
    assert isinstance(result, Feasible)
    assert sum(result.solution) == 1
    assert isinstance(hnf_solve_integer(RatMatrixSystem.build([[2]], [1])), Infeasible)


def test_hnf_infeasibility_certificate():
    # x + y = 1 e x - y = 0: solução racional (1/2, 1/2), nenhuma inteira
    system = RatMatrixSystem.build([[1, 1], [1, -1]], [1, 0])
    result = hnf_solve_integer(system)
    assert isinstance(result, Infeasible)
    assert verify_infeasible(system, result, integral=True)
    assert not verify_infeasible(system, result, integral=False)

    inconsistent = RatMatrixSystem.build([[1], [1]], [1, 2])
    result = hnf_solve_integer(inconsistent)
    assert result.equation == 1
    assert verify_infeasible(inconsistent, result, integral=True)


def test_hnf_rejects_fractions():
    with pytest.raises(NonIntegerEntry):
        hnf_solve_integer(RatMatrixSystem.build([[Fraction(1, 2)]], [1]))


@given(matrices)
def test_column_hermite_is_unimodular(rows):
    cols = len(rows[0])
    H, U, pivots = column_hermite(rows, cols)
    assert Matrix(rows) * Matrix(U) == Matrix(H)
    assert abs(Matrix(U).det()) == 1
    for r, c in pivots:
        assert H[r][c] > 0
        assert all(H[r][k] == 0 for k in range(c + 1, cols))


@settings(max_examples=60)
@given(
    st.integers(1, 3).flatmap(
        lambda cols: st.lists(st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), min_size=1, max_size=3)
    ),
    st.data(),
)
def test_hnf_agrees_with_bounded_search(rows, data):
    cols = len(rows[0])
    rhs = data.draw(st.lists(st.integers(-4, 4), min_size=len(rows), max_size=len(rows)))
    system = RatMatrixSystem.build(rows, rhs, cols)
    result = hnf_solve_integer(system)

    found = any(
        all(sum(a * v for a, v in zip(row, x)) == b for row, b in zip(rows, rhs))
        for x in itertools.product(range(-6, 7), repeat=cols)
    )
    if found:
        assert isinstance(result, Feasible)
    if isinstance(result, Infeasible):
        assert verify_infeasible(system, result, integral=True)
    if isinstance(result, Feasible):
        assert all(v.denominator == 1 for v in result.solution)
        assert system.satisfied_by(result.solution)
        assert isinstance(gauss_solve(system), Feasible)
