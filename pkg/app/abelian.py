#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
InvariantSplit - Translações em grupos abelianos
- Grupos finitos Z_m1 x ... x Z_md compilados para Action
- Classes de comensurabilidade e MMC vetorial (períodos sem torção)
- Geração da lista de condições para períodos reais simbólicos
- Modo janela em Z: verificação e sistema linear
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from sympy import igcd, ilcm

from action import Action, SetPartition, enumerate_set_partitions, validate_action
from condition import FnVec
from decompose import INTEGER, RATIONAL, Decomposition
from errors import (
    BadModulus, EmptyInput, NonIntegerInput, NotParallel, SchemaError, ShapeMismatch, ZeroPeriod,
)
from numeric import (
    Feasible, Infeasible, RatMatrixSystem, gauss_solve, hnf_solve_integer, rational_lcm_many, verify_infeasible,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PeriodVector:
    coordinates: Tuple[Fraction, ...]

    @classmethod
    def of(cls, *coords) -> "PeriodVector":
        return cls(tuple(Fraction(c) for c in coords))

    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def scale(self, q) -> "PeriodVector":
        q = Fraction(q)
        return PeriodVector(tuple(q * c for c in self.coordinates))


@dataclass(frozen=True)
class CommensurabilityClasses:
    classes: Tuple[Tuple[int, ...], ...]
    primitive: Tuple[PeriodVector, ...]


@dataclass(frozen=True)
class ConditionEntry:
    partition: SetPartition
    bs: Tuple[PeriodVector, ...]


@dataclass(frozen=True)
class ConditionList:
    entries: Tuple[ConditionEntry, ...]
    trivial_count: int
    duplicate_count: int = 0


@dataclass(frozen=True)
class WindowInstance:
    periods: Tuple[int, ...]
    window: int
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.window < 1:
            raise ShapeMismatch(f"janela deve ser >= 1, recebido {self.window}")
        if any(a < 1 for a in self.periods):
            raise ShapeMismatch("períodos devem ser >= 1")
        if len(self.values) != self.window:
            raise ShapeMismatch(f"{len(self.values)} valores para janela {self.window}")


@dataclass(frozen=True)
class WindowPass:
    untestable: Tuple[ConditionEntry, ...]
    tested: int


@dataclass(frozen=True)
class WindowViolation:
    entry: ConditionEntry
    witness: int
    value: Fraction


@dataclass(frozen=True)
class WindowParts:
    """Uma tabela de resíduos (tamanho a_j) por período"""
    parts: Tuple[Tuple[Fraction, ...], ...]

    def expand(self, window: int) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(p[x % len(p)] for x in range(window)) for p in self.parts)


@dataclass(frozen=True)
class WindowInfeasible:
    ring: str
    reason: str = ""
    equation: Optional[int] = None
    multipliers: Tuple[Fraction, ...] = ()


# ---------------------------------------------------------------------------
# Grupos abelianos finitos
# ---------------------------------------------------------------------------

def finite_abelian_action(moduli: Sequence[int], periods: Sequence[Sequence[int]]) -> Action:
    """Pontos em ordem row-major (última coordenada mais rápida)"""
    moduli = [int(m) for m in moduli]
    if not moduli:
        raise BadModulus("lista de módulos vazia")
    if any(m < 1 for m in moduli):
        raise BadModulus(f"módulos devem ser >= 1: {moduli}")

    strides = [1] * len(moduli)
    for i in range(len(moduli) - 2, -1, -1):
        strides[i] = strides[i + 1] * moduli[i + 1]
    size = strides[0] * moduli[0]
    points = list(itertools.product(*(range(m) for m in moduli)))

    generators = []
    for j, period in enumerate(periods, start=1):
        if len(period) != len(moduli):
            raise BadModulus(f"período {j} tem dimensão {len(period)}, esperado {len(moduli)}")
        step = [int(a) % m for a, m in zip(period, moduli)]
        perm = [
            sum(((c + a) % m) * s for c, a, m, s in zip(point, step, moduli, strides))
            for point in points
        ]
        generators.append(perm)
    return validate_action(size, generators)


# ---------------------------------------------------------------------------
# Comensurabilidade
# ---------------------------------------------------------------------------

def _parallel(v: PeriodVector, w: PeriodVector) -> bool:
    a, b = v.coordinates, w.coordinates
    if len(a) != len(b):
        return False
    return all(a[i] * b[k] == a[k] * b[i] for i in range(len(a)) for k in range(i + 1, len(a)))


def primitive_direction(v: PeriodVector) -> PeriodVector:
    """Múltiplo inteiro primitivo de v, primeira coordenada não nula positiva"""
    den = 1
    for c in v.coordinates:
        den = int(ilcm(den, c.denominator))
    ints = [int(c * den) for c in v.coordinates]
    g = 0
    for c in ints:
        g = int(igcd(g, c))
    lead = next(c for c in ints if c)
    sign = 1 if lead > 0 else -1
    return PeriodVector(tuple(Fraction(sign * c // g) for c in ints))


def _ratio(v: PeriodVector, direction: PeriodVector) -> Fraction:
    i = next(k for k, c in enumerate(direction.coordinates) if c)
    return v.coordinates[i] / direction.coordinates[i]


def commensurability_classes(periods: Sequence[PeriodVector]) -> CommensurabilityClasses:
    classes: List[List[int]] = []
    primitive: List[PeriodVector] = []
    for idx, v in enumerate(periods):
        if v.is_zero():
            raise ZeroPeriod(idx + 1)
        for k, direction in enumerate(primitive):
            if _parallel(v, direction):
                classes[k].append(idx)
                break
        else:
            classes.append([idx])
            primitive.append(primitive_direction(v))
    return CommensurabilityClasses(tuple(tuple(c) for c in classes), tuple(primitive))


def vector_lcm(periods: Sequence[PeriodVector]) -> PeriodVector:
    """Gerador de <q_1 v> ∩ ... ∩ <q_k v> = mmc(|q_i|) v"""
    if not periods:
        raise EmptyInput("lista de períodos")
    for idx, v in enumerate(periods):
        if v.is_zero():
            raise ZeroPeriod(idx + 1)
    direction = primitive_direction(periods[0])
    for idx, v in enumerate(periods[1:], start=2):
        if not _parallel(v, direction):
            raise NotParallel(idx)
    q = rational_lcm_many(*(abs(_ratio(v, direction)) for v in periods))
    return direction.scale(q)


def _multiset_key(bs: Sequence[PeriodVector]):
    return tuple(sorted(b.coordinates for b in bs))


def generate_conditions(periods: Sequence[PeriodVector], cap=None) -> ConditionList:
    """
    Uma condição por partição cujos blocos são todos comensuráveis;
    blocos incomensuráveis têm mmc nulo e a partição é trivial.
    """
    classes = commensurability_classes(periods)
    class_of = {}
    for k, members in enumerate(classes.classes):
        for idx in members:
            class_of[idx] = k

    entries, seen = [], set()
    trivial = duplicates = 0
    for partition in enumerate_set_partitions(len(periods), cap):
        if any(len({class_of[i] for i in block}) > 1 for block in partition.blocks):
            trivial += 1
            continue
        bs = tuple(vector_lcm([periods[i] for i in block]) for block in partition.blocks)
        key = _multiset_key(bs)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        entries.append(ConditionEntry(partition, bs))

    logger.debug(f"{len(entries)} condições, {trivial} triviais, {duplicates} repetidas")
    return ConditionList(tuple(entries), trivial, duplicates)


def unprescribed_condition(periods: Sequence[PeriodVector]) -> ConditionEntry:
    """
    Condição única para períodos não prescritos: um mmc por classe de
    comensurabilidade, os b's resultantes são dois a dois incomensuráveis.
    """
    classes = commensurability_classes(periods)
    blocks = tuple(classes.classes)
    bs = tuple(vector_lcm([periods[i] for i in block]) for block in blocks)
    return ConditionEntry(SetPartition(blocks), bs)


# ---------------------------------------------------------------------------
# Janela em Z
# ---------------------------------------------------------------------------

def window_iterated_difference(values: Sequence[Fraction], bs: Sequence[int], x: int) -> Fraction:
    """Inclusão-exclusão: sum_{S} (-1)^{N-|S|} f(x + sum_{i in S} b_i)"""
    total = Fraction(0)
    n = len(bs)
    for mask in range(1 << n):
        shift = sum(b for i, b in enumerate(bs) if mask >> i & 1)
        sign = -1 if (n - bin(mask).count("1")) % 2 else 1
        total += sign * values[x + shift]
    return total


def _window_conditions(instance: WindowInstance, cap=None) -> ConditionList:
    periods = [PeriodVector.of(a) for a in instance.periods]
    return generate_conditions(periods, cap)


def check_window(instance: WindowInstance, cap=None) -> Union[WindowPass, WindowViolation]:
    conditions = _window_conditions(instance, cap)
    untestable, tested = [], 0
    for entry in conditions.entries:
        bs = [int(b.coordinates[0]) for b in entry.bs]
        last = instance.window - 1 - sum(bs)
        if last < 0:
            untestable.append(entry)
            continue
        tested += 1
        for x in range(last + 1):
            value = window_iterated_difference(instance.values, bs, x)
            if value:
                return WindowViolation(entry, x, value)
    return WindowPass(tuple(untestable), tested)


def window_system(instance: WindowInstance) -> Tuple[RatMatrixSystem, List[int]]:
    offsets, unknowns = [], 0
    for a in instance.periods:
        offsets.append(unknowns)
        unknowns += a
    rows = []
    for x in range(instance.window):
        row = [0] * unknowns
        for off, a in zip(offsets, instance.periods):
            row[off + x % a] += 1
        rows.append(row)
    return RatMatrixSystem.build(rows, instance.values, unknowns), offsets


def solve_window(instance: WindowInstance, ring: str = RATIONAL) -> Union[WindowParts, WindowInfeasible]:
    if ring not in (RATIONAL, INTEGER):
        raise SchemaError("ring", f"anel desconhecido: {ring}")
    if ring == INTEGER:
        bad = next((x for x, v in enumerate(instance.values) if v.denominator != 1), None)
        if bad is not None:
            raise NonIntegerInput(bad, instance.values[bad])

    system, offsets = window_system(instance)
    result = gauss_solve(system) if ring == RATIONAL else hnf_solve_integer(system)
    if not isinstance(result, Feasible):
        return WindowInfeasible(ring, result.reason, result.equation, result.multipliers)
    y = result.solution
    parts = tuple(tuple(y[off:off + a]) for off, a in zip(offsets, instance.periods))
    return WindowParts(parts)


def verify_window_infeasibility(instance: WindowInstance, result: WindowInfeasible) -> bool:
    system, _ = window_system(instance)
    infeasible = Infeasible(result.reason, result.equation, result.multipliers)
    return verify_infeasible(system, infeasible, integral=result.ring == INTEGER)


def window_as_decomposition(instance: WindowInstance, parts: WindowParts) -> Decomposition:
    """Expande as tabelas de resíduos para vetores na janela"""
    return Decomposition(tuple(FnVec(p) for p in parts.expand(instance.window)))
