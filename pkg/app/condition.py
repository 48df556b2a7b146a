#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
InvariantSplit - Operadores de diferença e verificação da condição
Para cada órbita de G, cada partição B_1..B_N dos geradores e cada
escolha S_j em [B_j], exige Delta_{S_1}...Delta_{S_N} f = 0 na órbita.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from action import (
    Action, GroupElement, SetPartition, block_lcm_generator, block_members,
    enumerate_set_partitions, orbit_partition, restrict,
)
from errors import SchemaError, ShapeMismatch

logger = logging.getLogger(__name__)

GENERATOR = "generator"
EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class FnVec:
    """Função no conjunto {0..m-1} com valores racionais exatos"""
    values: Tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable) -> "FnVec":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def zero(cls, size: int) -> "FnVec":
        return cls((Fraction(0),) * size)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, x):
        return self.values[x]

    def __add__(self, other: "FnVec") -> "FnVec":
        _same_size(self, other)
        return FnVec(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "FnVec") -> "FnVec":
        _same_size(self, other)
        return FnVec(tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "FnVec":
        c = Fraction(c)
        return FnVec(tuple(c * a for a in self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def restrict(self, orbit: Sequence[int]) -> "FnVec":
        return FnVec(tuple(self.values[x] for x in orbit))


def _same_size(a: FnVec, b: FnVec):
    if len(a) != len(b):
        raise ShapeMismatch(f"vetores de tamanhos {len(a)} e {len(b)}")


@dataclass(frozen=True)
class ConditionPass:
    orbits: int
    evaluated: int
    trivial: int


@dataclass(frozen=True)
class ViolationCertificate:
    orbit: int
    partition: SetPartition
    chosen: Tuple[GroupElement, ...]
    witness: int
    value: Fraction


ConditionResult = Union[ConditionPass, ViolationCertificate]


def _check_shape(action: Action, f: FnVec):
    if len(f) != action.carrier_size:
        raise ShapeMismatch(f"f tem {len(f)} valores, o conjunto tem {action.carrier_size} pontos")


def difference(action: Action, S: GroupElement, f: FnVec) -> FnVec:
    """(Delta_S f)(x) = f(S(x)) - f(x)"""
    _check_shape(action, f)
    if len(S.permutation) != action.carrier_size:
        raise ShapeMismatch("elemento e função em conjuntos diferentes")
    vals = f.values
    return FnVec(tuple(vals[y] - vals[x] for x, y in enumerate(S.permutation)))


def iterated_difference(action: Action, elements: Sequence[GroupElement], f: FnVec) -> FnVec:
    _check_shape(action, f)
    if any(S.is_identity for S in elements):
        return FnVec.zero(action.carrier_size)
    result = f
    for S in elements:
        result = difference(action, S, result)
        if result.is_zero():
            break
    return result


def _first_nonzero(vec: FnVec):
    return next(((x, v) for x, v in enumerate(vec.values) if v), None)


def _choices(local: Action, partition: SetPartition, mode: str) -> List[Tuple[GroupElement, ...]]:
    everything = tuple(range(local.carrier_size))
    if mode == GENERATOR:
        chosen = tuple(block_lcm_generator(local, everything, block) for block in partition.blocks)
        if any(S.is_identity for S in chosen):
            return []
        return [chosen]
    per_block = []
    for block in partition.blocks:
        members = [S for S in block_members(local, everything, block) if not S.is_identity]
        if not members:
            return []
        per_block.append(members)
    return list(itertools.product(*per_block))


def check_condition(action: Action, f: FnVec, mode: str = GENERATOR, cap=None) -> ConditionResult:
    """
    Percorre órbitas (menor ponto) e partições (ordem RGS); na primeira partição violada
    devolve o certificado de menor ponto testemunha (empate: primeira escolha) ou ConditionPass.
    """
    if mode not in (GENERATOR, EXHAUSTIVE):
        raise SchemaError("mode", f"modo desconhecido: {mode}")
    _check_shape(action, f)
    partitions = enumerate_set_partitions(action.n, cap)
    orbits = orbit_partition(action).orbits
    evaluated = trivial = 0

    for oid, orbit in enumerate(orbits):
        local = restrict(action, orbit)
        local_f = f.restrict(orbit)
        for partition in partitions:
            choices = _choices(local, partition, mode)
            if not choices:
                trivial += 1
                continue
            best = None
            for chosen in choices:
                evaluated += 1
                hit = _first_nonzero(iterated_difference(local, chosen, local_f))
                if hit is not None and (best is None or orbit[hit[0]] < best[2]):
                    best = (chosen, hit[1], orbit[hit[0]])
                    if best[2] == orbit[0]:
                        break
            if best is not None:
                chosen, value, witness = best
                logger.debug(f"❌ violação na órbita {oid}, partição {partition.one_based()}")
                return ViolationCertificate(oid, partition, tuple(chosen), witness, value)

    logger.debug(f"✅ condição satisfeita: {len(orbits)} órbitas, {evaluated} avaliações")
    return ConditionPass(len(orbits), evaluated, trivial)


def verify_certificate(action: Action, f: FnVec, cert: ViolationCertificate) -> bool:
    """Refaz a diferença iterada a partir das palavras do certificado"""
    orbits = orbit_partition(action).orbits
    if not 0 <= cert.orbit < len(orbits):
        return False
    orbit = orbits[cert.orbit]
    if cert.witness not in orbit or cert.value == 0:
        return False
    local = restrict(action, orbit)
    elements = [local.element(S.word) for S in cert.chosen]
    value = iterated_difference(local, elements, f.restrict(orbit))[orbit.index(cert.witness)]
    return value == cert.value
