#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
InvariantSplit - Ações por permutações que comutam
- Validação (bijeção + comutatividade)
- Órbitas, restrição a uma órbita
- Subgrupos cíclicos e o gerador de [B] = interseção de <T_i>
- Partições de conjunto em ordem de restricted growth strings
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

import config
from errors import (
    CapExceeded, EmptyBlock, EmptySubset, NonBijective, NonCommuting, ShapeMismatch,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupElement:
    """Elemento de G = <T_1..T_n>: permutação + vetor de expoentes"""
    permutation: Tuple[int, ...]
    word: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.permutation[x]

    @property
    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.permutation))

    def compose(self, other: "GroupElement") -> "GroupElement":
        """(self o other)(x) = self(other(x))"""
        perm = self.permutation
        return GroupElement(
            tuple(perm[y] for y in other.permutation),
            tuple(a + b for a, b in zip(self.word, other.word)),
        )

    def inverse(self) -> "GroupElement":
        inv = [0] * len(self.permutation)
        for x, y in enumerate(self.permutation):
            inv[y] = x
        return GroupElement(tuple(inv), tuple(-a for a in self.word))

    def power(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = GroupElement(tuple(range(len(self.permutation))), (0,) * len(self.word))
        while k:
            if k & 1:
                result = result.compose(base)
            base = base.compose(base)
            k >>= 1
        return result

    def order(self) -> int:
        return int(Permutation(list(self.permutation)).order())

    def restrict(self, orbit: Sequence[int]) -> "GroupElement":
        local = {x: i for i, x in enumerate(orbit)}
        escaped = next((x for x in orbit if self.permutation[x] not in local), None)
        if escaped is not None:
            raise ShapeMismatch(f"conjunto não invariante: {escaped} -> {self.permutation[escaped]}")
        return GroupElement(tuple(local[self.permutation[x]] for x in orbit), self.word)


@dataclass(frozen=True)
class Action:
    carrier_size: int
    generators: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.generators)

    def identity(self) -> GroupElement:
        return GroupElement(tuple(range(self.carrier_size)), (0,) * self.n)

    def generator(self, j: int) -> GroupElement:
        """Gerador j (0-based) como GroupElement"""
        word = tuple(int(i == j) for i in range(self.n))
        return GroupElement(self.generators[j], word)

    def element(self, word: Sequence[int]) -> GroupElement:
        if len(word) != self.n:
            raise ShapeMismatch(f"palavra de tamanho {len(word)}, esperado {self.n}")
        result = self.identity()
        for j, e in enumerate(word):
            if e:
                result = result.compose(self.generator(j).power(e))
        return result


@dataclass(frozen=True)
class OrbitPartition:
    orbits: Tuple[Tuple[int, ...], ...]
    orbit_of: Tuple[int, ...]


@dataclass(frozen=True)
class SetPartition:
    """Blocos de índices de geradores (0-based internamente)"""
    blocks: Tuple[Tuple[int, ...], ...]

    def one_based(self) -> List[List[int]]:
        return [[i + 1 for i in block] for block in self.blocks]


def validate_action(carrier_size: int, generators: Iterable[Sequence[int]]) -> Action:
    """Valida bijeção e comutatividade; erros citam geradores 1-based"""
    if carrier_size < 1:
        raise ShapeMismatch(f"tamanho do conjunto deve ser >= 1, recebido {carrier_size}")
    gens = tuple(tuple(int(v) for v in g) for g in generators)

    for j, perm in enumerate(gens, start=1):
        if len(perm) != carrier_size:
            raise ShapeMismatch(f"gerador {j} tem tamanho {len(perm)}, esperado {carrier_size}")
        seen = set()
        for y in perm:
            if not 0 <= y < carrier_size:
                raise ShapeMismatch(f"gerador {j} leva para fora do conjunto: {y}")
            if y in seen:
                raise NonBijective(j, y)
            seen.add(y)

    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            a, b = gens[i], gens[j]
            for x in range(carrier_size):
                if a[b[x]] != b[a[x]]:
                    raise NonCommuting(i + 1, j + 1, x)

    logger.debug(f"ação validada: {carrier_size} pontos, {len(gens)} geradores")
    return Action(carrier_size, gens)


def orbit_partition(action: Action, subset: Optional[Iterable[int]] = None) -> OrbitPartition:
    """
    Componentes conexas sob os geradores escolhidos (None = todos).
    Órbitas ordenadas pelo menor ponto.
    """
    if subset is None:
        indices = list(range(action.n))
    else:
        indices = sorted(set(subset))
        if not indices:
            raise EmptySubset()
    perms = [action.generators[j] for j in indices]

    orbit_of = [-1] * action.carrier_size
    orbits = []
    for start in range(action.carrier_size):
        if orbit_of[start] != -1:
            continue
        oid = len(orbits)
        orbit_of[start] = oid
        stack, members = [start], [start]
        while stack:
            x = stack.pop()
            for perm in perms:
                y = perm[x]
                if orbit_of[y] == -1:
                    orbit_of[y] = oid
                    members.append(y)
                    stack.append(y)
        orbits.append(tuple(sorted(members)))
    return OrbitPartition(tuple(orbits), tuple(orbit_of))


def restrict(action: Action, orbit: Sequence[int]) -> Action:
    """Ação restrita à órbita, com pontos renumerados 0..len(orbit)-1"""
    orbit = tuple(sorted(orbit))
    gens = tuple(action.generator(j).restrict(orbit).permutation for j in range(action.n))
    return Action(len(orbit), gens)


def cyclic_subgroup(action: Action, element: GroupElement, cap: Optional[int] = None):
    """Retorna (ordem, [elemento^0, ..., elemento^(ordem-1)])"""
    cap = config.CYCLIC_SCAN_CAP if cap is None else cap
    order = element.order()
    if order > cap:
        raise CapExceeded(order, cap)
    powers = [action.identity()]
    for _ in range(order - 1):
        powers.append(powers[-1].compose(element))
    return order, powers


@lru_cache(maxsize=4096)
def _generator_members(action: Action, j: int) -> frozenset:
    _, powers = cyclic_subgroup(action, action.generator(j))
    return frozenset(p.permutation for p in powers)


def block_lcm_generator(action: Action, orbit: Sequence[int], block: Iterable[int]) -> GroupElement:
    """
    Gerador de [B] = interseção dos <T_i|orbita>, i no bloco.
    b1^t* com t* mínimo tal que b1^t* está em todos os outros <T_i|orbita>;
    identidade quando a interseção é trivial. O elemento devolvido vive
    nos índices locais da órbita.
    """
    block = sorted(set(block))
    if not block:
        raise EmptyBlock()
    local = restrict(action, orbit)
    first = local.generator(block[0])
    if len(block) == 1:
        return first

    order, powers = cyclic_subgroup(local, first)
    others = [_generator_members(local, i) for i in block[1:]]
    for t in range(1, order):
        candidate = powers[t]
        if all(candidate.permutation in members for members in others):
            return candidate
    return local.identity()


def block_members(action: Action, orbit: Sequence[int], block: Iterable[int]) -> List[GroupElement]:
    """Todos os elementos de [B] por enumeração direta (modo exaustivo)"""
    block = sorted(set(block))
    if not block:
        raise EmptyBlock()
    local = restrict(action, orbit)
    _, powers = cyclic_subgroup(local, local.generator(block[0]))
    others = [_generator_members(local, i) for i in block[1:]]
    return [p for p in powers if all(p.permutation in members for members in others)]


def _restricted_growth_strings(n: int):
    """Strings a_0..a_{n-1} com a_0 = 0 e a_i <= 1 + max(a_0..a_{i-1}), em ordem lexicográfica"""
    if n == 0:
        yield ()
        return

    def extend(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            prefix.append(v)
            yield from extend(prefix, max(top, v))
            prefix.pop()

    yield from extend([0], 0)


def enumerate_set_partitions(n: int, cap: Optional[int] = None) -> List[SetPartition]:
    """Todas as Bell(n) partições de {0..n-1}"""
    cap = config.PARTITION_CAP if cap is None else cap
    if n < 0:
        raise ShapeMismatch(f"n negativo: {n}")
    if n > cap:
        raise CapExceeded(n, cap)
    partitions = []
    for rgs in _restricted_growth_strings(n):
        blocks = [[] for _ in range(max(rgs) + 1 if rgs else 0)]
        for i, b in enumerate(rgs):
            blocks[b].append(i)
        partitions.append(SetPartition(tuple(tuple(b) for b in blocks)))
    return partitions
