#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
InvariantSplit - Decomposição invariante
- solve_lift: dado G T-periódica, acha g T-periódica com Delta_S g = G
- decompose: recursão indutiva por órbita (g = Delta_{T1} f, médias G_j,
  correções F_j, lifts, f_1 = f - (f_2 + ... + f_n))
- verify_decomposition, oracle_feasible (sistema linear independente)
- m_bound (cota de denominadores) e bezout_combine
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from action import Action, GroupElement, orbit_partition, restrict
from condition import (
    ConditionPass, FnVec, ViolationCertificate, check_condition, difference,
)
from errors import (
    InternalInvariantFailure, NonIntegerInput, NotTPeriodic, NotUnityCombination,
    PlanMismatch, PreconditionViolated, SchemaError, ShapeMismatch,
)
from numeric import (
    Feasible, Infeasible, RatMatrixSystem, ext_gcd, gauss_solve, hnf_solve_integer, verify_infeasible,
)

logger = logging.getLogger(__name__)

RATIONAL = "rational"
INTEGER = "integer"


@dataclass(frozen=True)
class Decomposition:
    parts: Tuple[FnVec, ...]

    def total(self, size: int) -> FnVec:
        acc = FnVec.zero(size)
        for part in self.parts:
            acc = acc + part
        return acc

    def is_integral(self) -> bool:
        return all(part.is_integral() for part in self.parts)


@dataclass(frozen=True)
class LiftProblem:
    T: GroupElement
    S: GroupElement
    G: FnVec
    quotient: Tuple[Tuple[int, ...], ...]
    quotient_of: Tuple[int, ...]
    induced: Tuple[int, ...]
    induced_values: Tuple[Fraction, ...]
    representatives: Tuple[int, ...]


@dataclass(frozen=True)
class MBound:
    value: int
    trace: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class BezoutPlan:
    multipliers: Tuple[int, ...]
    coefficients: Tuple[int, ...]


@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True)
class Invalid:
    reason: str
    witness: int


@dataclass(frozen=True)
class OracleInfeasible:
    ring: str
    reason: str = ""
    equation: Optional[int] = None
    multipliers: Tuple[Fraction, ...] = ()


# ---------------------------------------------------------------------------
# Lift
# ---------------------------------------------------------------------------

def _cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    """Ciclos de uma permutação, cada um começando no seu menor ponto"""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = perm[x]
        cycles.append(tuple(cycle))
    return cycles


def build_lift_problem(action: Action, T: GroupElement, S: GroupElement, G: FnVec) -> LiftProblem:
    delta = difference(action, T, G)
    bad = next((x for x, v in enumerate(delta.values) if v), None)
    if bad is not None:
        raise NotTPeriodic(bad)

    quotient = tuple(tuple(sorted(c)) for c in _cycles(T.permutation))
    quotient_of = [0] * action.carrier_size
    for qid, members in enumerate(quotient):
        for x in members:
            quotient_of[x] = qid
    induced = tuple(quotient_of[S(members[0])] for members in quotient)
    values = tuple(G[members[0]] for members in quotient)
    representatives = tuple(c[0] for c in _cycles(induced))
    return LiftProblem(T, S, G, quotient, tuple(quotient_of), induced, values, representatives)


def solve_lift(action: Action, T: GroupElement, S: GroupElement, G: FnVec) -> FnVec:
    """
    Devolve g com Delta_T g = 0 e Delta_S g = G.
    Em cada ciclo de S~ no quociente por <T>, com representante x_b:
      g~(x) = G~(x_b) - sum_{i<n} G~(S~^i x),  onde S~^n x = x_b, n >= 0.
    """
    problem = build_lift_problem(action, T, S, G)
    induced, values = problem.induced, problem.induced_values
    lifted = [Fraction(0)] * len(problem.quotient)

    for rep in problem.representatives:
        cycle = [rep]
        while induced[cycle[-1]] != rep:
            cycle.append(induced[cycle[-1]])
        total = sum((values[q] for q in cycle), Fraction(0))
        if total != 0:
            points = tuple(problem.quotient[q][0] for q in cycle)
            raise PreconditionViolated(points, total)

        # soma dos sufixos do ciclo: posição p precisa de n = len - p passos
        base = values[rep]
        lifted[rep] = base
        suffix = Fraction(0)
        for q in reversed(cycle[1:]):
            suffix += values[q]
            lifted[q] = base - suffix

    return FnVec(tuple(lifted[q] for q in problem.quotient_of))


# ---------------------------------------------------------------------------
# Recursão construtiva
# ---------------------------------------------------------------------------

def _average_along(T: GroupElement, order: int, g: FnVec) -> FnVec:
    """G(x) = (1/m) sum_{mu<m} g(T^mu x)"""
    out = []
    for x in range(len(g)):
        acc, y = Fraction(0), x
        for _ in range(order):
            acc += g[y]
            y = T(y)
        out.append(acc / order)
    return FnVec(tuple(out))


def _decompose_split(gens: Sequence[GroupElement], f: FnVec) -> List[FnVec]:
    """Separa em órbitas de <gens> e resolve cada uma"""
    size = len(f)
    if not gens:
        if not f.is_zero():
            raise InternalInvariantFailure("resto não nulo sem geradores")
        return []
    carrier = Action(size, tuple(S.permutation for S in gens))
    parts = [[Fraction(0)] * size for _ in gens]
    for orbit in orbit_partition(carrier).orbits:
        local_gens = [S.restrict(orbit) for S in gens]
        local_parts = _decompose_transitive(local_gens, f.restrict(orbit))
        for j, part in enumerate(local_parts):
            for i, x in enumerate(orbit):
                parts[j][x] = part[i]
    return [FnVec(tuple(p)) for p in parts]


def _decompose_transitive(gens: Sequence[GroupElement], f: FnVec) -> List[FnVec]:
    size = len(f)
    local = Action(size, tuple(S.permutation for S in gens))
    T1 = gens[0]
    if len(gens) == 1:
        if not difference(local, T1, f).is_zero():
            raise InternalInvariantFailure("f não é T_1-periódica no caso base")
        return [f]

    m1 = T1.order()
    g = difference(local, T1, f)
    g_parts = _decompose_split(gens[1:], g)

    lifts = []
    for Tj, gj in zip(gens[1:], g_parts):
        Gj = _average_along(T1, m1, gj)
        Fj = gj - Gj
        try:
            lifts.append(solve_lift(local, Tj, T1, Fj))
        except (NotTPeriodic, PreconditionViolated) as e:
            raise InternalInvariantFailure(f"lift falhou após condição satisfeita: {e}")

    f1 = f
    for part in lifts:
        f1 = f1 - part
    if not difference(local, T1, f1).is_zero():
        raise InternalInvariantFailure("f_1 não é T_1-periódica")
    return [f1] + lifts


def decompose(action: Action, f: FnVec, cap=None) -> Union[Decomposition, ViolationCertificate]:
    """Verifica a condição e, se satisfeita, constrói f = f_1 + ... + f_n"""
    verdict = check_condition(action, f, cap=cap)
    if isinstance(verdict, ViolationCertificate):
        logger.info(f"⚠️ condição violada na órbita {verdict.orbit}")
        return verdict

    gens = [action.generator(j) for j in range(action.n)]
    parts = _decompose_split(gens, f)
    result = Decomposition(tuple(parts))
    check = verify_decomposition(action, f, result.parts)
    if not isinstance(check, Valid):
        raise InternalInvariantFailure(f"decomposição inválida: {check.reason} em {check.witness}")
    return result


def verify_decomposition(action: Action, f: FnVec, parts: Sequence[FnVec]) -> Union[Valid, Invalid]:
    if len(parts) != action.n:
        raise ShapeMismatch(f"{len(parts)} partes para {action.n} geradores")
    if len(f) != action.carrier_size or any(len(p) != action.carrier_size for p in parts):
        raise ShapeMismatch("partes com tamanho diferente do conjunto")

    for x in range(action.carrier_size):
        if sum((p[x] for p in parts), Fraction(0)) != f[x]:
            return Invalid("soma das partes difere de f", x)
    for j, part in enumerate(parts):
        delta = difference(action, action.generator(j), part)
        bad = next((x for x, v in enumerate(delta.values) if v), None)
        if bad is not None:
            return Invalid(f"parte {j + 1} não é invariante por T_{j + 1}", bad)
    return Valid()


# ---------------------------------------------------------------------------
# Oráculo linear
# ---------------------------------------------------------------------------

def oracle_system(action: Action, f: FnVec):
    """Uma incógnita por <T_j>-órbita; uma equação por ponto"""
    offsets, orbit_maps = [], []
    unknowns = 0
    for j in range(action.n):
        part = orbit_partition(action, [j])
        offsets.append(unknowns)
        orbit_maps.append(part.orbit_of)
        unknowns += len(part.orbits)

    rows = []
    for x in range(action.carrier_size):
        row = [0] * unknowns
        for j in range(action.n):
            row[offsets[j] + orbit_maps[j][x]] += 1
        rows.append(row)
    system = RatMatrixSystem.build(rows, f.values, unknowns)
    return system, offsets, orbit_maps


def oracle_feasible(action: Action, f: FnVec, ring: str = RATIONAL):
    if ring not in (RATIONAL, INTEGER):
        raise SchemaError("ring", f"anel desconhecido: {ring}")
    if len(f) != action.carrier_size:
        raise ShapeMismatch("f com tamanho diferente do conjunto")
    if ring == INTEGER:
        bad = next((x for x, v in enumerate(f.values) if v.denominator != 1), None)
        if bad is not None:
            raise NonIntegerInput(bad, f[bad])

    system, offsets, orbit_maps = oracle_system(action, f)
    result = gauss_solve(system) if ring == RATIONAL else hnf_solve_integer(system)
    if not isinstance(result, Feasible):
        return OracleInfeasible(ring, result.reason, result.equation, result.multipliers)

    y = result.solution
    parts = tuple(
        FnVec(tuple(y[offsets[j] + orbit_maps[j][x]] for x in range(action.carrier_size)))
        for j in range(action.n)
    )
    return Decomposition(parts)


def verify_infeasibility(action: Action, f: FnVec, result: OracleInfeasible) -> bool:
    """
    z com uma entrada por ponto: toda soma de z numa <T_j>-órbita é nula
    (inteira, no anel Z) e sum z(x) f(x) não é.
    """
    system, _, _ = oracle_system(action, f)
    infeasible = Infeasible(result.reason, result.equation, result.multipliers)
    return verify_infeasible(system, infeasible, integral=result.ring == INTEGER)


# -{75}
# Denominadores e Bezout
# ---------------------------------------------------------------------------

def m_bound(action: Action, orbit: Sequence[int], generators: Optional[Sequence[int]] = None) -> MBound:
    """M(T_1..T_n) = ord(T_1|orbita) * M(T_2..T_n), M(um gerador) = 1"""
    order = list(range(action.n)) if generators is None else list(generators)
    local = restrict(action, orbit)
    value, trace = 1, []
    for j in order[:-1]:
        factor = local.generator(j).order()
        value *= factor
        trace.append((j, factor))
    return MBound(value, tuple(trace))


def bezout_plan(multipliers: Sequence[int]) -> BezoutPlan:
    g, coeffs = ext_gcd(*multipliers)
    if g != 1:
        raise NotUnityCombination(g)
    return BezoutPlan(tuple(multipliers), coeffs)


def bezout_combine(decompositions: Sequence[Decomposition], plan: BezoutPlan) -> Decomposition:
    """f_j = sum_i d_i m_i f^i_j"""
    if len(plan.multipliers) != len(plan.coefficients):
        raise PlanMismatch("multiplicadores e coeficientes com tamanhos diferentes")
    if len(decompositions) != len(plan.multipliers):
        raise PlanMismatch(f"{len(decompositions)} decomposições para {len(plan.multipliers)} pesos")
    if len({len(d.parts) for d in decompositions}) > 1:
        raise PlanMismatch("decomposições com números de partes diferentes")
    total = sum(d * m for d, m in zip(plan.coefficients, plan.multipliers))
    if total != 1:
        raise NotUnityCombination(total)

    n = len(decompositions[0].parts) if decompositions else 0
    parts = []
    for j in range(n):
        acc = None
        for dec, m, d in zip(decompositions, plan.multipliers, plan.coefficients):
            term = dec.parts[j].scale(d * m)
            acc = term if acc is None else acc + term
        parts.append(acc)
    return Decomposition(tuple(parts))
