#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
InvariantSplit - Validação cruzada aleatória
- Instâncias que comutam por construção: translações em grupos abelianos
  finitos e potências de uma única permutação
- f como soma de funções periódicas (deve passar) ou perturbada
- Checker, oráculo linear e construção indutiva precisam concordar
- Execução paralela (ThreadPoolExecutor), resumo ordenado por instância
"""

import hashlib
import logging
import random
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

import config
from abelian import (
    WindowInstance, WindowParts, WindowViolation, check_window, finite_abelian_action, solve_window,
)
from action import Action, GroupElement, orbit_partition, validate_action
from condition import EXHAUSTIVE, ConditionPass, FnVec, check_condition, verify_certificate
from decompose import RATIONAL, Decomposition, Valid, decompose, m_bound, oracle_feasible, verify_decomposition
from errors import InputError, InternalInvariantFailure
from instances import ABELIAN_FINITE, FINITE_ACTION, Z_WINDOW, Instance, instance_to_dict

logger = logging.getLogger(__name__)

TRANSLATIONS = "translations"
POWERS = "powers"

Checker = Callable[[Action, FnVec], Any]


def derive_seed(seed: int, *parts: object) -> int:
    h = hashlib.blake2b(digest_size=8)
    h.update(str(seed).encode("utf-8"))
    for part in parts:
        h.update(b"|")
        h.update(str(part).encode("utf-8"))
    return int.from_bytes(h.digest(), byteorder="big", signed=False)


@dataclass(frozen=True)
class FuzzCase:
    index: int
    seed: int
    kind: str
    instance: Instance
    action: Action
    f: FnVec
    expected_pass: bool


@dataclass
class CaseOutcome:
    index: int
    seed: int
    kind: str
    verdicts: Dict[str, Optional[bool]]
    problems: List[str] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)
    exhaustive_compared: bool = False
    window_failed: bool = False

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts.values())) == 1 and None not in self.verdicts.values()

    @property
    def failed(self) -> bool:
        return not self.agree or bool(self.problems)


@dataclass
class FuzzSummary:
    seed: int
    count: int
    max_carrier: int
    max_gens: int
    outcomes: List[CaseOutcome]
    reproducer: Optional[Instance] = None

    @property
    def failures(self) -> List[CaseOutcome]:
        return [o for o in self.outcomes if o.failed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        outcomes = self.outcomes
        return {
            "seed": self.seed,
            "count": self.count,
            "max_carrier": self.max_carrier,
            "max_gens": self.max_gens,
            "agreements": sum(1 for o in outcomes if o.agree),
            "disagreements": sum(1 for o in outcomes if not o.agree),
            "decomposable": sum(1 for o in outcomes if o.agree and o.verdicts["oracle"]),
            "not_decomposable": sum(1 for o in outcomes if o.agree and not o.verdicts["oracle"]),
            "exhaustive_compared": sum(1 for o in outcomes if o.exhaustive_compared),
            "window_failures": sum(1 for o in outcomes if o.window_failed),
            "failures": [
                {"index": o.index, "seed": o.seed, "kind": o.kind, "problems": o.problems}
                for o in self.failures
            ],
            "findings": [
                {"index": o.index, "seed": o.seed, "note": note}
                for o in outcomes for note in o.findings
            ],
            "reproducer": instance_to_dict(self.reproducer) if self.reproducer else None,
        }


# ---------------------------------------------------------------------------
# Geração
# ---------------------------------------------------------------------------

def _random_translations(rng: random.Random, max_carrier: int, max_gens: int):
    two_dims = max_carrier >= 4 and rng.random() < 0.5
    if two_dims:
        m1 = rng.randint(1, max_carrier // 2)
        moduli = (m1, rng.randint(2, max_carrier // m1))
    else:
        moduli = (rng.randint(1, max_carrier),)
    n = rng.randint(1, max_gens)
    periods = tuple(tuple(rng.randrange(m) for m in moduli) for _ in range(n))
    return moduli, periods, finite_abelian_action(moduli, periods)


def _random_powers(rng: random.Random, max_carrier: int, max_gens: int) -> Action:
    m = rng.randint(1, max_carrier)
    base = list(range(m))
    rng.shuffle(base)
    element = GroupElement(tuple(base), (1,))
    n = rng.randint(1, max_gens)
    gens = [element.power(rng.randint(0, 2 * m)).permutation for _ in range(n)]
    return validate_action(m, gens)


def _periodic_sum(rng: random.Random, action: Action) -> List[Fraction]:
    f = [Fraction(0)] * action.carrier_size
    for j in range(action.n):
        part = orbit_partition(action, [j])
        values = [rng.randint(-3, 3) for _ in part.orbits]
        for x in range(action.carrier_size):
            f[x] += values[part.orbit_of[x]]
    return f


def generate_case(seed: int, index: int, max_carrier: int, max_gens: int) -> FuzzCase:
    case_seed = derive_seed(seed, index)
    rng = random.Random(case_seed)
    if rng.random() < 0.5:
        kind = TRANSLATIONS
        moduli, periods, action = _random_translations(rng, max_carrier, max_gens)
    else:
        kind = POWERS
        action = _random_powers(rng, max_carrier, max_gens)

    f = _periodic_sum(rng, action)
    expected_pass = rng.random() < 0.5
    if not expected_pass:
        x = rng.randrange(action.carrier_size)
        f[x] += rng.choice((-2, -1, 1, 2))

    if kind == TRANSLATIONS:
        instance = Instance(ABELIAN_FINITE, moduli=moduli, periods=periods, f=tuple(f))
    else:
        instance = Instance(FINITE_ACTION, size=action.carrier_size, perms=action.generators, f=tuple(f))
    return FuzzCase(index, case_seed, kind, instance, action, FnVec(tuple(f)), expected_pass)


def generate_window_case(seed: int, index: int) -> Tuple[WindowInstance, bool]:
    rng = random.Random(derive_seed(seed, index, "window"))
    periods = tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 3)))
    window = rng.randint(1, 2 * max(periods) * len(periods) + 4)
    values = [Fraction(0)] * window
    for a in periods:
        residues = [rng.randint(-3, 3) for _ in range(a)]
        for x in range(window):
            values[x] += residues[x % a]
    expected_pass = rng.random() < 0.5
    if not expected_pass:
        values[rng.randrange(window)] += rng.choice((-1, 1))
    return WindowInstance(periods, window, tuple(values)), expected_pass


# ---------------------------------------------------------------------------
# Avaliação
# ---------------------------------------------------------------------------

def _check_m_bound(action: Action, result: Decomposition, problems: List[str]):
    for orbit in orbit_partition(action).orbits:
        bound = m_bound(action, orbit).value
        for j, part in enumerate(result.parts):
            if any((bound * part[x]).denominator != 1 for x in orbit):
                problems.append(f"parte {j + 1} excede o denominador {bound} na órbita {orbit[0]}")
                return


def evaluate_case(case: FuzzCase, checker: Checker = check_condition,
                  exhaustive_carrier: Optional[int] = None) -> CaseOutcome:
    exhaustive_carrier = config.FUZZ_EXHAUSTIVE_CARRIER if exhaustive_carrier is None else exhaustive_carrier
    action, f = case.action, case.f
    problems: List[str] = []

    verdict = checker(action, f)
    by_checker = isinstance(verdict, ConditionPass)
    if not by_checker and not verify_certificate(action, f, verdict):
        problems.append("certificado não confere")

    oracle = oracle_feasible(action, f, RATIONAL)
    by_oracle = isinstance(oracle, Decomposition)
    if by_oracle and not isinstance(verify_decomposition(action, f, oracle.parts), Valid):
        problems.append("decomposição do oráculo não confere")

    by_constructor: Optional[bool]
    try:
        built = decompose(action, f)
        by_constructor = isinstance(built, Decomposition)
        if by_constructor and f.is_integral():
            _check_m_bound(action, built, problems)
    except InternalInvariantFailure as e:
        by_constructor = None
        problems.append(f"construção falhou: {e}")

    if case.expected_pass and not by_oracle:
        problems.append("soma de periódicas rejeitada")

    compared = False
    if action.carrier_size <= exhaustive_carrier and by_constructor is not None:
        compared = True
        exhaustive = check_condition(action, f, EXHAUSTIVE)
        if isinstance(exhaustive, ConditionPass) != by_constructor:
            problems.append("modo exaustivo diverge do modo gerador")
        elif not isinstance(exhaustive, ConditionPass) and not verify_certificate(action, f, exhaustive):
            problems.append("certificado exaustivo não confere")

    verdicts = {"check": by_checker, "oracle": by_oracle, "constructive": by_constructor}
    return CaseOutcome(case.index, case.seed, case.kind, verdicts, problems, exhaustive_compared=compared)


def evaluate_window(instance: WindowInstance, expected_pass: bool) -> Tuple[List[str], List[str]]:
    """(problemas, achados) de uma instância de janela"""
    problems, findings = [], []
    solved = solve_window(instance, RATIONAL)
    checked = check_window(instance)
    if isinstance(solved, WindowParts):
        expanded = solved.expand(instance.window)
        if any(sum(p[x] for p in expanded) != instance.values[x] for x in range(instance.window)):
            problems.append("janela: partes não somam f")
        if isinstance(checked, WindowViolation):
            problems.append("janela: condição violada em dado decomponível")
    else:
        if expected_pass:
            problems.append("janela: soma de periódicas rejeitada")
        if not isinstance(checked, WindowViolation) and not checked.untestable:
            findings.append(f"janela {instance.periods}/{instance.window}: condições passam mas sistema inviável")
    return problems, findings


def _run_one(seed: int, index: int, max_carrier: int, max_gens: int,
             checker: Checker, exhaustive_carrier: Optional[int]) -> CaseOutcome:
    case = generate_case(seed, index, max_carrier, max_gens)
    outcome = evaluate_case(case, checker, exhaustive_carrier)
    window, expected = generate_window_case(seed, index)
    problems, findings = evaluate_window(window, expected)
    if problems:
        outcome.window_failed = True
        outcome.problems.extend(problems)
    outcome.findings.extend(findings)
    return outcome


# ---------------------------------------------------------------------------
# Minimização
# ---------------------------------------------------------------------------

def _fails(size: int, perms, f, checker: Checker) -> bool:
    try:
        action = validate_action(size, perms)
    except InputError:
        return False
    instance = Instance(FINITE_ACTION, size=size, perms=tuple(perms), f=tuple(f))
    case = FuzzCase(-1, 0, FINITE_ACTION, instance, action, FnVec(tuple(f)), False)
    try:
        return evaluate_case(case, checker).failed
    except InputError:
        return False


def minimize(case: FuzzCase, checker: Checker = check_condition) -> Instance:
    """Zera valores de f e remove geradores enquanto a divergência persistir"""
    size = case.action.carrier_size
    perms = list(case.action.generators)
    f = list(case.f.values)

    for x in range(size):
        if f[x]:
            trial = f[:x] + [Fraction(0)] + f[x + 1:]
            if _fails(size, perms, trial, checker):
                f = trial

    j = 0
    while j < len(perms) and len(perms) > 1:
        trial = perms[:j] + perms[j + 1:]
        if _fails(size, trial, f, checker):
            perms = trial
        else:
            j += 1

    logger.info(f"🔍 reprodutor: {size} pontos, {len(perms)} geradores")
    return Instance(FINITE_ACTION, size=size, perms=tuple(perms), f=tuple(f))


# ---------------------------------------------------------------------------
# Execução
# ---------------------------------------------------------------------------

def run_fuzz(seed: int, count: int, max_carrier: Optional[int] = None, max_gens: Optional[int] = None,
             checker: Checker = check_condition, workers: Optional[int] = None,
             exhaustive_carrier: Optional[int] = None) -> FuzzSummary:
    max_carrier = config.FUZZ_MAX_CARRIER if max_carrier is None else max_carrier
    max_gens = config.FUZZ_MAX_GENS if max_gens is None else max_gens
    workers = config.MAX_WORKERS if workers is None else workers
    if count < 1 or max_carrier < 1 or max_gens < 1:
        raise InputError("count, max-carrier e max-gens devem ser >= 1")

    logger.info(f"🔍 fuzz seed={seed}: {count} instâncias, até {max_carrier} pontos e {max_gens} geradores")
    outcomes: Dict[int, CaseOutcome] = {}
    with ThreadPoolExecutor(max_workers=workers) as ex:
        futures = {
            ex.submit(_run_one, seed, i, max_carrier, max_gens, checker, exhaustive_carrier): i
            for i in range(count)
        }
        for done, fut in enumerate(as_completed(futures), 1):
            outcomes[futures[fut]] = fut.result()
            if done % 100 == 0:
                logger.info(f"📊 {done}/{count} instâncias avaliadas")

    ordered = [outcomes[i] for i in range(count)]
    summary = FuzzSummary(seed, count, max_carrier, max_gens, ordered)

    failures = summary.failures
    if failures:
        first = failures[0]
        logger.warning(f"❌ {len(failures)} divergências; primeira na instância {first.index}")
        window_only = first.agree and all(p.startswith("janela") for p in first.problems)
        if window_only:
            window, _ = generate_window_case(seed, first.index)
            summary.reproducer = Instance(Z_WINDOW, periods=window.periods, window=window.window, f=window.values)
        else:
            summary.reproducer = minimize(generate_case(seed, first.index, max_carrier, max_gens), checker)
    else:
        logger.info(f"✅ {count}/{count} instâncias em acordo")
    return summary
