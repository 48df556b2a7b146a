#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
InvariantSplit - Linha de comando
  manage.py validate FILE
  manage.py check FILE [--exhaustive]
  manage.py decompose FILE [--constructive|--oracle] [--ring rational|integer]
  manage.py oracle FILE [--ring rational|integer]
  manage.py conditions FILE
  manage.py fuzz --seed N --count K [--max-carrier 40] [--max-gens 4]
  manage.py demo z2z2
O relatório JSON vai para stdout; logs vão para stderr (e LOG_FILE, se definido).
"""

import argparse
import logging
import os
import sys
import time
from fractions import Fraction
from typing import List, Optional

from sympy import ilcm

import config
from abelian import (
    ConditionEntry, WindowParts, WindowViolation, check_window, commensurability_classes,
    generate_conditions, solve_window, unprescribed_condition, verify_window_infeasibility,
)
from action import orbit_partition
from condition import EXHAUSTIVE, GENERATOR, ConditionPass, FnVec, check_condition
from decompose import (
    INTEGER, RATIONAL, Decomposition, Valid, decompose, m_bound, oracle_feasible, verify_decomposition,
    verify_infeasibility,
)
from errors import InputError, InternalInvariantFailure, SchemaError
from fuzz import run_fuzz
from instances import (
    TF_CONDITIONS, Z_WINDOW, Instance, Report, certificate_to_dict, infeasibility_to_dict, load_instance,
    parts_to_lists,
)
from numeric import format_rational

logger = logging.getLogger("invariantsplit")

CONSTRUCTIVE = "constructive"
ORACLE = "oracle"

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")

# tripla exibida para Z2 x Z2 com f = [0, 1, 1, 1]
Z2Z2_HALVES = (
    FnVec.of([0, Fraction(1, 2), 0, Fraction(1, 2)]),
    FnVec.of([0, 0, Fraction(1, 2), Fraction(1, 2)]),
    FnVec.of([0, Fraction(1, 2), Fraction(1, 2), 0]),
)


def setup_logging(level: Optional[str] = None):
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.LOG_FILE:
        handlers.append(logging.FileHandler(config.LOG_FILE))
    logging.basicConfig(
        level=getattr(logging, (level or config.LOG_LEVEL).upper(), logging.INFO),
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


# ---------------------------------------------------------------------------
# Auxiliares de relatório
# ---------------------------------------------------------------------------

def _denominator(parts) -> int:
    den = 1
    for part in parts:
        for v in part:
            den = int(ilcm(den, v.denominator))
    return den


def _decomposable(instance: Instance, result: Decomposition, diagnostics: dict) -> Report:
    action = instance.action()
    check = verify_decomposition(action, instance.fn(), result.parts)
    if not isinstance(check, Valid):
        raise InternalInvariantFailure(f"decomposição não confere: {check.reason} em {check.witness}")
    orbits = orbit_partition(action).orbits
    diagnostics["m_bound"] = [m_bound(action, orbit).value for orbit in orbits]
    diagnostics["denominator"] = _denominator(result.parts)
    return Report("decomposable", parts=parts_to_lists(result.parts), diagnostics=diagnostics)


def _violated(cert, diagnostics: dict) -> Report:
    return Report("not_decomposable", certificate=certificate_to_dict(cert), diagnostics=diagnostics)


def _entry_to_dict(entry: ConditionEntry) -> dict:
    return {
        "partition": entry.partition.one_based(),
        "b": [[format_rational(c) for c in b.coordinates] for b in entry.bs],
    }


def _window_certificate(violation: WindowViolation) -> dict:
    return {
        "orbit": None,
        "partition": violation.entry.partition.one_based(),
        "chosen": [[int(b.coordinates[0])] for b in violation.entry.bs],
        "witness": violation.witness,
        "value": format_rational(violation.value),
    }


def _no_decision(instance: Instance, command: str):
    raise SchemaError("mode", f"{instance.mode} não admite o comando {command}")


# ---------------------------------------------------------------------------
# Comandos
# ---------------------------------------------------------------------------

def cmd_validate(instance: Instance) -> Report:
    diagnostics = {"mode": instance.mode}
    if instance.is_finite:
        action = instance.action()
        diagnostics.update(
            carrier=action.carrier_size,
            generators=action.n,
            orbits=len(orbit_partition(action).orbits),
        )
    elif instance.mode == Z_WINDOW:
        window = instance.window_instance()
        diagnostics.update(periods=list(window.periods), window=window.window)
    else:
        classes = commensurability_classes(instance.period_vectors())
        diagnostics.update(dim=instance.dim, classes=[[i + 1 for i in c] for c in classes.classes])
    return Report("valid", diagnostics=diagnostics)


def cmd_check(instance: Instance, exhaustive: bool = False) -> Report:
    if instance.mode == TF_CONDITIONS:
        return cmd_conditions(instance)

    if instance.mode == Z_WINDOW:
        result = check_window(instance.window_instance())
        if isinstance(result, WindowViolation):
            return Report("not_decomposable", certificate=_window_certificate(result))
        return Report("conditions_only", diagnostics={
            "tested": result.tested,
            "untestable": [_entry_to_dict(e) for e in result.untestable],
        })

    action, f = instance.action(), instance.fn()
    mode = EXHAUSTIVE if exhaustive else GENERATOR
    verdict = check_condition(action, f, mode)
    if not isinstance(verdict, ConditionPass):
        return _violated(verdict, {"mode": mode})

    diagnostics = {
        "mode": mode,
        "orbits": verdict.orbits,
        "evaluated": verdict.evaluated,
        "trivial": verdict.trivial,
        "parts_from": CONSTRUCTIVE,
    }
    built = decompose(action, f)
    if not isinstance(built, Decomposition):
        raise InternalInvariantFailure("condição satisfeita mas a construção encontrou violação")
    return _decomposable(instance, built, diagnostics)


def _finite_decompose(instance: Instance, method: str, ring: str) -> Report:
    action, f = instance.action(), instance.fn()
    diagnostics = {"method": ORACLE if ring == INTEGER else method, "ring": ring}

    if method == CONSTRUCTIVE and ring == RATIONAL:
        built = decompose(action, f)
        if isinstance(built, Decomposition):
            return _decomposable(instance, built, diagnostics)
        return _violated(built, diagnostics)

    result = oracle_feasible(action, f, ring)
    if isinstance(result, Decomposition):
        return _decomposable(instance, result, diagnostics)

    verdict = check_condition(action, f)
    if not isinstance(verdict, ConditionPass):
        return _violated(verdict, diagnostics)
    if ring == RATIONAL:
        raise InternalInvariantFailure("oráculo inviável mas condição satisfeita")
    if not verify_infeasibility(action, f, result):
        raise InternalInvariantFailure(f"certificado de inviabilidade inteira não confere: {result.reason}")
    diagnostics["note"] = "decomponível sobre Q, sem decomposição inteira"
    diagnostics["reason"] = result.reason
    return Report("not_decomposable", certificate=infeasibility_to_dict(result, f.values),
                  diagnostics=diagnostics)


def _window_decompose(instance: Instance, ring: str) -> Report:
    window = instance.window_instance()
    diagnostics = {"method": "linear", "ring": ring}
    result = solve_window(window, ring)
    if isinstance(result, WindowParts):
        return Report("decomposable", parts=parts_to_lists(result.parts), diagnostics=diagnostics)

    checked = check_window(window)
    if isinstance(checked, WindowViolation):
        return Report("not_decomposable", certificate=_window_certificate(checked), diagnostics=diagnostics)
    if not verify_window_infeasibility(window, result):
        raise InternalInvariantFailure(f"certificado de inviabilidade da janela não confere: {result.reason}")
    diagnostics["note"] = "condições testáveis satisfeitas, sistema inviável"
    diagnostics["reason"] = result.reason
    return Report("not_decomposable", certificate=infeasibility_to_dict(result, window.values),
                  diagnostics=diagnostics)


def cmd_decompose(instance: Instance, method: str = CONSTRUCTIVE, ring: str = RATIONAL) -> Report:
    if ring not in (RATIONAL, INTEGER):
        raise SchemaError("ring", f"anel desconhecido: {ring}")
    if instance.is_finite:
        return _finite_decompose(instance, method, ring)
    if instance.mode == Z_WINDOW:
        return _window_decompose(instance, ring)
    _no_decision(instance, "decompose")


def cmd_oracle(instance: Instance, ring: str = RATIONAL) -> Report:
    return cmd_decompose(instance, ORACLE, ring)


def cmd_conditions(instance: Instance) -> Report:
    if instance.is_finite:
        _no_decision(instance, "conditions")
    periods = instance.period_vectors()
    conditions = generate_conditions(periods)
    unprescribed = unprescribed_condition(periods)
    return Report("conditions_only", diagnostics={
        "conditions": [_entry_to_dict(e) for e in conditions.entries],
        "trivial_count": conditions.trivial_count,
        "duplicate_count": conditions.duplicate_count,
        "unprescribed": _entry_to_dict(unprescribed),
    })


def cmd_fuzz(seed: int, count: int, max_carrier: Optional[int] = None,
             max_gens: Optional[int] = None, **kwargs) -> Report:
    summary = run_fuzz(seed, count, max_carrier, max_gens, **kwargs)
    verdict = "agreement" if summary.ok else "internal_error"
    return Report(verdict, diagnostics=summary.to_dict())


def cmd_demo(name: str) -> Report:
    if name != "z2z2":
        raise SchemaError("demo", f"demo desconhecida: {name}")
    instance = load_instance(os.path.join(FIXTURES_DIR, "z2z2.json"))
    action, f = instance.action(), instance.fn()

    checked = check_condition(action, f)
    rational = cmd_decompose(instance, CONSTRUCTIVE, RATIONAL)
    halves = verify_decomposition(action, f, Z2Z2_HALVES)
    integer = oracle_feasible(action, f, INTEGER)

    facts = {
        "check": "pass" if isinstance(checked, ConditionPass) else "violation",
        "rational": rational.verdict,
        "halves_triple": "valid" if isinstance(halves, Valid) else "invalid",
        "integer": "feasible" if isinstance(integer, Decomposition) else "infeasible",
    }
    expected = {"check": "pass", "rational": "decomposable", "halves_triple": "valid", "integer": "infeasible"}
    if facts != expected:
        raise InternalInvariantFailure(f"demo z2z2 divergiu: {facts}")
    for key, value in facts.items():
        logger.info(f"✅ {key}: {value}")

    rational.diagnostics["demo"] = facts
    return rational


# ---------------------------------------------------------------------------
# Despacho
# ---------------------------------------------------------------------------

def _dispatch(command: str, instance: Optional[Instance], options: dict) -> Report:
    if command == "validate":
        return cmd_validate(instance)
    if command == "check":
        return cmd_check(instance, options.get("exhaustive", False))
    if command == "decompose":
        return cmd_decompose(instance, options.get("method", CONSTRUCTIVE), options.get("ring", RATIONAL))
    if command == "oracle":
        return cmd_oracle(instance, options.get("ring", RATIONAL))
    if command == "conditions":
        return cmd_conditions(instance)
    raise SchemaError("command", f"comando desconhecido: {command}")


def _guarded(fn, *args, **kwargs) -> Report:
    try:
        return fn(*args, **kwargs)
    except InputError as e:
        logger.error(f"❌ {e}")
        return Report("error", diagnostics={"error": type(e).__name__, "message": str(e)})
    except Exception as e:
        logger.exception(f"❌ falha interna: {e}")
        return Report("internal_error", diagnostics={"error": type(e).__name__, "message": str(e)})


def run(command: str, instance: Optional[Instance] = None, **options) -> Report:
    """Executa um comando; erros viram relatório, nunca exceção"""
    return _guarded(_dispatch, command, instance, options)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="manage.py", description="Decomposição de funções em partes invariantes")
    ap.add_argument("cmd", choices=["validate", "check", "decompose", "oracle", "conditions", "fuzz", "demo"])
    ap.add_argument("target", nargs="?", help="arquivo da instância (ou nome da demo)")
    ap.add_argument("--exhaustive", action="store_true")
    method = ap.add_mutually_exclusive_group()
    method.add_argument("--constructive", dest="method", action="store_const", const=CONSTRUCTIVE)
    method.add_argument("--oracle", dest="method", action="store_const", const=ORACLE)
    ap.set_defaults(method=CONSTRUCTIVE)
    ap.add_argument("--ring", choices=[RATIONAL, INTEGER], default=RATIONAL)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-carrier", type=int, default=config.FUZZ_MAX_CARRIER)
    ap.add_argument("--max-gens", type=int, default=config.FUZZ_MAX_GENS)
    ap.add_argument("--timings", action="store_true", help="inclui tempos no diagnóstico")
    ap.add_argument("--log-level", default=None)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    start = time.perf_counter()

    if args.cmd == "fuzz":
        report = _guarded(cmd_fuzz, args.seed, args.count, args.max_carrier, args.max_gens)
    elif args.cmd == "demo":
        report = _guarded(cmd_demo, args.target or "z2z2")
    elif not args.target:
        report = Report("error", diagnostics={"error": "SchemaError", "message": "arquivo da instância ausente"})
    else:
        loaded = _guarded(load_instance, args.target)
        if isinstance(loaded, Report):
            report = loaded
        else:
            report = run(args.cmd, loaded, exhaustive=args.exhaustive, method=args.method, ring=args.ring)

    if args.timings:
        report.diagnostics["timings"] = {"total_s": round(time.perf_counter() - start, 6)}
    print(report.to_json())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
