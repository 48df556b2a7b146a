#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
InvariantSplit - Formato das instâncias e dos relatórios
Um documento JSON por instância; racionais sempre como string "p/q"
(ou inteiro puro) para não contaminar nada com float.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from abelian import PeriodVector, WindowInstance, finite_abelian_action
from action import Action, validate_action
from condition import FnVec, ViolationCertificate
from errors import InputError, ParseError, SchemaError
from numeric import format_rational, parse_rational

FINITE_ACTION = "finite_action"
ABELIAN_FINITE = "abelian_finite"
Z_WINDOW = "z_window"
TF_CONDITIONS = "tf_conditions"
MODES = (FINITE_ACTION, ABELIAN_FINITE, Z_WINDOW, TF_CONDITIONS)

# veredictos -> exit code
VERDICT_EXIT = {
    "decomposable": 0,
    "conditions_only": 0,
    "valid": 0,
    "agreement": 0,
    "not_decomposable": 1,
    "error": 2,
    "internal_error": 3,
}


@dataclass(frozen=True)
class Instance:
    mode: str
    size: Optional[int] = None
    perms: Optional[Tuple[Tuple[int, ...], ...]] = None
    moduli: Optional[Tuple[int, ...]] = None
    periods: Optional[Tuple[Any, ...]] = None
    window: Optional[int] = None
    dim: Optional[int] = None
    f: Optional[Tuple[Fraction, ...]] = None

    @property
    def is_finite(self) -> bool:
        return self.mode in (FINITE_ACTION, ABELIAN_FINITE)

    def action(self) -> Action:
        if self.mode == FINITE_ACTION:
            return validate_action(self.size, self.perms)
        if self.mode == ABELIAN_FINITE:
            return finite_abelian_action(self.moduli, self.periods)
        raise SchemaError("mode", f"modo {self.mode} não define uma ação finita")

    def fn(self) -> FnVec:
        return FnVec(self.f)

    def window_instance(self) -> WindowInstance:
        return WindowInstance(tuple(self.periods), self.window, tuple(self.f))

    def period_vectors(self) -> List[PeriodVector]:
        if self.mode == Z_WINDOW:
            return [PeriodVector.of(a) for a in self.periods]
        return [PeriodVector(tuple(p)) for p in self.periods]


# ---------------------------------------------------------------------------
# Leitura
# ---------------------------------------------------------------------------

def _int(value, path) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, "esperado inteiro")
    return value


def _list(value, path) -> list:
    if not isinstance(value, list):
        raise SchemaError(path, "esperada lista")
    return value


def _rationals(value, path) -> Tuple[Fraction, ...]:
    return tuple(parse_rational(v, f"{path}[{i}]") for i, v in enumerate(_list(value, path)))


def _require(doc, key):
    if key not in doc:
        raise SchemaError(key, "campo obrigatório ausente")
    return doc[key]


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"linha {e.lineno}, coluna {e.colno}", e.msg)
    if not isinstance(doc, dict):
        raise SchemaError("$", "documento deve ser um objeto")
    mode = doc.get("mode")
    if mode not in MODES:
        raise SchemaError("mode", f"esperado um de {', '.join(MODES)}")

    if mode == FINITE_ACTION:
        size = _int(_require(doc, "size"), "size")
        perms = tuple(
            tuple(_int(v, f"perms[{j}][{i}]") for i, v in enumerate(_list(p, f"perms[{j}]")))
            for j, p in enumerate(_list(_require(doc, "perms"), "perms"))
        )
        f = _rationals(_require(doc, "f"), "f")
        instance = Instance(mode, size=size, perms=perms, f=f)
        _validated(instance, "perms")
        if len(f) != size:
            raise SchemaError("f", f"{len(f)} valores para {size} pontos")

    elif mode == ABELIAN_FINITE:
        moduli = tuple(_int(m, f"moduli[{i}]") for i, m in enumerate(_list(_require(doc, "moduli"), "moduli")))
        periods = tuple(
            tuple(_int(v, f"periods[{j}][{i}]") for i, v in enumerate(_list(p, f"periods[{j}]")))
            for j, p in enumerate(_list(_require(doc, "periods"), "periods"))
        )
        f = _rationals(_require(doc, "f"), "f")
        instance = Instance(mode, moduli=moduli, periods=periods, f=f)
        action = _validated(instance, "moduli")
        if len(f) != action.carrier_size:
            raise SchemaError("f", f"{len(f)} valores para {action.carrier_size} pontos")

    elif mode == Z_WINDOW:
        periods = tuple(_int(a, f"periods[{i}]") for i, a in enumerate(_list(_require(doc, "periods"), "periods")))
        window = _int(_require(doc, "window"), "window")
        f = _rationals(_require(doc, "f"), "f")
        instance = Instance(mode, periods=periods, window=window, f=f)
        try:
            instance.window_instance()
        except InputError as e:
            raise SchemaError("window", str(e))

    else:
        dim = _int(_require(doc, "dim"), "dim")
        if dim < 1:
            raise SchemaError("dim", "deve ser >= 1")
        periods = tuple(_rationals(p, f"periods[{j}]")
                        for j, p in enumerate(_list(_require(doc, "periods"), "periods")))
        for j, p in enumerate(periods):
            if len(p) != dim:
                raise SchemaError(f"periods[{j}]", f"dimensão {len(p)}, esperado {dim}")
            if not any(p):
                raise SchemaError(f"periods[{j}]", "período nulo")
        instance = Instance(mode, dim=dim, periods=periods)

    return instance


def _validated(instance: Instance, field_name: str) -> Action:
    try:
        return instance.action()
    except InputError as e:
        raise SchemaError(field_name, str(e))


def load_instance(path: str) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(path, str(e))
    return parse_instance(text)


# ---------------------------------------------------------------------------
# Escrita
# ---------------------------------------------------------------------------

def _strs(values) -> List[str]:
    return [format_rational(Fraction(v)) for v in values]


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"mode": instance.mode}
    if instance.mode == FINITE_ACTION:
        doc["size"] = instance.size
        doc["perms"] = [list(p) for p in instance.perms]
        doc["f"] = _strs(instance.f)
    elif instance.mode == ABELIAN_FINITE:
        doc["moduli"] = list(instance.moduli)
        doc["periods"] = [list(p) for p in instance.periods]
        doc["f"] = _strs(instance.f)
    elif instance.mode == Z_WINDOW:
        doc["periods"] = list(instance.periods)
        doc["window"] = instance.window
        doc["f"] = _strs(instance.f)
    else:
        doc["dim"] = instance.dim
        doc["periods"] = [_strs(p) for p in instance.periods]
    return doc


def serialize_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2, ensure_ascii=False)


def certificate_to_dict(cert: ViolationCertificate) -> Dict[str, Any]:
    return {
        "orbit": cert.orbit,
        "partition": cert.partition.one_based(),
        "chosen": [list(S.word) for S in cert.chosen],
        "witness": cert.witness,
        "value": format_rational(cert.value),
    }


def infeasibility_to_dict(result, values: Sequence[Fraction]) -> Dict[str, Any]:
    """Certificado do sistema linear: multiplicadores por ponto e o valor sum z(x) f(x)"""
    value = sum((z * v for z, v in zip(result.multipliers, values) if z), Fraction(0))
    return {
        "orbit": None,
        "partition": None,
        "chosen": None,
        "witness": result.equation,
        "value": format_rational(value),
        "multipliers": _strs(result.multipliers),
    }


@dataclass
class Report:
    verdict: str
    parts: Optional[List[List[str]]] = None
    certificate: Optional[Dict[str, Any]] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return VERDICT_EXIT[self.verdict]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "parts": self.parts,
            "certificate": self.certificate,
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


def parts_to_lists(parts) -> List[List[str]]:
    return [_strs(p) for p in parts]
