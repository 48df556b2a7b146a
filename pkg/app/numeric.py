#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
InvariantSplit - Aritmética exata
- Racionais canônicos (fractions.Fraction)
- Coeficientes de Bezout para k inteiros
- MMC de racionais positivos
- Eliminação gaussiana exata
- Viabilidade inteira via forma normal de Hermite
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.core.intfunc import igcd, igcdex, ilcm

from errors import (
    EmptyInput, NonIntegerEntry, NonPositive, ParseError, ShapeMismatch, ZeroElement,
)

logger = logging.getLogger(__name__)

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


def parse_rational(value, path="$") -> Fraction:
    """Aceita "p/q", "p" ou int; rejeita floats e decimais"""
    if isinstance(value, bool):
        raise ParseError(path, "booleano não é racional")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise ParseError(path, "denominador zero")
    raise ParseError(path, f"não é um racional exato: {value!r}")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def ext_gcd(*ms: int) -> Tuple[int, Tuple[int, ...]]:
    """
    Retorna (g, d) com g = mdc(|m_1|,...,|m_k|) e sum(d_i * m_i) = g.
    """
    if not ms:
        raise EmptyInput("lista de inteiros")
    for i, m in enumerate(ms):
        if m == 0:
            raise ZeroElement(i)

    g = abs(int(ms[0]))
    coeffs = [1 if ms[0] > 0 else -1]
    for m in ms[1:]:
        x, y, g_new = (int(v) for v in igcdex(g, int(m)))
        coeffs = [c * x for c in coeffs] + [y]
        g = g_new

    assert sum(d * m for d, m in zip(coeffs, ms)) == g
    return g, tuple(coeffs)


def rational_lcm(q1: Fraction, q2: Fraction) -> Fraction:
    """mmc(p1/r1, p2/r2) = mmc(p1, p2) / mdc(r1, r2)"""
    q1, q2 = Fraction(q1), Fraction(q2)
    for q in (q1, q2):
        if q <= 0:
            raise NonPositive(q)
    return Fraction(int(ilcm(q1.numerator, q2.numerator)),
                    int(igcd(q1.denominator, q2.denominator)))


def rational_lcm_many(*qs: Fraction) -> Fraction:
    if not qs:
        raise EmptyInput("lista de racionais")
    if len(qs) == 1:
        if qs[0] <= 0:
            raise NonPositive(qs[0])
        return Fraction(qs[0])
    return reduce(rational_lcm, qs)


@dataclass(frozen=True)
class RatMatrixSystem:
    """Sistema A x = b com coeficientes racionais"""
    coefficients: Tuple[Tuple[Fraction, ...], ...]
    rhs: Tuple[Fraction, ...]
    unknowns: int

    def __post_init__(self):
        if self.unknowns < 0:
            raise ShapeMismatch("número de incógnitas negativo")
        if len(self.coefficients) != len(self.rhs):
            raise ShapeMismatch(
                f"{len(self.coefficients)} linhas e {len(self.rhs)} termos independentes")
        for i, row in enumerate(self.coefficients):
            if len(row) != self.unknowns:
                raise ShapeMismatch(f"linha {i} tem {len(row)} colunas, esperado {self.unknowns}")

    @classmethod
    def build(cls, rows: Sequence[Sequence], rhs: Sequence, unknowns: int = None):
        if unknowns is None:
            unknowns = len(rows[0]) if rows else 0
        return cls(
            coefficients=tuple(tuple(Fraction(v) for v in row) for row in rows),
            rhs=tuple(Fraction(v) for v in rhs),
            unknowns=unknowns,
        )

    def satisfied_by(self, solution: Sequence[Fraction]) -> bool:
        if len(solution) != self.unknowns:
            return False
        return all(
            sum((a * x for a, x in zip(row, solution) if a), Fraction(0)) == b
            for row, b in zip(self.coefficients, self.rhs)
        )


@dataclass(frozen=True)
class Feasible:
    solution: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    """
    multipliers: z com uma entrada por equação tal que z A = 0 e z b != 0
    (racional) ou z A inteiro e z b fora de Z (inteiro); equation é a
    equação em que a eliminação parou.
    """
    reason: str = ""
    equation: Optional[int] = None
    multipliers: Tuple[Fraction, ...] = ()


SolveResult = Union[Feasible, Infeasible]


def _eliminate(system: RatMatrixSystem, track: bool):
    # linhas esparsas: coluna -> valor; combos[i] = linha i como combinação das originais
    rows = [{c: v for c, v in enumerate(row) if v} for row in system.coefficients]
    rhs = list(system.rhs)
    combos: List[Dict[int, Fraction]] = [{i: Fraction(1)} for i in range(len(rows))] if track else []
    used = [False] * len(rows)
    pivots = {}

    for col in range(system.unknowns):
        pivot = next((i for i, r in enumerate(rows) if not used[i] and col in r), None)
        if pivot is None:
            continue
        used[pivot] = True
        head = rows[pivot][col]
        prow = {c: v / head for c, v in rows[pivot].items()}
        rows[pivot] = prow
        rhs[pivot] /= head
        if track:
            combos[pivot] = {k: v / head for k, v in combos[pivot].items()}

        for i, row in enumerate(rows):
            if i == pivot or col not in row:
                continue
            factor = row[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            rhs[i] -= factor * rhs[pivot]
            if track:
                combo = combos[i]
                for k, v in combos[pivot].items():
                    nv = combo.get(k, 0) - factor * v
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
        pivots[col] = pivot

    return rows, rhs, pivots, combos


def gauss_solve(system: RatMatrixSystem) -> SolveResult:
    """
    Gauss-Jordan exato. Pivô = primeira linha livre com entrada não nula
    na coluna; variáveis livres valem 0.
    """
    rows, rhs, pivots, _ = _eliminate(system, track=False)

    bad = next((i for i, row in enumerate(rows) if not row and rhs[i] != 0), None)
    if bad is not None:
        logger.debug(f"sistema inconsistente na linha {bad}")
        # segunda passada, agora com as combinações
        _, _, _, combos = _eliminate(system, track=True)
        z = [Fraction(0)] * len(rows)
        for k, v in combos[bad].items():
            z[k] = v
        return Infeasible(f"equação {bad} inconsistente", bad, tuple(z))

    solution = [Fraction(0)] * system.unknowns
    for col, i in pivots.items():
        solution[col] = rhs[i]
    return Feasible(tuple(solution))


def _integer_rows(system: RatMatrixSystem):
    rows = []
    for i, row in enumerate(system.coefficients):
        for j, v in enumerate(row):
            if v.denominator != 1:
                raise NonIntegerEntry(i, j, v)
        rows.append([v.numerator for v in row])
    for i, v in enumerate(system.rhs):
        if v.denominator != 1:
            raise NonIntegerEntry(i, system.unknowns, v)
    return rows, [v.numerator for v in system.rhs]


def column_hermite(rows, n_cols):
    """
    Forma de Hermite por colunas: A U = H com U unimodular.
    Retorna (H, U, pivots) com pivots = [(linha, coluna), ...].
    """
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    m = len(A)
    pivots = []
    col = 0

    def combine(j, k, a, b, c, d):
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
        for M in (A, U):
            for r in M:
                x, y = r[j], r[k]
                r[j], r[k] = a * x + b * y, c * x + d * y

    for r in range(m):
        if col >= n_cols:
            break
        for j in range(col + 1, n_cols):
            b = A[r][j]
            if b == 0:
                continue
            a = A[r][col]
            if a == 0:
                combine(col, j, 0, 1, 1, 0)
                continue
            x, y, g = (int(v) for v in igcdex(a, b))
            combine(col, j, x, y, -(b // g), a // g)
        if A[r][col] == 0:
            continue
        if A[r][col] < 0:
            for M in (A, U):
                for row in M:
                    row[col] = -row[col]
        head = A[r][col]
        # redução das colunas anteriores módulo o pivô
        for c in range(col):
            q = A[r][c] // head
            if q:
                for M in (A, U):
                    for row in M:
                        row[c] -= q * row[col]
        pivots.append((r, col))
        col += 1

    return A, U, pivots


def _pivot_dual(H, pivots, target, m: int) -> List[Fraction]:
    """z nas linhas pivô com (z H)_c = target[c] para cada coluna pivô c"""
    z = [Fraction(0)] * m
    for k in reversed(range(len(pivots))):
        r, c = pivots[k]
        acc = Fraction(target[c]) - sum((z[pr] * H[pr][c] for pr, _ in pivots[k + 1:]), Fraction(0))
        z[r] = acc / H[r][c]
    return z


def hnf_solve_integer(system: RatMatrixSystem) -> SolveResult:
    """
    Decide se A x = b tem solução inteira.
    A U = H (Hermite de A^T, por colunas); resolve H y = b e devolve x = U y.
    Na falha, z H é inteiro (logo z A = z H U^-1 também) e z b não é.
    """
    rows, rhs = _integer_rows(system)
    n, m = system.unknowns, len(rows)
    H, U, pivots = column_hermite(rows, n)

    y = [0] * n
    for r, c in pivots:
        residual = rhs[r] - sum(H[r][i] * y[i] for i in range(c))
        if residual % H[r][c] != 0:
            z = _pivot_dual(H, pivots, [int(i == c) for i in range(n)], m)
            return Infeasible(f"equação {r} sem solução inteira", r, tuple(z))
        y[c] = residual // H[r][c]

    for r, row in enumerate(H):
        residual = rhs[r] - sum(h * v for h, v in zip(row, y) if h)
        if residual:
            w = _pivot_dual(H, pivots, row, m)
            z = [-v for v in w]
            z[r] += 1
            # z H = 0 e z b = residual; escala para z b = 1/2
            scale = Fraction(1, 2 * residual)
            return Infeasible(f"equação {r} inconsistente", r, tuple(v * scale for v in z))

    x = [sum(U[i][k] * y[k] for k in range(n) if y[k]) for i in range(n)]
    return Feasible(tuple(Fraction(v) for v in x))


def verify_infeasible(system: RatMatrixSystem, result: Infeasible, integral: bool) -> bool:
    """Confere o certificado: z A nulo (ou inteiro) e z b não nulo (ou fora de Z)"""
    z = result.multipliers
    if len(z) != len(system.coefficients):
        return False
    combined = [
        sum((w * row[j] for w, row in zip(z, system.coefficients) if w), Fraction(0))
        for j in range(system.unknowns)
    ]
    value = sum((w * b for w, b in zip(z, system.rhs) if w), Fraction(0))
    if integral:
        return all(v.denominator == 1 for v in combined) and value.denominator != 1
    return not any(combined) and value != 0
