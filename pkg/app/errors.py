#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Hierarquia de exceções do InvariantSplit.

Erros de entrada (InputError) viram exit code 2 no manage.py;
InternalInvariantFailure vira exit code 3.
Números de geradores são 1-based, índices de pontos são 0-based.
"""


class InvariantSplitError(Exception):
    """Raiz de todas as exceções do projeto"""


class InputError(InvariantSplitError):
    """Entrada inválida fornecida pelo usuário"""


class InternalInvariantFailure(InvariantSplitError):
    """Invariante interno quebrado - indica bug na implementação"""


# --- numeric ---

class EmptyInput(InputError):
    def __init__(self, what="entrada"):
        super().__init__(f"{what} vazia")


class ZeroElement(InputError):
    def __init__(self, position):
        self.position = position
        super().__init__(f"elemento nulo na posição {position}")


class NonPositive(InputError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"valor não positivo: {value}")


class ShapeMismatch(InputError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"formato incompatível: {reason}")


class NonIntegerEntry(InputError):
    def __init__(self, row, col, value):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"entrada não inteira em ({row}, {col}): {value}")


class NonIntegerInput(InputError):
    def __init__(self, point, value):
        self.point, self.value = point, value
        super().__init__(f"valor não inteiro no ponto {point}: {value}")


# --- action ---

class NonBijective(InputError):
    def __init__(self, generator, image):
        self.generator, self.image = generator, image
        super().__init__(f"gerador {generator} não é bijetor: imagem {image} repetida")


class NonCommuting(InputError):
    def __init__(self, first, second, point):
        self.first, self.second, self.point = first, second, point
        super().__init__(f"geradores {first} e {second} não comutam no ponto {point}")


class EmptySubset(InputError):
    def __init__(self):
        super().__init__("subconjunto de geradores vazio")


class EmptyBlock(InputError):
    def __init__(self):
        super().__init__("bloco vazio")


class CapExceeded(InputError):
    def __init__(self, value, cap):
        self.value, self.cap = value, cap
        super().__init__(f"limite excedido: {value} > {cap}")


# --- decompose ---

class NotTPeriodic(InputError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"G não é T-periódica (ponto {point})")


class PreconditionViolated(InputError):
    def __init__(self, cycle, total):
        self.cycle, self.total = cycle, total
        super().__init__(f"soma {total} != 0 no ciclo {list(cycle)}")


class PlanMismatch(InputError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"plano de Bezout incompatível: {reason}")


class NotUnityCombination(InputError):
    def __init__(self, total):
        self.total = total
        super().__init__(f"sum(d_i * m_i) = {total}, esperado 1")


# --- abelian ---

class ZeroPeriod(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"período {index} é nulo")


class NotParallel(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"período {index} não é paralelo aos demais")


class BadModulus(InputError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"módulo inválido: {reason}")


# --- cli ---

class ParseError(InputError):
    def __init__(self, path, reason):
        self.path, self.reason = path, reason
        super().__init__(f"erro de leitura em {path}: {reason}")


class SchemaError(InputError):
    def __init__(self, field, reason=""):
        self.field, self.reason = field, reason
        super().__init__(f"campo inválido '{field}'" + (f": {reason}" if reason else ""))
