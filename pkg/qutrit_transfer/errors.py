# -*- coding: utf-8 -*-
"""
Исключения qutrit_transfer

Библиотека сообщает об ошибках только через исключения; перевод в
консольные сообщения и коды выхода делает cli.

Иерархия:
- QutritTransferError: базовый класс
  - DomainError: недопустимые аргументы (размерности, индексы, нормировка)
  - InvariantViolation: нарушен численный инвариант (код выхода 2)
    - IntegrationError: дрейф нормы при интегрировании
    - PulseSingularityError: форма импульса не определена (α₂ ≈ 0)
    - ProtocolInconsistencyError: не найдена согласованная коррекция QSS
  - ConfigurationError: неполная конфигурация или таблица коррекций
    - ConfigParseError: ошибка в документе конфигурации (код выхода 1)
"""


class QutritTransferError(Exception):
    """Базовое исключение пакета"""


class DomainError(QutritTransferError, ValueError):
    """Аргумент вне области определения операции"""


class InvariantViolation(QutritTransferError):
    """Численный инвариант не выполнен"""


class IntegrationError(InvariantViolation):
    """
    Дрейф нормы канала превысил допуск

    Args:
        drift (float): Максимальное отклонение нормы от 1
        dt (float): Шаг интегрирования, на котором произошёл сбой
    """

    def __init__(self, drift, dt):
        self.drift = drift
        self.dt = dt
        super().__init__(
            f"дрейф нормы {drift:.3e} превышает допуск при dt={dt:g}; "
            f"уменьшите шаг интегрирования (например, dt={dt / 2:g})"
        )


class PulseSingularityError(InvariantViolation):
    """
    Форма импульса не определена: α₂(t) ≈ 0 при ненулевом числителе

    Args:
        t (float): Момент времени, где возникла особенность
        numerator (float): Значение числителя формулы зеркального импульса
    """

    def __init__(self, t, numerator):
        self.t = t
        self.numerator = numerator
        super().__init__(
            f"α₂({t:g}) ≈ 0 при числителе {numerator:.3e}: форма импульса не определена"
        )


class ProtocolInconsistencyError(InvariantViolation):
    """
    Ни одна коррекция X^a Z^b не восстанавливает состояние в ветви

    Args:
        branch (tuple): Исходы (m, mu, l) ветви измерения
    """

    def __init__(self, branch, detail=""):
        self.branch = tuple(branch)
        message = f"нет согласованной коррекции для ветви (m, mu, l) = {self.branch}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class ConfigurationError(QutritTransferError):
    """Неполная конфигурация"""


class ConfigParseError(ConfigurationError):
    """
    Ошибка разбора документа конфигурации

    Args:
        field (str): Имя поля (или None для синтаксических ошибок)
        line (int): Номер строки документа, начиная с 1 (или None)
        reason (str): Описание ошибки
    """

    def __init__(self, field, line, reason):
        self.field = field
        self.line = line
        self.reason = reason
        where = []
        if field:
            where.append(f"поле '{field}'")
        if line:
            where.append(f"строка {line}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {reason}" if prefix else reason)
