# -*- coding: utf-8 -*-
"""
qutrit_transfer - перенос состояний кутритов между каскадными полостями

Модули:
- qudit_core: векторы состояний регистра кудитов, унитарные операции, измерения
- gates: Фурье, XOR, X/Z, вложенные и управляемые операции, базис Белла
- transfer: форма импульсов, уравнения каналов, перенос кутрита
- protocols: распределение запутанности, (анти)симметричные состояния, QSS
- config, export, cli: конфигурация сценариев, файлы результатов, командная строка
"""

from .errors import (
    ConfigParseError,
    ConfigurationError,
    DomainError,
    IntegrationError,
    InvariantViolation,
    ProtocolInconsistencyError,
    PulseSingularityError,
    QutritTransferError,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigParseError",
    "ConfigurationError",
    "DomainError",
    "IntegrationError",
    "InvariantViolation",
    "ProtocolInconsistencyError",
    "PulseSingularityError",
    "QutritTransferError",
]
