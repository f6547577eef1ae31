# -*- coding: utf-8 -*-
"""
Именованные конструкторы унитарных операций для кудитов

Дискретное преобразование Фурье F^(D), три варианта условной операции
XOR^(D) (левая модульная разность, модульная сумма, правая модульная
разность), операторы X и Z (сдвиг и часы), вложение кубитных операций в
подпространство кудита, программа U^(D) симметризатора и обобщённый
базис Белла |Φ_{m,μ}⟩ = XOR F |m⟩|μ⟩.

Соглашения:
- В двухпроводных операциях управляющий провод всегда первый.
- Произведение операторов в записи U = A·B выполняется справа налево,
  поэтому программа U^(D) сначала применяет F к проводу 0.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .qudit_core import GateMatrix, apply_unitary, make_product, measure_wires

logger = logging.getLogger(__name__)

MAX_DIM = 8


@dataclass(frozen=True)
class BellLabel:
    """
    Индексы состояния Белла |Φ_{m,μ}⟩

    Args:
        m (int): Фазовый индекс, приводится по модулю dim
        mu (int): Индекс сдвига, приводится по модулю dim
        dim (int): Размерность кудита D
    """

    m: int
    mu: int
    dim: int = 3

    def __post_init__(self):
        if self.dim < 2:
            raise DomainError(f"размерность должна быть ≥ 2, получено {self.dim}")
        object.__setattr__(self, "m", int(self.m) % self.dim)
        object.__setattr__(self, "mu", int(self.mu) % self.dim)

    @property
    def index(self):
        """Базисный индекс |m⟩|μ⟩ в повёрнутом кадре"""
        return self.m * self.dim + self.mu

    @classmethod
    def from_index(cls, index, dim=3):
        return cls(index // dim, index % dim, dim)


class GateStep(NamedTuple):
    """Один шаг программы: провода и матрица"""

    wires: tuple
    gate: GateMatrix


def run_program(state, program):
    """Последовательное применение шагов программы к состоянию"""
    for step in program:
        state = apply_unitary(state, step.wires, step.gate)
    return state


def _check_dim(D, minimum=2):
    D = int(D)
    if D < minimum:
        raise DomainError(f"размерность должна быть ≥ {minimum}, получено {D}")
    if D > MAX_DIM:
        raise DomainError(f"размерность {D} больше поддерживаемой {MAX_DIM}")
    return D


def fourier(D):
    """
    Дискретное преобразование Фурье F^(D)

    F|j⟩ = Σ_l e^{2πi·l·j/D}|l⟩/√D

    Raises:
        DomainError: D < 1
    """
    D = _check_dim(D, minimum=1)
    phases = np.outer(np.arange(D), np.arange(D))
    return GateMatrix(D, np.exp(2j * np.pi * phases / D) / np.sqrt(D))


def hadamard():
    return fourier(2)


def _controlled_permutation(D, rule):
    D = _check_dim(D)
    entries = np.zeros((D * D, D * D))
    for i, j in itertools.product(range(D), repeat=2):
        entries[i * D + rule(i, j) % D, i * D + j] = 1.0
    return GateMatrix(D * D, entries)


def xor_lmd(D):
    """XOR левой модульной разности: |i⟩|j⟩ → |i⟩|i ⊖ j⟩, самообратная"""
    return _controlled_permutation(D, lambda i, j: i - j)


def xor_ma(D):
    """XOR модульной суммы: |i⟩|j⟩ → |i⟩|i ⊕ j⟩, (XOR_ma)^D = I"""
    return _controlled_permutation(D, lambda i, j: i + j)


def xor_rmd(D):
    """XOR правой модульной разности: |i⟩|j⟩ → |i⟩|j ⊖ i⟩, (XOR_rmd)^D = I"""
    return _controlled_permutation(D, lambda i, j: j - i)


def pauli_x(D):
    """Циклический сдвиг X = Σ|n+1⟩⟨n|"""
    D = _check_dim(D)
    return GateMatrix(D, np.roll(np.eye(D), shift=1, axis=0))


def pauli_z(D):
    """Фазовый оператор Z = Σ ω(n)|n⟩⟨n|, ω(n) = e^{2πin/D}"""
    D = _check_dim(D)
    return GateMatrix(D, np.diag(np.exp(2j * np.pi * np.arange(D) / D)))


def weyl(D, a, b):
    """Оператор X^a Z^b"""
    return pauli_x(D).power(a % D) @ pauli_z(D).power(b % D)


def embedded_qubit_gate(D, level_a, level_b, g):
    """
    Вложение кубитной операции в подпространство span{|level_a⟩, |level_b⟩}

    Уровень level_a играет роль |0⟩ кубита, level_b - роль |1⟩;
    на остальных уровнях действует тождественно.

    Args:
        D (int): Размерность кудита
        level_a (int): Уровень, соответствующий |0⟩
        level_b (int): Уровень, соответствующий |1⟩
        g (GateMatrix): Унитарная матрица 2×2

    Raises:
        DomainError: Повторяющиеся или недопустимые уровни
    """
    D = _check_dim(D)
    if level_a == level_b:
        raise DomainError(f"уровни должны различаться, получено {level_a} и {level_b}")
    for level in (level_a, level_b):
        if not 0 <= level < D:
            raise DomainError(f"уровень {level} вне диапазона [0, {D})")
    if g.dim != 2:
        raise DomainError(f"ожидалась матрица 2×2, получено {g.dim}×{g.dim}")

    entries = np.eye(D, dtype=complex)
    levels = [level_a, level_b]
    entries[np.ix_(levels, levels)] = g.entries
    return GateMatrix(D, entries)


def controlled_gate(D, control_level, g):
    """
    Двухпроводная операция: g на мишени, если управляющий провод в |control_level⟩

    Returns:
        GateMatrix: Матрица D²×D², управляющий провод первый
    """
    D = _check_dim(D)
    if not 0 <= control_level < D:
        raise DomainError(f"управляющий уровень {control_level} вне диапазона [0, {D})")
    if g.dim != D:
        raise DomainError(f"ожидалась матрица {D}×{D}, получено {g.dim}×{g.dim}")

    entries = np.zeros((D * D, D * D), dtype=complex)
    for c in range(D):
        block = g.entries if c == control_level else np.eye(D)
        entries[c * D:(c + 1) * D, c * D:(c + 1) * D] = block
    return GateMatrix(D * D, entries)


def u_symmetrizer(D, N):
    """
    Программа U^(D) = ∏_{k=2}^{N} XOR_{1k} F_1

    Сначала F^(D) на проводе 0, затем xor_lmd с управлением от провода 0
    на каждый из проводов 1..N-1 (операции XOR коммутируют между собой).

    Args:
        D (int): Размерность кудитов
        N (int): Число проводов, N ≥ 2

    Returns:
        list: Упорядоченный список GateStep
    """
    D = _check_dim(D)
    if int(N) < 2:
        raise DomainError(f"число проводов должно быть ≥ 2, получено {N}")
    program = [GateStep((0,), fourier(D))]
    xor = xor_lmd(D)
    program.extend(GateStep((0, k), xor) for k in range(1, int(N)))
    return program


def bell_state(D, label):
    """
    Обобщённое состояние Белла |Φ_{m,μ}⟩ = XOR_lmd (F ⊗ I) |m⟩|μ⟩

    Args:
        D (int): Размерность кудита
        label (BellLabel): Индексы (m, μ)

    Returns:
        StateVector: Двухпроводное состояние
    """
    D = _check_dim(D)
    label = BellLabel(label.m, label.mu, D)
    state = make_product((D, D), (label.m, label.mu))
    return run_program(state, _bell_preparation(D))


def _bell_preparation(D):
    return [GateStep((0,), fourier(D)), GateStep((0, 1), xor_lmd(D))]


def bell_measurement(state, wire_pair, forced=None, seed=None):
    """
    Обобщённое измерение в базисе Белла на паре проводов

    Пара поворачивается обратной схемой приготовления (XOR_lmd, затем F†),
    измеряется в вычислительном базисе и поворачивается обратно, так что
    после измерения пара находится в состоянии |Φ_{m,μ}⟩.

    Args:
        state (StateVector): Состояние регистра
        wire_pair (tuple): Два провода одинаковой размерности D
        forced (BellLabel): Принудительный исход (опционально)
        seed (int): Зерно генератора (опционально)

    Returns:
        tuple: (BellLabel, вероятность, состояние после измерения)

    Raises:
        DomainError: Разные размерности проводов или исход с нулевой вероятностью
    """
    first, second = (int(w) for w in wire_pair)
    D = state.dims[first]
    if state.dims[second] != D:
        raise DomainError(f"провода {first} и {second} имеют разные размерности")

    rotated = apply_unitary(state, (first, second), xor_lmd(D))
    rotated = apply_unitary(rotated, (first,), fourier(D).adjoint())

    forced_index = None if forced is None else BellLabel(forced.m, forced.mu, D).index
    result = measure_wires(rotated, (first, second), forced_outcome=forced_index, seed=seed)

    post_state = apply_unitary(result.post_state, (first,), fourier(D))
    post_state = apply_unitary(post_state, (first, second), xor_lmd(D))
    label = BellLabel.from_index(result.outcome, D)
    logger.debug("измерение Белла на проводах (%d, %d): %s", first, second, label)
    return label, result.probability, post_state


def find_local_relation(target, reference, D, tol=1e-12):
    """
    Поиск локальной связи между вариантами XOR

    Перебирает операции V = X^a F^b (a < D, b < 4) на мишени и ищет пару
    (V_out, V_in), для которой target = (I ⊗ V_out) · reference · (I ⊗ V_in).

    Returns:
        tuple: ((a_out, b_out), (a_in, b_in)) или None, если связь не найдена
    """
    D = _check_dim(D)
    identity = np.eye(D)
    candidates = {}
    for a, b in itertools.product(range(D), range(4)):
        local = pauli_x(D).power(a).entries @ fourier(D).power(b).entries
        candidates[(a, b)] = np.kron(identity, local)

    for (out_key, v_out), (in_key, v_in) in itertools.product(candidates.items(), repeat=2):
        if np.max(np.abs(v_out @ reference.entries @ v_in - target.entries)) <= tol:
            return out_key, in_key
    return None
