# -*- coding: utf-8 -*-
"""
Алгебра чистых состояний регистра кудитов

Точные векторы состояний N проводов (wires) произвольных размерностей:
построение, тензорное произведение, применение унитарных матриц к
выбранным проводам, проективное измерение и точность (fidelity).

Порядок проводов big-endian: провод 0 соответствует самой левой позиции
кета и старшей цифре базисного индекса, поэтому |1⟩|0⟩|2⟩ в dims [3,3,3]
имеет индекс 1·9 + 0·3 + 2 = 11.

Все значения неизменяемы: операции возвращают новые объекты.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

logger = logging.getLogger(__name__)

NORM_TOL = 1e-10
UNITARY_TOL = 1e-12
ZERO_BRANCH_TOL = 1e-15
DEFAULT_SEED = 0


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Чистое состояние регистра

    Args:
        dims (tuple): Размерности проводов (каждая ≥ 2)
        amps (np.ndarray): Комплексные амплитуды длины ∏dims, норма 1
    """

    dims: tuple
    amps: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise DomainError(f"размерности проводов должны быть ≥ 2, получено {list(dims)}")

        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.size != int(np.prod(dims)):
            raise DomainError(
                f"длина амплитуд {amps.size} не равна произведению размерностей {int(np.prod(dims))}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"норма состояния {norm!r} отличается от 1")

        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_unnormalized(cls, dims, amps):
        """Построение состояния с перенормировкой амплитуд"""
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(amps))
        if norm == 0.0:
            raise DomainError("нулевой вектор нельзя нормировать")
        return cls(dims, amps / norm)

    @property
    def num_wires(self):
        return len(self.dims)

    def tensor_view(self):
        """Амплитуды в виде тензора формы dims"""
        return self.amps.reshape(self.dims)

    def amplitude(self, digits):
        """Амплитуда базисного кета с цифрами digits (по одной на провод)"""
        return complex(self.tensor_view()[tuple(digits)])

    def ket(self, tol=1e-12, precision=6):
        """
        Текстовая запись состояния для журналов и консоли

        Returns:
            str: Например '0.57735|021> + 0.57735|102> + 0.57735|210>'
        """
        terms = []
        for index in np.flatnonzero(np.abs(self.amps) > tol):
            digits = "".join(str(d) for d in np.unravel_index(index, self.dims))
            amp = self.amps[index]
            if abs(amp.imag) <= tol:
                coeff = f"{amp.real:.{precision}g}"
            else:
                coeff = f"({amp.real:.{precision}g}{amp.imag:+.{precision}g}j)"
            terms.append(f"{coeff}|{digits}>")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """
    Унитарная матрица, действующая на один или несколько проводов

    Args:
        dim (int): Размер матрицы
        entries (np.ndarray): Комплексная матрица dim × dim, U†U = I
    """

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        dim = int(self.dim)
        if dim < 1:
            raise DomainError(f"размер матрицы должен быть ≥ 1, получено {dim}")
        entries = np.array(self.entries, dtype=complex)
        if entries.shape != (dim, dim):
            raise DomainError(f"ожидалась матрица {dim}×{dim}, получено {entries.shape}")
        defect = np.max(np.abs(entries.conj().T @ entries - np.eye(dim)))
        if defect > UNITARY_TOL:
            raise DomainError(f"матрица не унитарна: max|U†U - I| = {defect:.3e}")

        entries.setflags(write=False)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "entries", entries)

    def adjoint(self):
        return GateMatrix(self.dim, self.entries.conj().T)

    def __matmul__(self, other):
        if not isinstance(other, GateMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise DomainError(f"несовпадение размеров {self.dim} и {other.dim}")
        return GateMatrix(self.dim, self.entries @ other.entries)

    def power(self, exponent):
        """Целая степень матрицы (отрицательная степень - через сопряжение)"""
        base = self if exponent >= 0 else self.adjoint()
        return GateMatrix(self.dim, np.linalg.matrix_power(base.entries, abs(int(exponent))))


@dataclass(frozen=True, eq=False)
class MeasurementResult:
    """
    Результат проективного измерения

    Args:
        wires (tuple): Измеренные провода
        outcome (int): Базисный индекс исхода (big-endian по измеренным проводам)
        probability (float): Вероятность исхода
        post_state (StateVector): Перенормированное состояние после коллапса
    """

    wires: tuple
    outcome: int
    probability: float
    post_state: StateVector

    @property
    def digits(self):
        """Исход в виде цифр по каждому измеренному проводу"""
        sub_dims = [self.post_state.dims[w] for w in self.wires]
        return tuple(int(d) for d in np.unravel_index(self.outcome, sub_dims))


def _check_wires(state, wires):
    wires = tuple(int(w) for w in wires)
    if not wires:
        raise DomainError("список проводов пуст")
    if len(set(wires)) != len(wires):
        raise DomainError(f"провода повторяются: {list(wires)}")
    for w in wires:
        if not 0 <= w < state.num_wires:
            raise DomainError(f"провод {w} вне диапазона [0, {state.num_wires})")
    return wires


def _split(state, wires):
    """Матрица амплитуд (исход выбранных проводов, остальные провода)"""
    psi = np.moveaxis(state.tensor_view(), wires, range(len(wires)))
    rows = int(np.prod([state.dims[w] for w in wires]))
    return psi.reshape(rows, -1), psi.shape


def _merge(matrix, shape, wires):
    psi = np.moveaxis(matrix.reshape(shape), range(len(wires)), wires)
    return psi.reshape(-1)


def make_register(dims, basis_index):
    """
    Базисное состояние регистра

    Args:
        dims (list): Размерности проводов
        basis_index (int): Индекс базисного состояния, 0 ≤ index < ∏dims

    Returns:
        StateVector: Состояние с амплитудой 1 на basis_index

    Raises:
        DomainError: Индекс вне диапазона
    """
    dims = tuple(int(d) for d in dims)
    size = int(np.prod(dims)) if dims else 0
    if not 0 <= int(basis_index) < size:
        raise DomainError(f"базисный индекс {basis_index} вне диапазона [0, {size})")
    amps = np.zeros(size, dtype=complex)
    amps[int(basis_index)] = 1.0
    return StateVector(dims, amps)


def make_product(dims, digits):
    """Базисное состояние по цифрам кета: make_product([3,3,3], (0,2,1)) = |0⟩|2⟩|1⟩"""
    dims = tuple(int(d) for d in dims)
    if len(digits) != len(dims) or any(not 0 <= d < n for d, n in zip(digits, dims)):
        raise DomainError(f"цифры {tuple(digits)} не соответствуют размерностям {list(dims)}")
    return make_register(dims, int(np.ravel_multi_index(tuple(digits), dims)))


def make_qutrit(c0, c1, c2):
    """
    Состояние кутрита c0|0⟩ + c1|1⟩ + c2|2⟩

    Уровни |1l⟩ и |1r⟩ иона обозначены как |1⟩ и |2⟩.

    Raises:
        DomainError: |c0|² + |c1|² + |c2|² отличается от 1 более чем на 1e-10
    """
    amps = np.array([c0, c1, c2], dtype=complex)
    total = float(np.sum(np.abs(amps) ** 2))
    if abs(total - 1.0) > NORM_TOL:
        raise DomainError(f"амплитуды кутрита не нормированы: сумма квадратов {total!r}")
    return StateVector((3,), amps)


def tensor(a, b):
    """Тензорное произведение; провода a предшествуют проводам b"""
    return StateVector(a.dims + b.dims, np.kron(a.amps, b.amps))


def apply_unitary(state, wires, gate):
    """
    Применение унитарной матрицы к выбранным проводам

    Первый провод в списке - старший индекс матрицы.

    Args:
        state (StateVector): Исходное состояние
        wires (list): Различные провода в диапазоне
        gate (GateMatrix): Матрица размера ∏ dims[wires]

    Returns:
        StateVector: Новое состояние

    Raises:
        DomainError: Несовпадение размерностей или некорректные провода
    """
    wires = _check_wires(state, wires)
    expected = int(np.prod([state.dims[w] for w in wires]))
    if gate.dim != expected:
        raise DomainError(
            f"размер матрицы {gate.dim} не равен произведению размерностей проводов {expected}"
        )
    matrix, shape = _split(state, wires)
    return StateVector(state.dims, _merge(gate.entries @ matrix, shape, wires))


def outcome_probabilities(state, wires):
    """Вероятности всех исходов измерения проводов в порядке возрастания индекса"""
    wires = _check_wires(state, wires)
    matrix, _ = _split(state, wires)
    return np.sum(np.abs(matrix) ** 2, axis=1)


def measure_wires(state, wires, forced_outcome=None, seed=None):
    """
    Проективное измерение проводов в вычислительном базисе

    Без forced_outcome исход выбирается обратной функцией распределения
    по возрастанию индекса с детерминированным генератором numpy,
    инициализированным seed (None означает seed=0).

    Args:
        state (StateVector): Состояние до измерения
        wires (list): Измеряемые провода
        forced_outcome (int): Принудительный исход (опционально)
        seed (int): Зерно генератора (опционально)

    Returns:
        MeasurementResult: Исход, его вероятность и состояние после коллапса

    Raises:
        DomainError: Принудительный исход с нулевой вероятностью
    """
    wires = _check_wires(state, wires)
    matrix, shape = _split(state, wires)
    probs = np.sum(np.abs(matrix) ** 2, axis=1)

    if forced_outcome is not None:
        outcome = int(forced_outcome)
        if not 0 <= outcome < probs.size:
            raise DomainError(f"исход {outcome} вне диапазона [0, {probs.size})")
        if probs[outcome] <= ZERO_BRANCH_TOL:
            raise DomainError(f"исход {outcome} имеет нулевую вероятность")
    else:
        rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
        cdf = np.cumsum(probs)
        outcome = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
        outcome = min(outcome, probs.size - 1)
        # Округление может указать на хвост с нулевой вероятностью
        while probs[outcome] <= ZERO_BRANCH_TOL:
            outcome -= 1

    probability = float(probs[outcome])
    collapsed = np.zeros_like(matrix)
    collapsed[outcome] = matrix[outcome] / np.sqrt(probability)
    post_state = StateVector(state.dims, _merge(collapsed, shape, wires))

    logger.debug("измерение проводов %s: исход %d, вероятность %.6f", wires, outcome, probability)
    return MeasurementResult(wires, outcome, probability, post_state)


def inner(a, b):
    """Скалярное произведение ⟨a|b⟩"""
    if a.dims != b.dims:
        raise DomainError(f"размерности не совпадают: {list(a.dims)} и {list(b.dims)}")
    return complex(np.vdot(a.amps, b.amps))


def fidelity(a, b):
    """
    Точность |⟨a|b⟩|², нечувствительная к глобальной фазе

    Raises:
        DomainError: Размерности состояний не совпадают
    """
    return float(np.clip(abs(inner(a, b)) ** 2, 0.0, 1.0))


def permute_wires(state, order):
    """
    Перестановка проводов: новый провод k - это старый провод order[k]

    Args:
        state (StateVector): Исходное состояние
        order (tuple): Перестановка номеров проводов

    Returns:
        StateVector: Состояние с переставленными проводами
    """
    order = tuple(int(w) for w in order)
    if sorted(order) != list(range(state.num_wires)):
        raise DomainError(f"{list(order)} не является перестановкой проводов")
    dims = tuple(state.dims[w] for w in order)
    return StateVector(dims, np.transpose(state.tensor_view(), order).reshape(-1))


def factor_wire(state, wire, tol=1e-10):
    """
    Выделение состояния одного провода из произведения состояний

    Применяется после измерения остальных проводов, когда провод
    не запутан с остатком регистра.

    Returns:
        StateVector: Однопроводное состояние (глобальная фаза произвольна)

    Raises:
        DomainError: Провод запутан с остальными проводами
    """
    (wire,) = _check_wires(state, [wire])
    matrix, _ = _split(state, (wire,))
    columns = matrix.T
    pivot = int(np.argmax(np.linalg.norm(columns, axis=1)))
    local = columns[pivot] / np.linalg.norm(columns[pivot])
    residual = columns - np.outer(columns @ local.conj(), local)
    if np.max(np.abs(residual)) > tol:
        raise DomainError(f"провод {wire} запутан с остальными проводами")
    return StateVector((state.dims[wire],), local)
