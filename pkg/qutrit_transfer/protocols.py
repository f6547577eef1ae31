# -*- coding: utf-8 -*-
"""
Протоколы на основе переноса кутритов

- Распределение запутанности между удалёнными полостями
- Циклические состояния Ψ₀₁₂ / Ψ₀₂₁ и полностью (анти)симметричные |S⟩, |A⟩
- Разделение квантового секрета (QSS) на четырёх кутритах

Регистр QSS: провода 0..3 соответствуют кутритам 3, 0, 1, 2 в записи
протокола (кутрит 3 - состояние дилера |χ⟩).
"""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError, ProtocolInconsistencyError
from .gates import (
    BellLabel,
    bell_measurement,
    bell_state,
    controlled_gate,
    embedded_qubit_gate,
    fourier,
    hadamard,
    run_program,
    u_symmetrizer,
    weyl,
)
from .qudit_core import (
    GateMatrix,
    StateVector,
    apply_unitary,
    factor_wire,
    fidelity,
    inner,
    make_product,
    make_qutrit,
    measure_wires,
    permute_wires,
    tensor,
)
from .transfer import apply_channel_map, channel_map

logger = logging.getLogger(__name__)

QSS_DIM = 3
FIDELITY_TOL = 1e-10

# Провода регистра QSS
DEALER, QUTRIT0, QUTRIT1, QUTRIT2 = 0, 1, 2, 3

PARTY_MAP = {
    "party_1": ["qutrit_3", "qutrit_0"],
    "party_2": ["qutrit_1"],
    "party_3": ["qutrit_2"],
}
PARTY_NOTE = (
    "в исходном распределении кутрит 3 назначен двум участникам; "
    "кутрит 1 (единственный неназначенный) отдан второму участнику, "
    "кутрит 2 с восстановленным состоянием - третьему"
)

CYCLIC_ROOTS = {(0, 1, 2), (0, 2, 1)}
PSI_012_KETS = [(0, 2, 1), (1, 0, 2), (2, 1, 0)]
PSI_021_KETS = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
DISTRIBUTED_KETS = [(0, 2), (1, 0), (2, 1)]

FIDUCIALS = {
    "|0>": (1.0, 0.0, 0.0),
    "|1>": (0.0, 1.0, 0.0),
    "|2>": (0.0, 0.0, 1.0),
    "F|0>": tuple(fourier(3).entries[:, 0]),
    "F|1>": tuple(fourier(3).entries[:, 1]),
}


def superposition(dims, kets, signs=None):
    """Равновесная суперпозиция базисных кетов с коэффициентами ±1"""
    signs = signs or [1] * len(kets)
    amps = sum(sign * make_product(dims, ket).amps for sign, ket in zip(signs, kets))
    return StateVector.from_unnormalized(dims, amps)


def permutation_sign(order):
    """Чётность перестановки: +1 или -1"""
    inversions = sum(1 for i, j in itertools.combinations(range(len(order)), 2) if order[i] > order[j])
    return -1 if inversions % 2 else 1


def permutation_overlaps(state):
    """
    Перекрытия ⟨ψ|P|ψ⟩ для всех перестановок проводов

    Returns:
        list: Кортежи (перестановка, чётность, комплексное перекрытие)
    """
    overlaps = []
    for order in itertools.permutations(range(state.num_wires)):
        overlaps.append((order, permutation_sign(order), inner(state, permute_wires(state, order))))
    return overlaps


# ----------------------------------------------------------------------
# Распределение запутанности
# ----------------------------------------------------------------------

def distributed_target():
    """|Ψ⟩ = (|0⟩|2⟩ + |1⟩|0⟩ + |2⟩|1⟩)/√3"""
    return superposition((3, 3), DISTRIBUTED_KETS)


def distribute_entanglement(channel_alpha_l, channel_alpha_r, source=None):
    """
    Перенос второго иона пары (a, b) в удалённую полость (провод c)

    Args:
        channel_alpha_l (float): α_{l,2}(T) канала левой поляризации, [0, 1]
        channel_alpha_r (float): α_{r,2}(T) канала правой поляризации, [0, 1]
        source (StateVector): Состояние пары (a, b); по умолчанию |Ψ⟩

    Returns:
        tuple: (состояние пары (a, c), точность относительно |Ψ⟩₁₂)
    """
    source = distributed_target() if source is None else source
    if source.dims != (3, 3):
        raise DomainError("ожидалось состояние двух кутритов")
    state, _ = apply_channel_map(source, 1, channel_alpha_l, channel_alpha_r)
    raw = _transferred_amplitudes(source, [(1, channel_alpha_l, channel_alpha_r)])
    target = distributed_target()
    return state, float(abs(np.vdot(target.amps, raw)) ** 2)


def _transferred_amplitudes(state, hops):
    """Амплитуды после последовательных переносов без перенормировки"""
    raw = state.tensor_view()
    for wire, alpha_l, alpha_r in hops:
        shape = [1] * state.num_wires
        shape[wire] = QSS_DIM
        raw = raw * np.diag(channel_map(alpha_l, alpha_r)).reshape(shape)
    return raw.reshape(-1)


def distribute_chain(hops):
    """
    Поэтапное распределение трёхчастичного состояния Ψ₀₂₁ из полости C₁

    Args:
        hops (list): Шаги (провод, alpha_l, alpha_r); каждый провод
            переносится в свою удалённую полость

    Returns:
        tuple: (итоговое состояние, точность относительно Ψ₀₂₁)
    """
    source = generate_cyclic((0, 2, 1))
    wires = [int(wire) for wire, _, _ in hops]
    if len(set(wires)) != len(wires):
        raise DomainError(f"провод переносится дважды: {wires}")
    raw = _transferred_amplitudes(source, hops)
    return StateVector.from_unnormalized(source.dims, raw), float(abs(np.vdot(source.amps, raw)) ** 2)


# ----------------------------------------------------------------------
# Симметричные и антисимметричные состояния
# ----------------------------------------------------------------------

def generate_cyclic(root):
    """
    Циклическое состояние U^(3)|root⟩

    Args:
        root (tuple): (0, 1, 2) → Ψ₀₁₂ или (0, 2, 1) → Ψ₀₂₁

    Raises:
        DomainError: Другие корневые состояния
    """
    root = tuple(int(r) for r in root)
    if root not in CYCLIC_ROOTS:
        raise DomainError(f"корень {root} не задаёт циклическое состояние; допустимы (0,1,2) и (0,2,1)")
    return run_program(make_product((3, 3, 3), root), u_symmetrizer(3, 3))


def prepare_subspace_bell(sign):
    """
    Состояние Белла в подпространстве {|1⟩, |2⟩}: (|1⟩|2⟩ + sign·|2⟩|1⟩)/√2

    Вложенный Адамар на первом проводе и вложенный X на втором при
    управляющем уровне |2⟩; sign = +1 начинается с |1⟩|2⟩, sign = -1 с |2⟩|2⟩.
    """
    if sign not in (1, -1):
        raise DomainError(f"sign должен быть +1 или -1, получено {sign!r}")
    embedded_h = embedded_qubit_gate(3, 1, 2, hadamard())
    embedded_x = embedded_qubit_gate(3, 1, 2, GateMatrix(2, [[0, 1], [1, 0]]))
    root = (1, 2) if sign == 1 else (2, 2)

    state = make_product((3, 3), root)
    state = apply_unitary(state, (0,), embedded_h)
    return apply_unitary(state, (0, 1), controlled_gate(3, 2, embedded_x))


def _symmetrize_pair(sign):
    state = tensor(make_product((3,), (0,)), prepare_subspace_bell(sign))
    return run_program(state, u_symmetrizer(3, 3))


def generate_symmetric():
    """Полностью симметричное состояние |S⟩₀₁₂ = (Ψ₀₁₂ + Ψ₀₂₁)/√2"""
    return _symmetrize_pair(1)


def generate_antisymmetric():
    """Полностью антисимметричное состояние; совпадает с |A⟩₀₂₁ с точностью до знака"""
    return _symmetrize_pair(-1)


def symmetric_reference():
    return superposition((3, 3, 3), PSI_021_KETS + PSI_012_KETS)


def antisymmetric_reference():
    """|A⟩₀₂₁ в записи со знаком + у кетов Ψ₀₂₁"""
    return superposition((3, 3, 3), PSI_021_KETS + PSI_012_KETS, [1, 1, 1, -1, -1, -1])


# ----------------------------------------------------------------------
# Разделение квантового секрета
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class QssRecord:
    """
    Исходы измерений и применённая коррекция X^a Z^b

    Args:
        m, mu (int): Исход измерения Белла на кутритах (3, 0)
        l (int): Исход измерения кутрита 1 после F
        correction_a, correction_b (int): Показатели коррекции на кутрите 2
    """

    m: int
    mu: int
    l: int
    correction_a: int
    correction_b: int

    def __post_init__(self):
        for name in ("m", "mu", "l", "correction_a", "correction_b"):
            value = getattr(self, name)
            if not 0 <= value < QSS_DIM:
                raise DomainError(f"{name} = {value} вне диапазона [0, 3)")


@dataclass(frozen=True)
class CorrectionTable:
    """
    Таблица коррекций (m, mu, l) → (a, b)

    Args:
        entries (dict): Показатели коррекции X^a Z^b по ветвям
    """

    entries: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def lookup(self, m, mu, l):
        try:
            return self.entries[(m, mu, l)]
        except KeyError:
            raise ConfigurationError(f"нет коррекции для ветви (m, mu, l) = {(m, mu, l)}") from None

    @staticmethod
    def published_exponents(m, mu, l):
        """Показатели из опубликованного тождества: (2 - μ, m + l) mod 3"""
        return (2 - mu) % QSS_DIM, (m + l) % QSS_DIM

    def mismatches(self):
        """Ветви, где найденные показатели отличаются от опубликованных"""
        return [
            (branch, self.published_exponents(*branch), exponents)
            for branch, exponents in sorted(self.entries.items())
            if self.published_exponents(*branch) != exponents
        ]

    def matches_published(self):
        return not self.mismatches()


def derived_exponents(m, mu, l):
    """Показатели, следующие из разложения по базису Белла: (2 - μ, l - m) mod 3"""
    return (2 - mu) % QSS_DIM, (l - m) % QSS_DIM


def qss_share(chi):
    """
    Совместное состояние |χ⟩₃ ⊗ Ψ₀₂₁ на проводах (дилер, 0, 1, 2)

    Args:
        chi (tuple): Амплитуды (c0, c1, c2)

    Raises:
        DomainError: χ не нормировано
    """
    return tensor(make_qutrit(*chi), generate_cyclic((0, 2, 1)))


def _child_seeds(seed):
    states = np.random.SeedSequence(0 if seed is None else seed).generate_state(2)
    return int(states[0]), int(states[1])


def _measure_branch(shared, forced_outcomes=None, seed=None):
    """Измерение Белла на (3, 0), затем F и измерение кутрита 1"""
    if shared.dims != (QSS_DIM,) * 4:
        raise DomainError("ожидалось состояние четырёх кутритов")
    forced_label, forced_l = forced_outcomes if forced_outcomes is not None else (None, None)
    bell_seed, l_seed = _child_seeds(seed)

    label, _, state = bell_measurement(shared, (DEALER, QUTRIT0), forced=forced_label, seed=bell_seed)
    state = apply_unitary(state, (QUTRIT1,), fourier(QSS_DIM))
    result = measure_wires(state, (QUTRIT1,), forced_outcome=forced_l, seed=l_seed)
    return label, result.outcome, result.post_state


def qss_reconstruct(shared, corrections, forced_outcomes=None, seed=None, apply_correction=True):
    """
    Восстановление секрета на кутрите 2

    Измерение Белла на кутритах (3, 0) даёт (m, μ); преобразование Фурье
    и измерение кутрита 1 даёт l; к кутриту 2 применяется обратная к
    X^a Z^b операция из таблицы коррекций.

    Args:
        shared (StateVector): Состояние из qss_share
        corrections (CorrectionTable): Таблица коррекций
        forced_outcomes (tuple): (BellLabel, l) для принудительной ветви (опционально)
        seed (int): Зерно генератора (опционально)
        apply_correction (bool): False - вернуть состояние до коррекции

    Returns:
        tuple: (QssRecord, состояние кутрита 2)

    Raises:
        ConfigurationError: В таблице нет нужной ветви
    """
    label, l, state = _measure_branch(shared, forced_outcomes, seed)
    a, b = corrections.lookup(label.m, label.mu, l)
    if apply_correction:
        state = apply_unitary(state, (QUTRIT2,), weyl(QSS_DIM, a, b).adjoint())
    record = QssRecord(label.m, label.mu, l, a, b)
    return record, factor_wire(state, QUTRIT2)


def derive_corrections():
    """
    Таблица коррекций, найденная перебором

    Для каждой из 27 принудительных ветвей и каждого χ из опорного набора
    {|0⟩, |1⟩, |2⟩, F|0⟩, F|1⟩} ищется пара (a, b), при которой обратная к
    X^a Z^b операция восстанавливает все опорные состояния.

    Returns:
        CorrectionTable: 27 записей

    Raises:
        ProtocolInconsistencyError: Для ветви нет общей коррекции
    """
    fiducials = [(name, make_qutrit(*chi), qss_share(chi)) for name, chi in FIDUCIALS.items()]
    candidates = {(a, b): weyl(QSS_DIM, a, b).adjoint() for a, b in itertools.product(range(QSS_DIM), repeat=2)}

    entries = {}
    for m, mu, l in itertools.product(range(QSS_DIM), repeat=3):
        forced = (BellLabel(m, mu, QSS_DIM), l)
        branch_states = []
        for name, chi_state, shared in fiducials:
            _, _, post_state = _measure_branch(shared, forced)
            branch_states.append((name, chi_state, factor_wire(post_state, QUTRIT2)))

        found = [
            exponents for exponents, inverse in candidates.items()
            if all(
                fidelity(apply_unitary(pre, (0,), inverse), chi_state) >= 1.0 - FIDELITY_TOL
                for _, chi_state, pre in branch_states
            )
        ]
        if not found:
            raise ProtocolInconsistencyError((m, mu, l), "опорные состояния требуют разных коррекций")
        entries[(m, mu, l)] = found[0]

    unexpected = sorted(branch for branch, exponents in entries.items() if exponents != derived_exponents(*branch))
    if unexpected:
        logger.warning("перебор расходится с разложением по базису Белла в ветвях %s", unexpected)

    table = CorrectionTable(entries)
    mismatches = table.mismatches()
    if mismatches:
        logger.info("опубликованные показатели расходятся с перебором в %d ветвях из 27", len(mismatches))
    return table


def identity_residual(chi, exponent_rule=CorrectionTable.published_exponents):
    """
    Проверка тождества F₁|χ⟩₃|Ψ⟩₀₂₁ = (1/3√3) Σ_{m,μ} |Φ_{m,μ}⟩ Σ_l Z^{1-μ}|l⟩ X^a Z^b|χ⟩

    Args:
        chi (tuple): Амплитуды χ
        exponent_rule: Функция (m, mu, l) → (a, b); по умолчанию опубликованная

    Returns:
        tuple: (максимальное расхождение амплитуд, индекс первого расхождения или None)
    """
    chi_state = make_qutrit(*chi)
    left = apply_unitary(qss_share(chi), (QUTRIT1,), fourier(QSS_DIM)).amps

    right = np.zeros_like(left)
    omega = np.exp(2j * np.pi / QSS_DIM)
    for m, mu, l in itertools.product(range(QSS_DIM), repeat=3):
        bell = bell_state(QSS_DIM, BellLabel(m, mu, QSS_DIM)).amps
        ket_l = np.zeros(QSS_DIM, dtype=complex)
        ket_l[l] = omega ** (l * (1 - mu))
        a, b = exponent_rule(m, mu, l)
        corrected = weyl(QSS_DIM, a, b).entries @ chi_state.amps
        right += np.kron(np.kron(bell, ket_l), corrected)
    right /= 3 * np.sqrt(3)

    mismatch = np.abs(left - right)
    worst = float(np.max(mismatch))
    bad = np.flatnonzero(mismatch > FIDELITY_TOL)
    return worst, (int(bad[0]) if bad.size else None)


def qss_audit(chi, corrections=None):
    """
    Отчёт о проверке протокола

    Returns:
        dict: branches (27 записей m, mu, l, a, b, fidelity), paper_exponents_match,
        identity_residual и дополнительные поля сверки
    """
    corrections = derive_corrections() if corrections is None else corrections
    shared = qss_share(chi)
    chi_state = make_qutrit(*chi)

    branches = []
    for m, mu, l in itertools.product(range(QSS_DIM), repeat=3):
        record, recovered = qss_reconstruct(shared, corrections, forced_outcomes=(BellLabel(m, mu, QSS_DIM), l))
        branches.append({
            "m": record.m,
            "mu": record.mu,
            "l": record.l,
            "a": record.correction_a,
            "b": record.correction_b,
            "fidelity": fidelity(recovered, chi_state),
        })

    published_residual, _ = identity_residual(chi)
    corrected_residual, _ = identity_residual(chi, lambda m, mu, l: corrections.lookup(m, mu, l))
    return {
        "branches": branches,
        "paper_exponents_match": corrections.matches_published(),
        "identity_residual": published_residual,
        "corrected_identity_residual": corrected_residual,
        "published_exponent_mismatches": [
            {"m": m, "mu": mu, "l": l, "published_a": pa, "published_b": pb, "a": a, "b": b}
            for (m, mu, l), (pa, pb), (a, b) in corrections.mismatches()
        ],
        "party_map": {**PARTY_MAP, "note": PARTY_NOTE},
    }
