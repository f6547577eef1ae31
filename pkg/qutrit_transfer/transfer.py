# -*- coding: utf-8 -*-
"""
Динамика амплитуд при фотонном переносе состояния кутрита

Каждая поляризация (j = l, r) образует независимый канал с амплитудами
α₁ (возбуждение иона в первой полости), α₂ (во второй полости) и
антисимметричной полевой амплитудой d_a. При условии отсутствия щелчков
детектора d_s ≡ 0 и уравнения канала имеют вид

    α̇₁ = +λ₁ d_a / √2
    α̇₂ = -λ₂ d_a / √2
    ḋ_a = (-λ₁ α₁ + λ₂ α₂) / √2

Условие ḋ_s = 0 связывает импульсы:
(λ₁α₁ + λ₂α₂)/√2 + κ d_a = 0. Вместе с условием симметричного импульса
λ₂(t) = λ₁(-t) это определяет форму импульса по первой половине окна.

Фазы лазеров φ считаются скомпенсированными (stark_conditions), поэтому
уравнения вещественные.

Интегрирование - классический метод Рунге-Кутты 4-го порядка с
постоянным шагом на симметричной сетке [-T, T].
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import CubicSpline

from .errors import DomainError, IntegrationError, InvariantViolation, PulseSingularityError
from .qudit_core import StateVector, make_qutrit

logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2.0)

NORM_TOL = 1e-8
DRIFT_TOL = 1e-6
MIRROR_TOL = 1e-6
CONSTRAINT_TOL = 1e-6
SYMMETRY_TOL = 1e-12
SINGULAR_TOL = 1e-9

IDEAL_START = (1.0, 0.0, 0.0)


# ----------------------------------------------------------------------
# Типы данных
# ----------------------------------------------------------------------

def _uniform_grid(times, name="times"):
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 2:
        raise DomainError(f"{name}: нужна одномерная сетка хотя бы из двух точек")
    steps = np.diff(times)
    if np.any(steps <= 0):
        raise DomainError(f"{name}: шаг сетки должен быть положительным")
    if np.max(np.abs(steps - steps[0])) > 1e-9 * max(1.0, abs(steps[0])):
        raise DomainError(f"{name}: сетка должна быть равномерной")
    return times


@dataclass(frozen=True, eq=False)
class StarkInputs:
    """
    Параметры эффективного гамильтониана для компенсации штарковских сдвигов

    Args:
        g (complex): Константа связи с модой полости (рад/с)
        omega_profile (np.ndarray): Отсчёты |Ω(t)| классического поля (рад/с)
        times (np.ndarray): Равномерная сетка отсчётов
        delta (float): Отстройка Δ (рад/с), Δ ≠ 0
    """

    g: complex
    omega_profile: np.ndarray
    times: np.ndarray
    delta: float

    def __post_init__(self):
        if self.delta == 0:
            raise DomainError("отстройка Δ не может быть нулевой")
        times = _uniform_grid(self.times)
        profile = np.abs(np.asarray(self.omega_profile, dtype=complex))
        if profile.shape != times.shape:
            raise DomainError("длина профиля |Ω(t)| не совпадает с сеткой")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "omega_profile", profile)


@dataclass(frozen=True, eq=False)
class StarkCompensation:
    """
    Условия компенсации: δ = |g|²/Δ и фаза лазера φ(t) с φ̇ = |Ω|²/Δ

    Args:
        delta_shift (float): Отстройка моды полости δ
        phi (np.ndarray): Фаза лазера на сетке, φ(t₀) = 0
        times (np.ndarray): Сетка
    """

    delta_shift: float
    phi: np.ndarray
    times: np.ndarray

    def __post_init__(self):
        for name in ("phi", "times"):
            array = np.array(getattr(self, name), dtype=float)
            array.setflags(write=False)
            object.__setattr__(self, name, array)


@dataclass(frozen=True)
class ChannelParams:
    """
    Параметры одного поляризационного канала

    Args:
        kappa (float): Скорость распада полости κ (1/время)
        lambda0 (float): Эффективная связь λ₁(0) (1/время)
        t_max (float): Полуширина окна T
        dt (float): Шаг интегрирования, 0 < dt ≤ T/100
    """

    kappa: float
    lambda0: float
    t_max: float
    dt: float

    def __post_init__(self):
        for name in ("kappa", "lambda0", "t_max", "dt"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value <= 0:
                raise DomainError(f"{name} должен быть положительным, получено {value!r}")
            object.__setattr__(self, name, value)
        if self.dt > self.t_max / 100 * (1 + 1e-12):
            raise DomainError(f"dt={self.dt!r} больше t_max/100={self.t_max / 100!r}")

    @classmethod
    def default(cls, kappa=1.0):
        """Параметры по умолчанию: λ₀ = κ/√2, T = 10/κ, dt = 0.005/κ"""
        return cls(kappa=kappa, lambda0=kappa / SQRT2, t_max=10.0 / kappa, dt=0.005 / kappa)

    @property
    def half_steps(self):
        """Число шагов на полуокне [0, T]"""
        return int(np.ceil(self.t_max / self.dt - 1e-9))

    @property
    def grid_step(self):
        """Фактический шаг сетки (≤ dt, делит T нацело)"""
        return self.t_max / self.half_steps

    def time_grid(self):
        """Симметричная сетка на [-T, T] с 2n+1 точками"""
        n = self.half_steps
        return np.linspace(-self.t_max, self.t_max, 2 * n + 1)


@dataclass(frozen=True, eq=False)
class ChannelTrajectory:
    """
    Временной ряд амплитуд одного канала

    Args:
        times (np.ndarray): Сетка
        alpha1 (np.ndarray): α₁(t)
        alpha2 (np.ndarray): α₂(t)
        d_a (np.ndarray): d_a(t)
    """

    times: np.ndarray
    alpha1: np.ndarray
    alpha2: np.ndarray
    d_a: np.ndarray

    def __post_init__(self):
        arrays = [np.array(getattr(self, name), dtype=float) for name in ("times", "alpha1", "alpha2", "d_a")]
        if len({a.shape for a in arrays}) != 1:
            raise DomainError("массивы траектории имеют разную длину")
        for name, array in zip(("times", "alpha1", "alpha2", "d_a"), arrays):
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    def norm_error(self):
        """α₁² + α₂² + d_a² - 1 в каждой точке"""
        return self.alpha1 ** 2 + self.alpha2 ** 2 + self.d_a ** 2 - 1.0

    def mirror_defect(self):
        """max(|α₁(t) - α₂(-t)|, |d_a(t) - d_a(-t)|) по сетке"""
        return float(max(
            np.max(np.abs(self.alpha1 - self.alpha2[::-1])),
            np.max(np.abs(self.d_a - self.d_a[::-1])),
        ))

    def final_state(self):
        return float(self.alpha1[-1]), float(self.alpha2[-1]), float(self.d_a[-1])

    def index_of(self, t):
        """Индекс точки сетки, совпадающей с t; DomainError вне сетки"""
        index = int(np.argmin(np.abs(self.times - t)))
        step = self.times[1] - self.times[0]
        if abs(self.times[index] - t) > 1e-9 * max(1.0, abs(step)):
            raise DomainError(f"момент t={t!r} не лежит на сетке траектории")
        return index


@dataclass(frozen=True, eq=False)
class PulseSchedule:
    """
    Отсчёты эффективных связей λ₁(t), λ₂(t) на симметричной сетке

    λ₁ может принимать малые отрицательные значения при t < 0: знак
    реализуется скачком фазы лазера на π, такие моменты возвращает sign_flips().

    Args:
        times (np.ndarray): Равномерная сетка на [-T, T]
        lambda1 (np.ndarray): λ₁(t)
        lambda2 (np.ndarray): λ₂(t) = λ₁(-t)
        start_state (tuple): Граничное состояние (α₁, α₂, d_a) в момент -T
        shaping (ChannelTrajectory): Траектория на [0, T], по которой построена форма
    """

    times: np.ndarray
    lambda1: np.ndarray
    lambda2: np.ndarray
    start_state: tuple = IDEAL_START
    shaping: ChannelTrajectory = field(default=None)

    def __post_init__(self):
        times = _uniform_grid(self.times)
        if abs(times[0] + times[-1]) > 1e-9 * max(1.0, abs(times[-1])):
            raise DomainError("сетка импульса должна быть симметричной относительно t = 0")
        lambda1 = np.array(self.lambda1, dtype=float)
        lambda2 = np.array(self.lambda2, dtype=float)
        if lambda1.shape != times.shape or lambda2.shape != times.shape:
            raise DomainError("длина отсчётов импульса не совпадает с сеткой")
        if not (np.all(np.isfinite(lambda1)) and np.all(np.isfinite(lambda2))):
            raise InvariantViolation("импульс содержит бесконечные или неопределённые значения")
        defect = float(np.max(np.abs(lambda2 - lambda1[::-1])))
        if defect > SYMMETRY_TOL:
            raise InvariantViolation(f"нарушено условие симметричного импульса: {defect:.3e}")

        for name, array in (("times", times), ("lambda1", lambda1), ("lambda2", lambda2)):
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        object.__setattr__(self, "start_state", tuple(float(x) for x in self.start_state))

    @classmethod
    def constant(cls, times, lambda1, lambda2):
        """Расписание из постоянных связей (нулевые импульсы - lambda1 = lambda2 = 0)"""
        times = np.asarray(times, dtype=float)
        return cls(times, np.full(times.shape, float(lambda1)), np.full(times.shape, float(lambda2)))

    def sign_flips(self):
        """Моменты, где λ₁ < 0 (реализуются скачком фазы лазера на π)"""
        return self.times[self.lambda1 < 0]


@dataclass(frozen=True, eq=False)
class GlobalTransferState:
    """
    Глобальное состояние переноса: постоянная амплитуда a и два канала

    Args:
        left (ChannelTrajectory): Канал левой поляризации
        right (ChannelTrajectory): Канал правой поляризации
        a (float): Амплитуда компоненты |0⟩ (ȧ = 0)
    """

    left: ChannelTrajectory
    right: ChannelTrajectory
    a: float = 1.0


@dataclass(frozen=True)
class GlobalAmplitudes:
    """Девять амплитуд глобального состояния в момент t"""

    ground: complex
    b_l1: complex
    b_l2: complex
    d_l1: complex
    d_l2: complex
    b_r1: complex
    b_r2: complex
    d_r1: complex
    d_r2: complex

    def as_array(self):
        return np.array([
            self.ground, self.b_l1, self.b_l2, self.d_l1, self.d_l2,
            self.b_r1, self.b_r2, self.d_r1, self.d_r2,
        ], dtype=complex)

    def norm_squared(self):
        return float(np.sum(np.abs(self.as_array()) ** 2))


# ----------------------------------------------------------------------
# Компенсация штарковских сдвигов
# ----------------------------------------------------------------------

def stark_conditions(inputs):
    """
    Условия устранения динамических штарковских сдвигов

    δ = |g|²/Δ, φ(t) = ∫_{t₀}^{t} |Ω(t')|²/Δ dt' (правило трапеций), φ(t₀) = 0

    Args:
        inputs (StarkInputs): Связь g, профиль |Ω(t)|, отстройка Δ

    Returns:
        StarkCompensation: Отстройка полости и фаза лазера

    Raises:
        DomainError: Δ = 0
    """
    if inputs.delta == 0:
        raise DomainError("отстройка Δ не может быть нулевой")
    delta_shift = abs(inputs.g) ** 2 / inputs.delta
    phi = cumulative_trapezoid(inputs.omega_profile ** 2 / inputs.delta, inputs.times, initial=0.0)
    return StarkCompensation(delta_shift=float(delta_shift), phi=phi, times=inputs.times)


def rabi_profile(lambda_samples, g, delta):
    """
    Амплитуда классического поля |Ω(t)| = |λ(t)·Δ/g| для заданной связи λ = Ωg/Δ

    Raises:
        DomainError: g = 0 (связь не реализуема)
    """
    if g == 0:
        raise DomainError("при g = 0 эффективная связь λ не реализуема")
    return np.abs(np.asarray(lambda_samples, dtype=float) * delta / g)


def stark_for_schedule(schedule, g, delta):
    """Программа фаз лазеров для пары импульсов: (компенсация λ₁, компенсация λ₂)"""
    first = StarkInputs(g, rabi_profile(schedule.lambda1, g, delta), schedule.times, delta)
    second = StarkInputs(g, rabi_profile(schedule.lambda2, g, delta), schedule.times, delta)
    return stark_conditions(first), stark_conditions(second)


# ----------------------------------------------------------------------
# Форма импульса и интегрирование
# ----------------------------------------------------------------------

def initial_amplitudes(params):
    """
    Амплитуды в момент t = 0

    Из нормировки, симметрии α₁(0) = α₂(0) и условия ḋ_s(0) = 0:
    2α²(0)(λ₀² + κ²)/κ² = 1, d_a(0) = -√2·λ₀·α(0)/κ.

    Args:
        params (ChannelParams): Параметры канала

    Returns:
        tuple: (alpha0, d_a0)

    Raises:
        DomainError: κ ≤ 0
    """
    kappa, lambda0 = params.kappa, params.lambda0
    if kappa <= 0:
        raise DomainError(f"κ должен быть положительным, получено {kappa!r}")
    alpha0 = kappa / np.sqrt(2.0 * (lambda0 ** 2 + kappa ** 2))
    d_a0 = -SQRT2 * lambda0 * alpha0 / kappa
    return float(alpha0), float(d_a0)


def channel_rhs(y, lambda1, lambda2):
    """Правая часть уравнений канала для y = (α₁, α₂, d_a)"""
    alpha1, alpha2, d_a = y
    return np.array([
        lambda1 * d_a / SQRT2,
        -lambda2 * d_a / SQRT2,
        (-lambda1 * alpha1 + lambda2 * alpha2) / SQRT2,
    ])


def constraint_residual(lambda1, lambda2, alpha1, alpha2, d_a, kappa):
    """Невязка условия ḋ_s = 0: (λ₁α₁ + λ₂α₂)/√2 + κ·d_a"""
    return (lambda1 * alpha1 + lambda2 * alpha2) / SQRT2 + kappa * d_a


def _mirror_coupling(y, lambda1, kappa, t):
    """λ₂ из условия ḋ_s = 0: λ₂α₂ = -√2κd_a - λ₁α₁"""
    alpha1, alpha2, d_a = y
    numerator = -(SQRT2 * kappa * d_a + lambda1 * alpha1)
    if abs(alpha2) < SINGULAR_TOL:
        # 0/0 - физическое начало зеркального импульса
        if abs(numerator) < SINGULAR_TOL:
            return 0.0
        raise PulseSingularityError(t, numerator)
    return numerator / alpha2


def _driver_function(driver, params, half_times):
    """Функция λ₁(t) на [0, T]: постоянная, вызываемая или таблица отсчётов"""
    if driver is None:
        return lambda t: params.lambda0
    if callable(driver):
        return lambda t: float(driver(t))
    if isinstance(driver, tuple) and len(driver) == 2:
        table_times, table_values = (np.asarray(x, dtype=float) for x in driver)
    else:
        table_times, table_values = half_times, np.asarray(driver, dtype=float)
    if table_times.shape != table_values.shape or table_times.size < 4:
        raise DomainError("таблица импульса: нужны согласованные массивы хотя бы из 4 отсчётов")
    if table_times[0] > 0 or table_times[-1] < params.t_max * (1 - 1e-12):
        raise DomainError("таблица импульса должна покрывать отрезок [0, T]")
    spline = CubicSpline(table_times, table_values)
    return lambda t: float(spline(t))


def shape_pulses(params, lambda1_positive_half=None):
    """
    Построение симметричной пары импульсов

    Уравнения канала интегрируются на [0, T] от initial_amplitudes с
    заданным λ₁(t) и самосогласованным λ₂(t) из условия ḋ_s = 0; затем
    по формуле λ₁(-t) = -(√2κd_a(t) + λ₁(t)α₁(t))/α₂(t) заполняется
    отрезок [-T, 0] и собирается расписание с λ₂(t) = λ₁(-t).

    Args:
        params (ChannelParams): Параметры канала
        lambda1_positive_half: None (постоянная λ₀), функция t → λ₁(t) или
            таблица отсчётов (массив на сетке [0, T] или пара (times, values))

    Returns:
        PulseSchedule: Симметричное расписание с граничным состоянием в -T

    Raises:
        DomainError: λ₁(0) ≠ λ₀ или некорректная таблица
        PulseSingularityError: α₂(t) ≈ 0 при ненулевом числителе
    """
    times = params.time_grid()
    n = params.half_steps
    half_times = times[n:]
    h = params.grid_step
    lambda1_of = _driver_function(lambda1_positive_half, params, half_times)

    if abs(lambda1_of(0.0) - params.lambda0) > 1e-9 * max(1.0, params.lambda0):
        raise DomainError(f"λ₁(0) = {lambda1_of(0.0)!r} не совпадает с lambda0 = {params.lambda0!r}")

    alpha0, d_a0 = initial_amplitudes(params)
    kappa = params.kappa

    def rhs(t, y):
        lambda1 = lambda1_of(t)
        return channel_rhs(y, lambda1, _mirror_coupling(y, lambda1, kappa, t))

    states = np.empty((n + 1, 3))
    states[0] = (alpha0, alpha0, d_a0)
    for k in range(n):
        t, y = half_times[k], states[k]
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h / 2 * k1)
        k3 = rhs(t + h / 2, y + h / 2 * k2)
        k4 = rhs(t + h, y + h * k3)
        states[k + 1] = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    lambda1_half = np.array([lambda1_of(t) for t in half_times])
    if np.any(lambda1_half < 0) or not np.all(np.isfinite(lambda1_half)):
        raise DomainError("задающий импульс λ₁ на [0, T] должен быть конечным и неотрицательным")
    lambda2_half = np.array([
        _mirror_coupling(states[k], lambda1_half[k], kappa, half_times[k]) for k in range(n + 1)
    ])

    # λ₁(-t) = λ₂(t): отрицательная полуось из зеркальной формулы
    lambda1 = np.concatenate([lambda2_half[:0:-1], lambda1_half])
    end = states[-1] / np.linalg.norm(states[-1])
    schedule = PulseSchedule(
        times=times,
        lambda1=lambda1,
        lambda2=lambda1[::-1],
        start_state=(end[1], end[0], end[2]),
        shaping=ChannelTrajectory(half_times, states[:, 0], states[:, 1], states[:, 2]),
    )

    flips = schedule.sign_flips()
    if flips.size:
        logger.warning(
            "связь λ₁ меняет знак на %d отсчётах (первый при t=%.4g): нужен скачок фазы лазера на π",
            flips.size, flips[0],
        )
    tail = float(np.hypot(end[0], end[2]))
    logger.debug("форма импульса: %d точек, хвост окна %.3e", times.size, tail)
    return schedule


def _midpoint_samples(times, values):
    """
    Значения на серединах шагов по кубическим сплайнам

    Сплайны строятся отдельно на [-T, 0] и [0, T]: в t = 0 импульс имеет излом.
    """
    n = times.size // 2
    midpoints = times[:-1] + np.diff(times) / 2
    left = CubicSpline(times[:n + 1], values[:n + 1])
    right = CubicSpline(times[n:], values[n:])
    return np.concatenate([left(midpoints[:n]), right(midpoints[n:])])


def integrate_channel(schedule, params, initial=None):
    """
    Интегрирование уравнений канала на [-T, T] методом РК4

    Args:
        schedule (PulseSchedule): Расписание на сетке params.time_grid()
        params (ChannelParams): Параметры канала
        initial (tuple): Состояние (α₁, α₂, d_a) в -T; по умолчанию
            schedule.start_state (идеальное (1, 0, 0) с точностью до хвоста окна)

    Returns:
        ChannelTrajectory: Траектория на сетке расписания

    Raises:
        DomainError: Сетка расписания не совпадает с параметрами
        IntegrationError: Дрейф нормы больше 1e-6
    """
    times = params.time_grid()
    if schedule.times.shape != times.shape or np.max(np.abs(schedule.times - times)) > 1e-9:
        raise DomainError("сетка расписания не совпадает с параметрами канала")

    y0 = np.array(schedule.start_state if initial is None else initial, dtype=float)
    if y0.shape != (3,):
        raise DomainError("начальное состояние канала - это (α₁, α₂, d_a)")

    h = params.grid_step
    lambda1, lambda2 = schedule.lambda1, schedule.lambda2
    lambda1_mid = _midpoint_samples(times, lambda1)
    lambda2_mid = _midpoint_samples(times, lambda2)

    states = np.empty((times.size, 3))
    states[0] = y0
    for k in range(times.size - 1):
        y = states[k]
        k1 = channel_rhs(y, lambda1[k], lambda2[k])
        k2 = channel_rhs(y + h / 2 * k1, lambda1_mid[k], lambda2_mid[k])
        k3 = channel_rhs(y + h / 2 * k2, lambda1_mid[k], lambda2_mid[k])
        k4 = channel_rhs(y + h * k3, lambda1[k + 1], lambda2[k + 1])
        states[k + 1] = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    initial_norm = float(np.sum(y0 ** 2))
    drift = float(np.max(np.abs(np.sum(states ** 2, axis=1) - initial_norm)))
    if not drift <= DRIFT_TOL:
        raise IntegrationError(drift, h)

    logger.debug("канал проинтегрирован: %d шагов, дрейф нормы %.3e", times.size - 1, drift)
    return ChannelTrajectory(times, states[:, 0], states[:, 1], states[:, 2])


def transfer_channel(params, lambda1_positive_half=None):
    """Форма импульса и траектория одного канала: (PulseSchedule, ChannelTrajectory)"""
    schedule = shape_pulses(params, lambda1_positive_half)
    return schedule, integrate_channel(schedule, params)


def validate_trajectory(trajectory, schedule=None, kappa=None):
    """
    Проверка инвариантов траектории

    Args:
        trajectory (ChannelTrajectory): Траектория
        schedule (PulseSchedule): Расписание для проверки условия ḋ_s = 0 (опционально)
        kappa (float): κ канала (нужен вместе с schedule)

    Returns:
        tuple: (is_valid, error_message)
    """
    norm_error = float(np.max(np.abs(trajectory.norm_error())))
    if norm_error > NORM_TOL:
        return False, f"нормировка канала нарушена: {norm_error:.3e}"

    mirror = trajectory.mirror_defect()
    if mirror > MIRROR_TOL:
        return False, f"нарушена зеркальная симметрия α₁(t) = α₂(-t): {mirror:.3e}"

    if schedule is not None and kappa is not None:
        residual = constraint_residual(
            schedule.lambda1, schedule.lambda2,
            trajectory.alpha1, trajectory.alpha2, trajectory.d_a, kappa,
        )
        worst = float(np.max(np.abs(residual)))
        if worst > CONSTRAINT_TOL:
            return False, f"невязка условия ḋ_s = 0: {worst:.3e}"

    return True, "OK"


# ----------------------------------------------------------------------
# Перенос состояния кутрита
# ----------------------------------------------------------------------

def channel_map(alpha_l, alpha_r, phi_l=0.0, phi_r=0.0):
    """
    Оператор переноса при отсутствии щелчков: diag(1, α_l e^{-iφ_l}, α_r e^{-iφ_r})

    Не унитарен: недостающая амплитуда остаётся в полевых модах.
    """
    for name, value in (("alpha_l", alpha_l), ("alpha_r", alpha_r)):
        if not 0.0 <= value <= 1.0 + 1e-12:
            raise DomainError(f"{name} должен лежать в [0, 1], получено {value!r}")
    return np.diag([1.0, alpha_l * np.exp(-1j * phi_l), alpha_r * np.exp(-1j * phi_r)])


def apply_channel_map(state, wire, alpha_l, alpha_r, phi_l=0.0, phi_r=0.0):
    """
    Перенос одного провода-кутрита через пару каналов

    Args:
        state (StateVector): Состояние регистра
        wire (int): Переносимый провод (размерность 3)
        alpha_l, alpha_r (float): Конечные амплитуды α_{j,2}(T)
        phi_l, phi_r (float): Остаточные фазы φ_{j,2}(T)

    Returns:
        tuple: (перенормированное состояние, точность |⟨ψ|Mψ⟩|² до перенормировки)
    """
    if state.dims[wire] != 3:
        raise DomainError(f"провод {wire} не является кутритом")
    factors = np.diag(channel_map(alpha_l, alpha_r, phi_l, phi_r))
    shape = [1] * state.num_wires
    shape[wire] = 3
    raw = (state.tensor_view() * factors.reshape(shape)).reshape(-1)
    fidelity = float(abs(np.vdot(state.amps, raw)) ** 2)
    return StateVector.from_unnormalized(state.dims, raw), fidelity


def transfer_qutrit(amplitudes, left, right, phases=(0.0, 0.0)):
    """
    Перенос состояния кутрита c0|0⟩ + c1|1⟩ + c2|2⟩ во второй ион

    Выход: (c0·a, c1·α_{l,2}(T)e^{-iφ_l}, c2·α_{r,2}(T)e^{-iφ_r}) с a = 1,
    перенормированный. Точность F = |Σ_k |c_k|² t_k|², где t - диагональ
    оператора переноса; при скомпенсированных фазах
    F = ||c0|² + |c1|²α_{l,2}(T) + |c2|²α_{r,2}(T)|².

    Args:
        amplitudes (tuple): (c0, c1, c2), нормированные
        left (ChannelTrajectory): Канал левой поляризации
        right (ChannelTrajectory): Канал правой поляризации
        phases (tuple): Остаточные фазы (φ_l, φ_r), по умолчанию 0

    Returns:
        tuple: (StateVector кутрита, точность)

    Raises:
        DomainError: Входное состояние не нормировано
        InvariantViolation: Траектория нарушает нормировку канала
    """
    qutrit = make_qutrit(*amplitudes)
    for name, trajectory in (("left", left), ("right", right)):
        worst = float(np.max(np.abs(trajectory.norm_error())))
        if worst > NORM_TOL:
            raise InvariantViolation(f"траектория {name}: нормировка нарушена ({worst:.3e})")

    alpha_l = float(np.clip(left.alpha2[-1], 0.0, 1.0))
    alpha_r = float(np.clip(right.alpha2[-1], 0.0, 1.0))
    return apply_channel_map(qutrit, 0, alpha_l, alpha_r, *phases)


def assemble_global_state(amplitudes, state, t):
    """
    Девять амплитуд глобального состояния в момент t

    {c₀a, c_j b_{j,1}, c_j b_{j,2}, c_j d_{j,1}, c_j d_{j,2}} при
    d_{j,1} = -d_a/√2, d_{j,2} = +d_a/√2 (из d_s = 0) и скомпенсированных фазах.

    Args:
        amplitudes (tuple): (c0, c_l, c_r)
        state (GlobalTransferState): Постоянная a и траектории каналов
        t (float): Момент времени на сетке

    Returns:
        GlobalAmplitudes: Амплитуды с суммой квадратов модулей 1

    Raises:
        DomainError: t не лежит на сетке
    """
    c0, c_l, c_r = (complex(c) for c in amplitudes)
    left_index = state.left.index_of(t)
    right_index = state.right.index_of(t)

    def channel(c, trajectory, index):
        d_a = trajectory.d_a[index]
        return (
            c * trajectory.alpha1[index],
            c * trajectory.alpha2[index],
            -c * d_a / SQRT2,
            c * d_a / SQRT2,
        )

    b_l1, b_l2, d_l1, d_l2 = channel(c_l, state.left, left_index)
    b_r1, b_r2, d_r1, d_r2 = channel(c_r, state.right, right_index)
    return GlobalAmplitudes(c0 * state.a, b_l1, b_l2, d_l1, d_l2, b_r1, b_r2, d_r1, d_r2)
