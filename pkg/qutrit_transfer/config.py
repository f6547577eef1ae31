# -*- coding: utf-8 -*-
"""
Конфигурация сценария

Один JSON-документ на запуск. Пример - config.example.json в корне
репозитория, по одному образцу на сценарий - в docs/config_examples/.

Ключи: scenario, kappa, lambda0, t_max, dt, kappa_right, lambda0_right,
g, delta, chi, seed, output_path. Неизвестные ключи отклоняются.
"""

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigParseError, DomainError
from .qudit_core import make_qutrit
from .transfer import ChannelParams

logger = logging.getLogger(__name__)

SCENARIOS = ("transfer", "pulses", "symmetrize", "antisymmetrize", "qss", "distribute")
CHANNEL_SCENARIOS = ("transfer", "pulses", "distribute")
KNOWN_KEYS = (
    "scenario", "kappa", "lambda0", "t_max", "dt", "kappa_right", "lambda0_right",
    "g", "delta", "chi", "seed", "output_path",
)
DEFAULT_CHI = ((0.6, 0.0), (0.0, 0.48), (0.64, 0.0))
DEFAULT_SEED = 0


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Проверенная конфигурация сценария с заполненными значениями по умолчанию

    Args:
        scenario (str): Имя сценария
        kappa, lambda0 (float): Канал левой поляризации
        t_max, dt (float): Окно и шаг, общие для обоих каналов
        kappa_right, lambda0_right (float): Канал правой поляризации
        g, delta (float): Связь с полостью и отстройка для расчёта фаз лазеров (опционально)
        chi (tuple): Амплитуды секрета QSS
        seed (int): Зерно генератора
        output_path (str): Файл результата
    """

    scenario: str
    kappa: float
    lambda0: float
    t_max: float
    dt: float
    kappa_right: float
    lambda0_right: float
    chi: tuple
    seed: int
    output_path: str
    g: float = None
    delta: float = None

    @property
    def has_laser(self):
        return self.g is not None and self.delta is not None

    def channel_params(self):
        """Параметры каналов (левая, правая поляризация)"""
        return (
            ChannelParams(self.kappa, self.lambda0, self.t_max, self.dt),
            ChannelParams(self.kappa_right, self.lambda0_right, self.t_max, self.dt),
        )


def _key_line(text, key):
    """Номер строки (с 1), где впервые встречается ключ"""
    match = re.search(r'"%s"\s*:' % re.escape(key), text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


def validate_positive(name, value):
    """
    Проверка положительного конечного числа

    Returns:
        tuple: (is_valid, error_message)
    """
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return False, f"{name} должен быть числом"
    if not np.isfinite(value) or value <= 0:
        return False, f"{name} должен быть положительным, получено {value!r}"
    return True, "OK"


def validate_nonzero(name, value):
    """Проверка ненулевого конечного числа (g и Δ могут быть отрицательными)"""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return False, f"{name} должен быть числом"
    if not np.isfinite(value) or value == 0:
        return False, f"{name} должен быть ненулевым конечным числом, получено {value!r}"
    return True, "OK"


def validate_chi(value):
    """
    Проверка амплитуд секрета: три пары [re, im], сумма квадратов модулей 1

    Returns:
        tuple: (is_valid, error_message)
    """
    if not isinstance(value, list) or len(value) != 3:
        return False, "chi должен содержать три пары [re, im]"
    for pair in value:
        if not isinstance(pair, list) or len(pair) != 2:
            return False, "каждая амплитуда chi - пара [re, im]"
        if any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in pair):
            return False, "компоненты chi должны быть числами"
    try:
        make_qutrit(*(complex(real, imag) for real, imag in value))
    except DomainError as e:
        return False, f"chi не нормирован: {e}"
    return True, "OK"


def validate_seed(value):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        return False, f"seed должен быть неотрицательным целым, получено {value!r}"
    return True, "OK"


def default_output_path(scenario):
    extension = "csv" if scenario == "pulses" else "json"
    return str(Path("out") / f"{scenario}.{extension}")


def parse_config(text):
    """
    Разбор и проверка документа конфигурации

    Значения по умолчанию: κ = 1, λ₀ = κ/√2, T = 10/κ, dt = 0.005/κ, seed = 0.

    Args:
        text (str): JSON-документ

    Returns:
        ScenarioConfig: Проверенная конфигурация

    Raises:
        ConfigParseError: Синтаксическая ошибка, неизвестный сценарий или ключ,
            отсутствующее поле или нарушенный инвариант (с именем поля и строкой)
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigParseError(None, e.lineno, f"ошибка формата JSON: {e.msg}") from None
    if not isinstance(document, dict):
        raise ConfigParseError(None, 1, "документ должен быть JSON-объектом")

    def fail(field, reason):
        raise ConfigParseError(field, _key_line(text, field), reason)

    for key in document:
        if key not in KNOWN_KEYS:
            fail(key, "неизвестный ключ")

    scenario = document.get("scenario")
    if scenario is None:
        raise ConfigParseError("scenario", None, "обязательное поле отсутствует")
    if scenario not in SCENARIOS:
        fail("scenario", f"неизвестный сценарий {scenario!r}; допустимы: {', '.join(SCENARIOS)}")

    values = {}
    for name in ("kappa", "lambda0", "t_max", "dt", "kappa_right", "lambda0_right", "g", "delta"):
        if name not in document:
            continue
        validator = validate_nonzero if name in ("g", "delta") else validate_positive
        is_valid, message = validator(name, document[name])
        if not is_valid:
            fail(name, message)
        values[name] = float(document[name])

    kappa = values.get("kappa", 1.0)
    lambda0 = values.get("lambda0", kappa / np.sqrt(2.0))
    t_max = values.get("t_max", 10.0 / kappa)
    dt = values.get("dt", 0.005 / kappa)
    kappa_right = values.get("kappa_right", kappa)
    lambda0_right = values.get("lambda0_right", lambda0 if "lambda0" in values else kappa_right / np.sqrt(2.0))

    if dt > t_max / 100 * (1 + 1e-12):
        fail("dt", f"шаг dt={dt!r} больше t_max/100={t_max / 100!r}")

    if ("g" in values) != ("delta" in values):
        fail("g" if "g" in values else "delta", "поля g и delta задаются вместе")

    chi = DEFAULT_CHI
    if "chi" in document:
        is_valid, message = validate_chi(document["chi"])
        if not is_valid:
            fail("chi", message)
        chi = tuple((float(real), float(imag)) for real, imag in document["chi"])

    seed = document.get("seed", DEFAULT_SEED)
    is_valid, message = validate_seed(seed)
    if not is_valid:
        fail("seed", message)

    output_path = document.get("output_path", default_output_path(scenario))
    if not isinstance(output_path, str) or not output_path:
        fail("output_path", "output_path должен быть непустой строкой")

    config = ScenarioConfig(
        scenario=scenario,
        kappa=kappa,
        lambda0=lambda0,
        t_max=t_max,
        dt=dt,
        kappa_right=kappa_right,
        lambda0_right=lambda0_right,
        chi=chi,
        seed=seed,
        output_path=output_path,
        g=values.get("g"),
        delta=values.get("delta"),
    )
    logger.debug("конфигурация: %s", config)
    return config


def chi_amplitudes(config):
    """Амплитуды секрета в комплексном виде"""
    return tuple(complex(real, imag) for real, imag in config.chi)


def load_config(path):
    """
    Загрузка конфигурации из файла

    Raises:
        ConfigParseError: Файл не найден или не прошёл проверку
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigParseError(None, None, f"файл {path} не найден") from None
    return parse_config(text)
