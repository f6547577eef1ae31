# -*- coding: utf-8 -*-
"""
Файлы результатов: CSV траектории и JSON-отчёты

Числа записываются с 17 значащими цифрами, ключи JSON - в порядке
вставки, комплексные числа - парой [re, im]. Повторный запуск с той же
конфигурацией даёт побайтно одинаковые файлы.
"""

import csv
import io
import json
import logging
import math
from pathlib import Path

import numpy as np

from .errors import DomainError

logger = logging.getLogger(__name__)

TRAJECTORY_HEADER = ["t", "lambda1", "lambda2", "alpha1", "alpha2", "d_a", "norm_err"]
INDENT = " " * 4


def format_number(value):
    """Вещественное число с 17 значащими цифрами"""
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"нечисловое значение {value!r} нельзя записать в файл результатов")
    return format(value, ".17g")


def complex_pair(value):
    value = complex(value)
    return [value.real, value.imag]


def trajectory_rows(schedule, trajectory):
    """Строки CSV: t, λ₁, λ₂, α₁, α₂, d_a и отклонение нормы"""
    columns = [
        trajectory.times, schedule.lambda1, schedule.lambda2,
        trajectory.alpha1, trajectory.alpha2, trajectory.d_a,
        np.abs(trajectory.norm_error()),
    ]
    return [[format_number(x) for x in row] for row in zip(*columns)]


def render_trajectory_csv(schedule, trajectory):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(TRAJECTORY_HEADER)
    writer.writerows(trajectory_rows(schedule, trajectory))
    return buffer.getvalue()


def _render(value, level):
    pad = INDENT * (level + 1)
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{_render(str(key), level + 1)}: {_render(item, level + 1)}" for key, item in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + INDENT * level + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}{_render(item, level + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + "\n" + INDENT * level + "]"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        return _render(complex_pair(value), level)
    if isinstance(value, (float, np.floating)):
        return format_number(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    raise DomainError(f"тип {type(value).__name__} не поддерживается в отчёте")


def render_json(document):
    """JSON-текст: отступ 4 пробела, 17 значащих цифр, перевод строки в конце"""
    return _render(document, 0) + "\n"


def _write(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.debug("записан файл %s (%d байт)", path, len(text.encode("utf-8")))
    return path


def write_trajectory_csv(path, schedule, trajectory):
    """Запись траектории канала в CSV"""
    return _write(path, render_trajectory_csv(schedule, trajectory))


def write_json(path, document):
    """Запись JSON-отчёта"""
    return _write(path, render_json(document))
