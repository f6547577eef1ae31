# -*- coding: utf-8 -*-
"""
Запуск сценариев из командной строки

    python -m qutrit_transfer run --config config.json
    python -m qutrit_transfer validate --config config.json

Коды выхода: 0 - успех, 1 - ошибка конфигурации, 2 - нарушен численный инвариант.
"""

import argparse
import logging
import sys

from tabulate import tabulate

from . import protocols
from .config import CHANNEL_SCENARIOS, chi_amplitudes, load_config
from .errors import ConfigurationError, DomainError, InvariantViolation
from .export import complex_pair, write_json, write_trajectory_csv
from .qudit_core import fidelity, make_qutrit
from .transfer import stark_for_schedule, transfer_channel, transfer_qutrit, validate_trajectory

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INVARIANT = 2

OVERLAP_TOL = 1e-10


def _channels(config):
    """Расписания и траектории обоих каналов с проверкой инвариантов"""
    channels = {}
    for side, params in zip(("l", "r"), config.channel_params()):
        schedule, trajectory = transfer_channel(params)
        is_valid, message = validate_trajectory(trajectory, schedule, params.kappa)
        if not is_valid:
            raise InvariantViolation(f"канал {side}: {message}")
        channels[side] = (schedule, trajectory)
    return channels


def _laser_block(config, channels):
    """Отстройка полости и конечные фазы лазеров для обоих каналов"""
    block = {}
    for side, (schedule, _) in channels.items():
        first, second = stark_for_schedule(schedule, config.g, config.delta)
        block["delta_shift"] = first.delta_shift
        block[f"phi1_final_{side}"] = float(first.phi[-1])
        block[f"phi2_final_{side}"] = float(second.phi[-1])
    return block


def run_transfer(config):
    channels = _channels(config)
    _, left = channels["l"]
    _, right = channels["r"]
    _, qutrit_fidelity = transfer_qutrit(chi_amplitudes(config), left, right)

    report = {
        "alpha2_final_l": float(left.alpha2[-1]),
        "alpha2_final_r": float(right.alpha2[-1]),
        "qutrit_fidelity": qutrit_fidelity,
    }
    if config.has_laser:
        report["laser"] = _laser_block(config, channels)
    write_json(config.output_path, report)
    return report


def run_pulses(config):
    channels = _channels(config)
    schedule, trajectory = channels["l"]
    write_trajectory_csv(config.output_path, schedule, trajectory)

    alpha1, alpha2, d_a = trajectory.final_state()
    summary = {"points": int(trajectory.times.size), "alpha1_final": alpha1, "alpha2_final": alpha2, "d_a_final": d_a}
    flips = schedule.sign_flips()
    if flips.size:
        summary["sign_flips"] = int(flips.size)
    if config.has_laser:
        summary.update(_laser_block(config, channels))
    return summary


def _permutation_report(state, signed):
    overlaps = []
    for order, sign, overlap in protocols.permutation_overlaps(state):
        expected = sign if signed else 1
        if abs(overlap - expected) > OVERLAP_TOL:
            raise InvariantViolation(f"перекрытие для перестановки {order} равно {overlap:.12g}, ожидалось {expected}")
        overlaps.append({"permutation": list(order), "sign": sign, "overlap": complex_pair(overlap)})
    return {
        "amplitudes": [complex_pair(a) for a in state.amps],
        "overlaps": overlaps,
    }


def run_symmetrize(config):
    report = _permutation_report(protocols.generate_symmetric(), signed=False)
    write_json(config.output_path, report)
    return report


def run_antisymmetrize(config):
    report = _permutation_report(protocols.generate_antisymmetric(), signed=True)
    write_json(config.output_path, report)
    return report


def run_qss(config):
    chi = chi_amplitudes(config)
    corrections = protocols.derive_corrections()
    report = protocols.qss_audit(chi, corrections)

    worst = min(branch["fidelity"] for branch in report["branches"])
    if worst < 1.0 - OVERLAP_TOL:
        raise InvariantViolation(f"восстановление секрета с точностью {worst:.12g}")

    record, recovered = protocols.qss_reconstruct(protocols.qss_share(chi), corrections, seed=config.seed)
    report["sample_run"] = {
        "seed": config.seed,
        "m": record.m,
        "mu": record.mu,
        "l": record.l,
        "a": record.correction_a,
        "b": record.correction_b,
        "fidelity": fidelity(recovered, make_qutrit(*chi)),
    }
    write_json(config.output_path, report)
    return report


def run_distribute(config):
    channels = _channels(config)
    alpha_l = float(channels["l"][1].alpha2[-1])
    alpha_r = float(channels["r"][1].alpha2[-1])
    state, distribution_fidelity = protocols.distribute_entanglement(min(alpha_l, 1.0), min(alpha_r, 1.0))

    report = {
        "alpha2_final_l": alpha_l,
        "alpha2_final_r": alpha_r,
        "amplitudes": [complex_pair(a) for a in state.amps],
        "fidelity": distribution_fidelity,
    }
    write_json(config.output_path, report)
    return report


RUNNERS = {
    "transfer": run_transfer,
    "pulses": run_pulses,
    "symmetrize": run_symmetrize,
    "antisymmetrize": run_antisymmetrize,
    "qss": run_qss,
    "distribute": run_distribute,
}


def run_scenario(config):
    """
    Выполнение сценария и запись файла результата

    Returns:
        dict: Сводка для консоли

    Raises:
        InvariantViolation: Нарушен численный инвариант
    """
    logger.debug("сценарий %s -> %s", config.scenario, config.output_path)
    return RUNNERS[config.scenario](config)


def display_summary(config, report):
    """Таблица скалярных полей отчёта"""
    rows = []
    for key, value in report.items():
        if isinstance(value, dict):
            rows.extend((f"{key}.{k}", v) for k, v in value.items() if not isinstance(v, (list, dict)))
        elif isinstance(value, list):
            rows.append((key, f"[{len(value)}]"))
        else:
            rows.append((key, value))
    print(f"\n📊 СВОДКА: {config.scenario}")
    print(tabulate(rows, headers=["Поле", "Значение"], tablefmt="grid", floatfmt=".12g"))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qutrit_transfer",
        description="Перенос состояний кутритов между полостями и протоколы на его основе",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "выполнить сценарий и записать файл результата"),
        ("validate", "только проверить конфигурацию"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", required=True, help="путь к JSON-конфигурации")
        sub.add_argument("--verbose", "-v", action="store_true", help="подробный журнал (DEBUG)")
    return parser


def main(argv=None):
    """
    Точка входа

    Returns:
        int: Код выхода
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        config = load_config(args.config)
    except ConfigurationError as e:
        print(f"❌ Ошибка конфигурации: {e}")
        return EXIT_CONFIG

    if args.command == "validate":
        print(f"✅ Конфигурация корректна: сценарий {config.scenario}")
        return EXIT_OK

    print(f"🚀 СЦЕНАРИЙ {config.scenario.upper()}")
    print("=" * 55)
    if config.scenario in CHANNEL_SCENARIOS:
        print(f"📐 κ = {config.kappa:g}, λ₀ = {config.lambda0:g}, T = {config.t_max:g}, dt = {config.dt:g}")

    try:
        report = run_scenario(config)
    except InvariantViolation as e:
        print(f"❌ Нарушен инвариант: {e}")
        return EXIT_INVARIANT
    except (ConfigurationError, DomainError) as e:
        print(f"❌ Некорректные параметры: {e}")
        return EXIT_CONFIG

    display_summary(config, report)
    print(f"\n💾 Результат записан: {config.output_path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
