# -*- coding: utf-8 -*-
"""Общие фикстуры тестов"""

import numpy as np
import pytest

from qutrit_transfer.protocols import derive_corrections
from qutrit_transfer.transfer import ChannelParams, transfer_channel


def random_qutrit(rng):
    """Случайные нормированные амплитуды (c0, c1, c2)"""
    amps = rng.normal(size=3) + 1j * rng.normal(size=3)
    amps /= np.linalg.norm(amps)
    return tuple(complex(a) for a in amps)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def default_params():
    return ChannelParams.default()


@pytest.fixture(scope="session")
def default_channel(default_params):
    """Расписание и траектория канала с параметрами по умолчанию"""
    return transfer_channel(default_params)


@pytest.fixture(scope="session")
def corrections():
    return derive_corrections()
