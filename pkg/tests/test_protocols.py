# -*- coding: utf-8 -*-
import itertools

import numpy as np
import pytest

from qutrit_transfer.errors import ConfigurationError, DomainError
from qutrit_transfer.gates import BellLabel, bell_measurement, weyl
from qutrit_transfer.protocols import (
    DEALER,
    PSI_012_KETS,
    QUTRIT0,
    CorrectionTable,
    QssRecord,
    antisymmetric_reference,
    derived_exponents,
    distribute_chain,
    distribute_entanglement,
    distributed_target,
    generate_antisymmetric,
    generate_cyclic,
    generate_symmetric,
    identity_residual,
    permutation_overlaps,
    permutation_sign,
    prepare_subspace_bell,
    qss_audit,
    qss_reconstruct,
    qss_share,
    superposition,
    symmetric_reference,
)
from qutrit_transfer.qudit_core import apply_unitary, fidelity, make_product, make_qutrit
from tests.conftest import random_qutrit

GENERIC_CHI = (0.6, 0.48j, 0.64)


def test_generate_cyclic():
    state = generate_cyclic((0, 1, 2))
    np.testing.assert_allclose(state.amps, superposition((3, 3, 3), PSI_012_KETS).amps, atol=1e-12)
    with pytest.raises(DomainError):
        generate_cyclic((0, 0, 1))


@pytest.mark.parametrize("sign", [1, -1])
def test_prepare_subspace_bell(sign):
    state = prepare_subspace_bell(sign)
    assert state.amplitude((1, 2)) == pytest.approx(1 / np.sqrt(2))
    assert state.amplitude((2, 1)) == pytest.approx(sign / np.sqrt(2))


def test_prepare_subspace_bell_rejects_other_signs():
    with pytest.raises(DomainError):
        prepare_subspace_bell(0)


def test_symmetric_state_matches_reference():
    state = generate_symmetric()
    np.testing.assert_allclose(state.amps, symmetric_reference().amps, atol=1e-12)
    for _, _, overlap in permutation_overlaps(state):
        assert overlap == pytest.approx(1.0, abs=1e-10)


def test_antisymmetric_state_matches_reference_up_to_phase():
    state = generate_antisymmetric()
    assert fidelity(state, antisymmetric_reference()) == pytest.approx(1.0, abs=1e-10)
    for order, sign, overlap in permutation_overlaps(state):
        assert sign == permutation_sign(order)
        assert overlap == pytest.approx(sign, abs=1e-10)


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


def test_distribute_entanglement_ideal_channel():
    state, transfer_fidelity = distribute_entanglement(1.0, 1.0)
    assert transfer_fidelity == pytest.approx(1.0, abs=1e-12)
    assert fidelity(state, distributed_target()) == pytest.approx(1.0, abs=1e-12)


def test_distribute_entanglement_imperfect_channel():
    _, transfer_fidelity = distribute_entanglement(0.999, 0.999)
    assert transfer_fidelity == pytest.approx(((1 + 2 * 0.999) / 3) ** 2, abs=1e-12)


def test_distribute_entanglement_product_input():
    state, _ = distribute_entanglement(1.0, 1.0, source=make_product((3, 3), (0, 0)))
    assert state.amplitude((0, 0)) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        distribute_entanglement(1.0, 1.0, source=make_product((3,), (0,)))


def test_distribute_chain():
    state, chain_fidelity = distribute_chain([(1, 1.0, 1.0), (2, 1.0, 1.0)])
    assert chain_fidelity == pytest.approx(1.0, abs=1e-12)
    assert fidelity(state, generate_cyclic((0, 2, 1))) == pytest.approx(1.0, abs=1e-12)

    _, lossy = distribute_chain([(1, 0.99, 0.99), (2, 0.99, 0.99)])
    assert lossy < 1.0
    with pytest.raises(DomainError):
        distribute_chain([(1, 1.0, 1.0), (1, 1.0, 1.0)])


def test_derived_corrections(corrections):
    assert len(corrections) == 27
    for branch, exponents in corrections.entries.items():
        assert exponents == derived_exponents(*branch)
    assert not corrections.matches_published()
    mismatched = {branch for branch, _, _ in corrections.mismatches()}
    assert mismatched == {b for b in itertools.product(range(3), repeat=3) if b[0] != 0}


def test_qss_round_trip_all_branches(rng, corrections):
    for _ in range(100):
        chi = random_qutrit(rng)
        shared = qss_share(chi)
        for m, mu, l in itertools.product(range(3), repeat=3):
            record, recovered = qss_reconstruct(shared, corrections, forced_outcomes=(BellLabel(m, mu), l))
            assert (record.m, record.mu, record.l) == (m, mu, l)
            assert fidelity(recovered, make_qutrit(*chi)) == pytest.approx(1.0, abs=1e-10)


def test_bell_outcomes_on_shared_state_are_uniform(rng):
    for chi in (GENERIC_CHI, random_qutrit(rng)):
        shared = qss_share(chi)
        for m, mu in itertools.product(range(3), repeat=2):
            label, probability, _ = bell_measurement(shared, (DEALER, QUTRIT0), forced=BellLabel(m, mu))
            assert (label.m, label.mu) == (m, mu)
            assert probability == pytest.approx(1 / 9, abs=1e-12)


def test_qss_without_correction(corrections):
    chi_state = make_qutrit(*GENERIC_CHI)
    shared = qss_share(GENERIC_CHI)
    fidelities = []
    for m, mu, l in itertools.product(range(3), repeat=3):
        record, raw = qss_reconstruct(
            shared, corrections, forced_outcomes=(BellLabel(m, mu), l), apply_correction=False
        )
        # до коррекции кутрит 2 находится в X^a Z^b|χ⟩
        expected = apply_unitary(chi_state, (0,), weyl(3, record.correction_a, record.correction_b))
        assert fidelity(raw, expected) == pytest.approx(1.0, abs=1e-10)
        fidelities.append(fidelity(raw, chi_state))
    assert max(fidelities) == pytest.approx(1.0, abs=1e-10)
    assert min(fidelities) < 0.5


def test_qss_seeded_run_is_deterministic(corrections):
    shared = qss_share(GENERIC_CHI)
    first = qss_reconstruct(shared, corrections, seed=11)
    second = qss_reconstruct(shared, corrections, seed=11)
    assert first[0] == second[0]
    np.testing.assert_array_equal(first[1].amps, second[1].amps)


def test_qss_missing_correction():
    with pytest.raises(ConfigurationError):
        qss_reconstruct(qss_share(GENERIC_CHI), CorrectionTable({}), seed=0)


def test_qss_record_ranges():
    with pytest.raises(DomainError):
        QssRecord(0, 0, 3, 0, 0)


def test_qss_share_rejects_unnormalized_secret():
    with pytest.raises(DomainError):
        qss_share((1.0, 1.0, 0.0))


def test_identity_residual():
    corrected, first_bad = identity_residual(GENERIC_CHI, derived_exponents)
    assert corrected < 1e-12
    assert first_bad is None

    published, first_bad = identity_residual(GENERIC_CHI)
    assert published > 1e-3
    assert first_bad is not None


def test_qss_audit_report(corrections):
    report = qss_audit(GENERIC_CHI, corrections)
    assert len(report["branches"]) == 27
    assert all(branch["fidelity"] == pytest.approx(1.0, abs=1e-10) for branch in report["branches"])
    assert report["paper_exponents_match"] is False
    assert report["corrected_identity_residual"] < 1e-12
    assert len(report["published_exponent_mismatches"]) == 18
    assert report["party_map"]["party_3"] == ["qutrit_2"]
