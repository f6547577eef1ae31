# -*- coding: utf-8 -*-
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qutrit_transfer.errors import DomainError
from qutrit_transfer.gates import fourier, pauli_x, pauli_z, xor_lmd
from qutrit_transfer.qudit_core import (
    GateMatrix,
    StateVector,
    apply_unitary,
    factor_wire,
    fidelity,
    make_product,
    make_qutrit,
    make_register,
    measure_wires,
    outcome_probabilities,
    permute_wires,
    tensor,
)


def test_big_endian_index():
    state = make_product((3, 3, 3), (1, 0, 2))
    assert state.amps[11] == 1.0
    assert state.amplitude((1, 0, 2)) == 1.0
    assert state.ket() == "1|102>"


def test_make_register_rejects_out_of_range_index():
    with pytest.raises(DomainError):
        make_register((3, 3), 9)


@pytest.mark.parametrize("dims, amps", [
    ((3,), [1.0, 1.0, 0.0]),
    ((1, 3), [1.0, 0.0, 0.0]),
    ((3,), [1.0, 0.0]),
])
def test_state_vector_invariants(dims, amps):
    with pytest.raises(DomainError):
        StateVector(dims, amps)


def test_state_is_immutable():
    state = make_qutrit(1, 0, 0)
    with pytest.raises(ValueError):
        state.amps[0] = 0.5


def test_make_qutrit_requires_normalization():
    with pytest.raises(DomainError):
        make_qutrit(0.6, 0.6, 0.6)


def test_tensor_puts_first_argument_on_leading_wires():
    state = tensor(make_product((3,), (2,)), make_product((2,), (1,)))
    assert state.dims == (3, 2)
    assert state.amplitude((2, 1)) == 1.0


def test_apply_unitary_on_second_wire():
    state = apply_unitary(make_product((3, 3), (0, 0)), (1,), pauli_x(3))
    assert state.amplitude((0, 1)) == pytest.approx(1.0)


def test_apply_unitary_respects_wire_order():
    # управляющий провод - первый в списке
    state = make_product((3, 3), (0, 1))
    swapped = apply_unitary(state, (1, 0), xor_lmd(3))
    assert swapped.amplitude((1, 1)) == pytest.approx(1.0)


def test_apply_unitary_dimension_mismatch():
    with pytest.raises(DomainError):
        apply_unitary(make_product((3, 3), (0, 0)), (0,), xor_lmd(3))


def test_gate_matrix_rejects_non_unitary():
    with pytest.raises(DomainError):
        GateMatrix(2, [[1, 1], [0, 1]])


def test_measure_forced_zero_probability_outcome():
    with pytest.raises(DomainError):
        measure_wires(make_product((3,), (0,)), (0,), forced_outcome=2)


def test_measure_is_deterministic_for_seed():
    state = apply_unitary(make_product((3, 3), (0, 0)), (0,), fourier(3))
    first = measure_wires(state, (0,), seed=7)
    second = measure_wires(state, (0,), seed=7)
    assert first.outcome == second.outcome
    assert first.probability == pytest.approx(1 / 3)
    assert first.digits == (first.outcome,)


def test_measure_collapses_state():
    state = apply_unitary(make_product((3, 3), (0, 0)), (0,), fourier(3))
    state = apply_unitary(state, (0, 1), xor_lmd(3))
    result = measure_wires(state, (0,), forced_outcome=1)
    # |1⟩|1 - 0⟩
    assert result.post_state.amplitude((1, 1)) == pytest.approx(1.0)


def test_permute_wires():
    state = make_product((3, 3, 3), (0, 1, 2))
    rotated = permute_wires(state, (2, 0, 1))
    assert rotated.amplitude((2, 0, 1)) == pytest.approx(1.0)


def test_permute_wires_rejects_non_permutation():
    with pytest.raises(DomainError):
        permute_wires(make_product((3, 3), (0, 0)), (0, 0))


def test_factor_wire_product_and_entangled():
    product = tensor(make_qutrit(0.6, 0.8j, 0), make_qutrit(0, 0, 1))
    local = factor_wire(product, 0)
    assert fidelity(local, make_qutrit(0.6, 0.8j, 0)) == pytest.approx(1.0)

    entangled = apply_unitary(apply_unitary(make_product((3, 3), (0, 0)), (0,), fourier(3)), (0, 1), xor_lmd(3))
    with pytest.raises(DomainError):
        factor_wire(entangled, 1)


GATES = [fourier(3), pauli_x(3), pauli_z(3)]


@settings(max_examples=50, deadline=None)
@given(
    steps=st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=12),
    basis=st.integers(0, 26),
)
def test_norm_preserved_under_gate_sequences(steps, basis):
    state = make_register((3, 3, 3), basis)
    for kind, first, second in steps:
        if kind < 3:
            state = apply_unitary(state, (first,), GATES[kind])
        elif first != second:
            state = apply_unitary(state, (first, second), xor_lmd(3))
    assert np.linalg.norm(state.amps) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    coeffs=st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=9, max_size=9),
    wire=st.integers(0, 1),
)
def test_measurement_probabilities_complete(coeffs, wire):
    amps = np.array(coeffs, dtype=complex)
    if np.linalg.norm(amps) < 1e-6:
        amps[0] = 1.0
    state = StateVector.from_unnormalized((3, 3), amps)
    probs = outcome_probabilities(state, (wire,))
    assert probs.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(probs >= 0)


def state_from(dims, coeffs):
    amps = np.array(coeffs, dtype=complex)
    if np.linalg.norm(amps) < 1e-6:
        amps[0] = 1.0
    return StateVector.from_unnormalized(dims, amps)


COMPLEX = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(
    coeffs=st.lists(COMPLEX, min_size=9, max_size=9),
    wire=st.integers(0, 1),
    seed=st.integers(0, 2 ** 31),
)
def test_repeated_measurement_keeps_collapsed_state(coeffs, wire, seed):
    first = measure_wires(state_from((3, 3), coeffs), (wire,), seed=seed)
    second = measure_wires(first.post_state, (wire,), forced_outcome=first.outcome)
    assert second.outcome == first.outcome
    assert second.probability == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(second.post_state.amps, first.post_state.amps, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    pair=st.lists(COMPLEX, min_size=9, max_size=9),
    single=st.lists(COMPLEX, min_size=3, max_size=3),
    kind=st.integers(0, 2),
    wire=st.integers(0, 1),
)
def test_gate_commutes_with_tensor(pair, single, kind, wire):
    a = state_from((3, 3), pair)
    b = state_from((3,), single)
    gate = GATES[kind]
    np.testing.assert_allclose(
        tensor(apply_unitary(a, (wire,), gate), b).amps,
        apply_unitary(tensor(a, b), (wire,), gate).amps,
        atol=1e-12,
    )
    np.testing.assert_allclose(
        tensor(b, apply_unitary(a, (wire,), gate)).amps,
        apply_unitary(tensor(b, a), (wire + 1,), gate).amps,
        atol=1e-12,
    )
    np.testing.assert_allclose(
        tensor(apply_unitary(a, (0, 1), xor_lmd(3)), b).amps,
        apply_unitary(tensor(a, b), (0, 1), xor_lmd(3)).amps,
        atol=1e-12,
    )
