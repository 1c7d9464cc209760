import numpy as np
import pytest

from dqcomm.clifford import (
    CliffordCircuit,
    CliffordGate,
    ContractError,
    RegisterLayout,
    check_reversibility,
    cnot,
    conjugate_circuit,
    conjugate_gate,
    derive_maps,
    hadamard,
    residual_error,
)
from dqcomm.pauli import DimensionError, from_int, parse_label
from dqcomm.schemes import (
    elimination_circuit,
    proposed1_circuit,
    proposed2q_circuit,
    proposed7_circuit,
)
from conftest import dense
import statevector as sv


def gate_matrix(gate, n):
    dim = 2**n
    if gate.kind == "H":
        mats = [np.eye(2)] * n
        mats[gate.target] = sv.H
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out
    u = np.zeros((dim, dim))
    for i in range(dim):
        bits = [(i >> (n - 1 - q)) & 1 for q in range(n)]
        if bits[gate.control]:
            bits[gate.target] ^= 1
        j = sum(b << (n - 1 - q) for q, b in enumerate(bits))
        u[j, i] = 1
    return u


def test_conjugation_matches_matrices_exhaustively():
    n = 3
    gates = [hadamard(q) for q in range(n)] + [cnot(c, t) for c in range(n) for t in range(n) if c != t]
    for gate in gates:
        u = gate_matrix(gate, n)
        for code in range(4**n):
            for sign in (1, -1):
                p = from_int(code, n).with_sign(sign)
                out = conjugate_gate(gate, p)
                assert np.allclose(u @ dense(p.label, sign) @ u.conj().T, dense(out.label, out.sign))


def test_circuit_inverse_undoes_forward():
    circ = CliffordCircuit(3, (cnot(0, 1), hadamard(2), cnot(2, 0)))
    for code in range(64):
        p = from_int(code, 3).with_sign(1)
        assert conjugate_circuit(circ, conjugate_circuit(circ, p), "inverse") == p


def test_gate_validation():
    with pytest.raises(ValueError):
        cnot(1, 1)
    with pytest.raises(ValueError):
        CliffordGate("T", 0)
    with pytest.raises(DimensionError):
        CliffordCircuit(2, (cnot(0, 2),))


def test_json_round_trip():
    circ = proposed7_circuit().encoder
    assert CliffordCircuit.from_json(circ.to_json()) == circ
    assert circ.cnot_count == 11


@pytest.mark.parametrize(
    "form",
    [proposed1_circuit(), elimination_circuit(), proposed2q_circuit(), proposed7_circuit()],
    ids=["one-pair", "two-pair", "two-logical", "seven"],
)
def test_reversibility_agrees_with_state_vectors(form, rng):
    layout = form.layout
    assert check_reversibility(layout, form.encoder, form.decoder)
    start = sv.logical_with_pairs(layout, rng)
    out = sv.run(sv.run(start, form.encoder.gates), form.decoder.gates, inverse=True)
    assert sv.overlap(start, out) == pytest.approx(1)


def test_reversed_mirror_is_not_reversible(rng):
    form = proposed7_circuit()
    bad = CliffordCircuit(form.decoder.register_size, tuple(reversed(form.decoder.gates)))
    assert not check_reversibility(form.layout, form.encoder, bad)
    start = sv.logical_with_pairs(form.layout, rng)
    out = sv.run(sv.run(start, form.encoder.gates), bad.gates, inverse=True)
    assert sv.overlap(start, out) < 0.999
    with pytest.raises(ContractError):
        derive_maps(form.layout, form.encoder, bad, form.bases)


def _state_after(form, pattern, start):
    layout = form.layout
    sites = layout.logical + layout.a_halves
    half_sites = sites[layout.k:]
    state = sv.apply_pauli(start, pattern.label[layout.k:], half_sites)
    state = sv.run(state, form.encoder.gates)
    state = sv.apply_pauli(state, pattern.label[: layout.k], layout.logical)
    return sv.run(state, form.decoder.gates, inverse=True)


@pytest.mark.parametrize("form", [proposed1_circuit(), elimination_circuit()], ids=["one", "two"])
def test_frame_matches_state_vectors_exhaustively(form, rng):
    layout = form.layout
    m = layout.k + layout.e
    start = sv.logical_with_pairs(layout, rng)
    for code in range(4**m):
        pattern = from_int(code, m)
        frame = residual_error(layout, form.encoder, form.decoder, pattern)
        actual = _state_after(form, pattern, start)
        predicted = sv.apply_pauli(start, frame.total.label, range(layout.register_size))
        assert sv.overlap(actual, predicted) == pytest.approx(1)
        for j, basis in enumerate(form.bases):
            a, b = layout.a_half(j), layout.b_half(j)
            probe = actual
            if basis == "X":
                probe = sv.apply_1q(sv.apply_1q(actual, sv.H, a), sv.H, b)
            assert sv.prob_pair_differs(probe, a, b) == pytest.approx(frame.syndrome(form.bases)[j])


def test_frame_matches_state_vectors_on_seven_qubit_samples(rng):
    form = proposed7_circuit()
    layout = form.layout
    start = sv.logical_with_pairs(layout, rng)
    for code in rng.integers(0, 4**7, size=40):
        pattern = from_int(int(code), 7)
        frame = residual_error(layout, form.encoder, form.decoder, pattern)
        predicted = sv.apply_pauli(start, frame.total.label, range(layout.register_size))
        assert sv.overlap(_state_after(form, pattern, start), predicted) == pytest.approx(1)


def test_one_pair_examples():
    form = proposed1_circuit()
    zz = residual_error(form.layout, form.encoder, form.decoder, parse_label("ZZ"))
    assert zz.residual.label == "I" and zz.bell_states == ("Phi-",)
    xi = residual_error(form.layout, form.encoder, form.decoder, parse_label("XI"))
    assert xi.residual.label == "X" and xi.bell_states == ("Psi+",)
    assert xi.syndrome("Z") == (1,)


def test_noise_free_lookup_table_from_circuit():
    form = elimination_circuit(noisy_halves=False)
    seen = {}
    for label in "IXYZ":
        frame = residual_error(form.layout, form.encoder, form.decoder, parse_label(label), False)
        assert frame.residual.label == label
        seen["".join(map(str, frame.syndrome(form.bases)))] = label
    assert seen == {"00": "I", "10": "X", "11": "Y", "01": "Z"}


def test_layout_indices():
    layout = RegisterLayout(2, 3)
    assert layout.register_size == 8
    assert layout.a_halves == (2, 3, 4)
    assert layout.b_halves == (5, 6, 7)


def test_pattern_length_is_checked():
    form = proposed1_circuit()
    with pytest.raises(DimensionError):
        residual_error(form.layout, form.encoder, form.decoder, parse_label("XII"))
