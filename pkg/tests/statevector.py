"""Small state-vector simulator used as an independent oracle."""

import numpy as np

from conftest import PAULI_MATRICES

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def apply_1q(state, matrix, q):
    s = np.moveaxis(state, q, 0)
    s = np.tensordot(matrix, s, axes=(1, 0))
    return np.moveaxis(s, 0, q)


def apply_cnot(state, c, t):
    s = np.moveaxis(state, (c, t), (0, 1)).copy()
    s[1] = s[1][::-1].copy()
    return np.moveaxis(s, (0, 1), (c, t))


def apply_pauli(state, label, sites):
    for ch, q in zip(label, sites):
        if ch != "I":
            state = apply_1q(state, PAULI_MATRICES[ch], q)
    return state


def run(state, gates, inverse=False):
    seq = reversed(gates) if inverse else gates
    for g in seq:
        if g.kind == "CNOT":
            state = apply_cnot(state, g.control, g.target)
        else:
            state = apply_1q(state, H, g.target)
    return state


def logical_with_pairs(layout, rng):
    """Random logical state tensored with |Phi+> on every pair."""
    n = layout.register_size
    state = np.zeros((2,) * n, dtype=complex)
    psi = rng.normal(size=2**layout.k) + 1j * rng.normal(size=2**layout.k)
    psi /= np.linalg.norm(psi)
    index = [0] * n
    for c in range(2**layout.k):
        for j, q in enumerate(layout.logical):
            index[q] = (c >> (layout.k - 1 - j)) & 1
        state[tuple(index)] = psi[c]
    for j in range(layout.e):
        state = apply_1q(state, H, layout.a_half(j))
        state = apply_cnot(state, layout.a_half(j), layout.b_half(j))
    return state


def overlap(a, b):
    return abs(np.vdot(a.ravel(), b.ravel()))


def prob_pair_differs(state, a, b):
    s = np.moveaxis(state, (a, b), (0, 1))
    probs = np.abs(s) ** 2
    return probs[0, 1].sum() + probs[1, 0].sum()
