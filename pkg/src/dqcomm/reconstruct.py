"""Exhaustive search for CNOT-only encoder/decoder pairs.

CNOT circuits permute computational basis states, so ``V_B† V_A`` fixes
``|c> ⊗ |Phi+>^e`` for every logical basis state ``c`` exactly when
``V_A`` and ``V_B`` send that state to the same set of basis strings.
Encoders and decoders are bucketed by that image and matched up, which
keeps the search linear in the number of candidates on each side.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Callable, Iterator, Sequence

from .clifford import CliffordCircuit, RegisterLayout, cnot, check_reversibility


def _apply(gates: Sequence[tuple[int, int]], bits: int) -> int:
    for c, t in gates:
        if (bits >> c) & 1:
            bits ^= 1 << t
    return bits


def _initial_states(layout: RegisterLayout, c: int) -> list[int]:
    states = []
    for y in range(1 << layout.e):
        bits = c
        for j in range(layout.e):
            if (y >> j) & 1:
                bits |= (1 << layout.a_half(j)) | (1 << layout.b_half(j))
        states.append(bits)
    return states


def _image_key(layout: RegisterLayout, gates: Sequence[tuple[int, int]]) -> tuple:
    return tuple(
        frozenset(_apply(gates, s) for s in _initial_states(layout, c))
        for c in range(1 << layout.k)
    )


def _sequences(qubits: Sequence[int], count: int) -> Iterator[tuple[tuple[int, int], ...]]:
    pairs = [(c, t) for c in qubits for t in qubits if c != t]
    # adjacent identical CNOTs cancel, so they never give a minimal circuit
    for seq in itertools.product(pairs, repeat=count):
        if any(seq[i] == seq[i + 1] for i in range(count - 1)):
            continue
        yield seq


def search_cnot_pairs(
    layout: RegisterLayout,
    encoder_cnots: int,
    decoder_cnots: int,
    accept: Callable[[CliffordCircuit, CliffordCircuit], bool] = lambda e, d: True,
    limit: int | None = None,
) -> list[tuple[CliffordCircuit, CliffordCircuit]]:
    """All reversible (encoder, decoder) pairs with the given CNOT counts.

    The encoder acts on the logical qubits and A-halves, the decoder on the
    logical qubits and B-halves. Pairs passing the bucket match are confirmed
    with :func:`check_reversibility` before ``accept`` sees them.
    """
    n = layout.register_size
    a_side = layout.logical + layout.a_halves
    b_side = layout.logical + layout.b_halves

    decoders: dict[tuple, list[tuple[tuple[int, int], ...]]] = defaultdict(list)
    for seq in _sequences(b_side, decoder_cnots):
        decoders[_image_key(layout, seq)].append(seq)

    found = []
    for enc_seq in _sequences(a_side, encoder_cnots):
        matches = decoders.get(_image_key(layout, enc_seq))
        if not matches:
            continue
        encoder = CliffordCircuit(n, tuple(cnot(c, t) for c, t in enc_seq), "encoder")
        for dec_seq in matches:
            decoder = CliffordCircuit(n, tuple(cnot(c, t) for c, t in dec_seq), "decoder")
            if check_reversibility(layout, encoder, decoder) and accept(encoder, decoder):
                found.append((encoder, decoder))
                if limit is not None and len(found) >= limit:
                    return found
    return found
