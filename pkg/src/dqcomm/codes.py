"""Stabilizer codes and the map forms of the distillation benchmarks.

A distillation round over ``e`` EPR pairs only sees the error on the
A-halves: measuring a generator on both sides and comparing outcomes flags
exactly the generators that anticommute with that error, and the logical
pairs left after decoding carry its logical class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import gf2
from .clifford import (
    CliffordCircuit,
    ContractError,
    MapForm,
    RegisterLayout,
    cnot,
    conjugate_circuit,
    map_from_columns,
)
from .pauli import PauliString, commutes, parse_label, symplectic_product


def _swap(p: PauliString) -> int:
    # pairing a pattern against this mask gives the symplectic product
    return p.z | (p.x << p.length)


@dataclass(frozen=True)
class StabilizerCode:
    name: str
    generators: tuple[PauliString, ...]
    logicals: Optional[tuple[tuple[PauliString, PauliString], ...]] = field(default=None)

    def __post_init__(self) -> None:
        if not self.generators:
            raise ContractError("a code needs at least one generator")
        n = self.generators[0].length
        if any(g.length != n for g in self.generators):
            raise ContractError("generators act on different block lengths")
        for i, a in enumerate(self.generators):
            for b in self.generators[i + 1 :]:
                if not commutes(a, b):
                    raise ContractError(f"generators {a.label} and {b.label} anticommute")
        if gf2.rank(g.to_int() for g in self.generators) != len(self.generators):
            raise ContractError("generators are not independent")
        if self.logicals is None:
            object.__setattr__(self, "logicals", _logical_pairs(self.generators))

    @classmethod
    def from_labels(cls, name: str, labels: Sequence[str]) -> "StabilizerCode":
        return cls(name, tuple(parse_label(s) for s in labels))

    @property
    def n(self) -> int:
        return self.generators[0].length

    @property
    def k(self) -> int:
        return self.n - len(self.generators)


def _logical_pairs(gens: Sequence[PauliString]) -> tuple[tuple[PauliString, PauliString], ...]:
    """Symplectic Gram-Schmidt on the normalizer modulo the stabilizer."""
    n = gens[0].length
    normalizer = gf2.nullspace([_swap(g) for g in gens], 2 * n)
    pool = [PauliString(n, v & ((1 << n) - 1), v >> n) for v in normalizer]
    fixed = [g.to_int() for g in gens]
    pairs = []
    while pool:
        a = pool.pop(0)
        if gf2.in_span(a.to_int(), fixed):
            continue
        partner = next((i for i, b in enumerate(pool) if symplectic_product(a, b)), None)
        if partner is None:
            fixed.append(a.to_int())
            continue
        b = pool.pop(partner)
        pairs.append((a, b))
        fixed.extend((a.to_int(), b.to_int()))
        # clear the pair out of the remaining candidates
        pool = [
            c * (b if symplectic_product(c, a) else PauliString.identity(n))
            * (a if symplectic_product(c, b) else PauliString.identity(n))
            for c in pool
        ]
    return tuple(pairs)


CODES = {
    "zz": StabilizerCode.from_labels("zz", ["ZZ"]),
    "ixx_zzz": StabilizerCode.from_labels("ixx_zzz", ["IXX", "ZZZ"]),
    "c422": StabilizerCode.from_labels("c422", ["XXXX", "ZZZZ"]),
    "steane": StabilizerCode(
        "steane",
        tuple(
            parse_label(s)
            for s in ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"]
        ),
        ((parse_label("XXXXXXX"), parse_label("ZZZZZZZ")),),
    ),
}


def qed_map(code: StabilizerCode) -> MapForm:
    """Syndrome and distilled-pair residual of QED with ``code``."""
    n, k = code.n, code.k
    rows = tuple(_swap(g) for g in code.generators)
    # X on logical j is flagged by Z-bar_j, Z by X-bar_j
    res = tuple(_swap(z) for _, z in code.logicals) + tuple(_swap(x) for x, _ in code.logicals)
    return MapForm(n, k, rows, res)


def recurrence_map() -> MapForm:
    """One recurrence round: bilateral CNOT from pair 0 onto pair 1, then
    compare Z outcomes of pair 1; pair 0 survives."""
    layout = RegisterLayout(0, 2)
    bilateral = CliffordCircuit(
        layout.register_size,
        (cnot(layout.a_half(0), layout.a_half(1)), cnot(layout.b_half(0), layout.b_half(1))),
    )
    s_cols, l_cols = [], []
    for kind in "XZ":
        for site in range(2):
            err = PauliString.single(2, site, kind).embed(layout.register_size, layout.a_halves)
            out = conjugate_circuit(bilateral, err)

            def shift(j: int, axis: int) -> int:
                v = out.x if axis == 0 else out.z
                return ((v >> layout.a_half(j)) ^ (v >> layout.b_half(j))) & 1

            s_cols.append(shift(1, 0))
            l_cols.append(shift(0, 0) | (shift(0, 1) << 1))
    return map_from_columns(2, 1, s_cols, 1, l_cols)


def compose_maps(blocks: Sequence[MapForm]) -> MapForm:
    """Independent blocks side by side; sites, syndromes and logicals concatenate."""
    m = sum(b.m for b in blocks)
    k = sum(b.k for b in blocks)
    if any(b.residual_rows is None for b in blocks):
        raise ContractError("composition needs residual maps on every block")

    def lift(row: int, block: MapForm, offset: int) -> int:
        low = (1 << block.m) - 1
        return ((row & low) << offset) | (((row >> block.m) & low) << (m + offset))

    syn, res_x, res_z = [], [], []
    offset = 0
    for b in blocks:
        syn.extend(lift(r, b, offset) for r in b.syndrome_rows)
        res_x.extend(lift(r, b, offset) for r in b.residual_rows[: b.k])
        res_z.extend(lift(r, b, offset) for r in b.residual_rows[b.k :])
        offset += b.m
    return MapForm(m, k, tuple(syn), tuple(res_x + res_z))
