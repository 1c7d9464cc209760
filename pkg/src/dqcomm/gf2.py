"""Bit-vector linear algebra over GF(2); vectors are Python ints."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


def parity(v: int) -> int:
    return v.bit_count() & 1


def apply_rows(rows: Sequence[int], v: int) -> int:
    """Matrix-vector product; row ``i`` gives output bit ``i``."""
    out = 0
    for i, row in enumerate(rows):
        out |= parity(row & v) << i
    return out


def columns_to_rows(columns: Sequence[int], n_rows: int) -> tuple[int, ...]:
    rows = [0] * n_rows
    for j, col in enumerate(columns):
        for i in range(n_rows):
            if (col >> i) & 1:
                rows[i] |= 1 << j
    return tuple(rows)


def _reduce(basis: dict[int, int], v: int) -> int:
    # basis maps pivot bit -> vector whose highest set bit is the pivot
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return v
        v ^= basis[top]
    return 0


def echelon(vectors: Iterable[int]) -> dict[int, int]:
    basis: dict[int, int] = {}
    for v in vectors:
        r = _reduce(basis, v)
        if r:
            basis[r.bit_length() - 1] = r
    return basis


def rank(vectors: Iterable[int]) -> int:
    return len(echelon(vectors))


def in_span(v: int, vectors: Iterable[int]) -> bool:
    return _reduce(echelon(vectors), v) == 0


def decompose(v: int, vectors: Sequence[int]) -> Optional[list[int]]:
    """Indices of ``vectors`` XOR-ing to ``v``, or ``None`` if not in the span."""
    # each basis entry tracks which input vectors it combines
    basis: dict[int, tuple[int, int]] = {}
    for idx, vec in enumerate(vectors):
        combo = 1 << idx
        while vec:
            top = vec.bit_length() - 1
            if top not in basis:
                basis[top] = (vec, combo)
                break
            bv, bc = basis[top]
            vec ^= bv
            combo ^= bc
    combo = 0
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return None
        bv, bc = basis[top]
        v ^= bv
        combo ^= bc
    return [i for i in range(len(vectors)) if (combo >> i) & 1]


def span(vectors: Sequence[int]) -> list[int]:
    """All elements of the span (use only for small generating sets)."""
    elems = {0}
    for v in vectors:
        elems |= {e ^ v for e in elems}
    return sorted(elems)


def nullspace(rows: Sequence[int], n_cols: int) -> list[int]:
    """Basis of ``{v : parity(row & v) == 0 for every row}``."""
    pivots: dict[int, int] = {}
    for row in rows:
        for col, prow in pivots.items():
            if (row >> col) & 1:
                row ^= prow
        if not row:
            continue
        col = (row & -row).bit_length() - 1
        for c in pivots:
            if (pivots[c] >> col) & 1:
                pivots[c] ^= row
        pivots[col] = row
    basis = []
    for free in range(n_cols):
        if free in pivots:
            continue
        v = 1 << free
        for col, prow in pivots.items():
            if (prow >> free) & 1:
                v |= 1 << col
        basis.append(v)
    return basis
