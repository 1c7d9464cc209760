"""Scheme catalog, decision policies and syndrome lookup tables."""

from __future__ import annotations

import dataclasses
import functools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Literal, Mapping, Optional, Sequence, Union

from . import codes, gf2
from .channel import check_capacity, weight_probability
from .clifford import (
    CliffordCircuit,
    ContractError,
    MapForm,
    RegisterLayout,
    cnot,
    derive_maps,
    map_from_columns,
    noise_sites,
    residual_error,
)
from .pauli import DimensionError, PauliString, from_int, mul, parse_label
from .poly import Polynomial

Mode = Literal["detect", "correct", "eliminate"]


@dataclass(frozen=True)
class CircuitForm:
    layout: RegisterLayout
    encoder: CliffordCircuit
    decoder: CliffordCircuit
    bases: str
    noisy_halves: bool = True

    @property
    def m(self) -> int:
        return len(noise_sites(self.layout, self.noisy_halves))

    @functools.cached_property
    def maps(self) -> MapForm:
        return derive_maps(self.layout, self.encoder, self.decoder, self.bases, self.noisy_halves)

    def to_json(self) -> dict:
        return {
            "type": "circuit",
            "layout": self.layout.to_json(),
            "encoder": self.encoder.to_json(),
            "decoder": self.decoder.to_json(),
            "bases": self.bases,
            "noisy_halves": self.noisy_halves,
        }


def _bits(syndrome: Sequence[int]) -> str:
    return "".join(str(b) for b in syndrome)


@dataclass(frozen=True)
class SyndromeLUT:
    """Syndrome bit string (pair 0 leftmost) to recovery Pauli."""

    n_bits: int
    k: int
    table: Mapping[str, PauliString]

    @classmethod
    def from_labels(cls, n_bits: int, k: int, entries: Mapping[str, str]) -> "SyndromeLUT":
        return cls(n_bits, k, {s: parse_label(r) for s, r in entries.items()})

    @property
    def is_total(self) -> bool:
        return len(self.table) == 1 << self.n_bits

    def __getitem__(self, syndrome: Union[str, Sequence[int]]) -> PauliString:
        key = syndrome if isinstance(syndrome, str) else _bits(syndrome)
        return self.table[key]

    def replace(self, syndrome: str, recovery: str) -> "SyndromeLUT":
        return SyndromeLUT(self.n_bits, self.k, {**self.table, syndrome: parse_label(recovery)})

    def to_json(self) -> dict:
        return {s: self.table[s].label for s in sorted(self.table)}


@dataclass(frozen=True)
class DecisionPolicy:
    """``retain_if_zero``, ``sequential`` (measure pairs in ``order``, stop
    at the first nonzero bit) or ``lut`` (recover with ``lut``)."""

    kind: Literal["retain_if_zero", "sequential", "lut"]
    order: tuple[int, ...] = ()
    lut: Optional[SyndromeLUT] = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.order:
            out["order"] = list(self.order)
        if self.lut is not None:
            out["lut"] = self.lut.to_json()
        return out


@dataclass(frozen=True)
class SchemeSpec:
    name: str
    mode: Mode
    n: int
    k: int
    e: int
    c: int
    cnot_count: Optional[int]
    representation: Union[CircuitForm, MapForm]
    policy: DecisionPolicy
    # reconstructed gate-level circuit kept alongside an authoritative map
    circuit: Optional[CircuitForm] = field(default=None, compare=False)

    @property
    def m(self) -> int:
        return self.representation.m

    @property
    def maps(self) -> MapForm:
        rep = self.representation
        return rep if isinstance(rep, MapForm) else rep.maps

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "n": self.n,
            "k": self.k,
            "e": self.e,
            "c": self.c,
            "cnot_count": self.cnot_count,
            "representation": self.representation.to_json(),
            "policy": self.policy.to_json(),
        }


@dataclass(frozen=True)
class ResidualOutcome:
    syndrome: tuple[int, ...]
    decision: Literal["retain", "discard", "recover"]
    residual: Optional[PauliString]
    recovery: Optional[PauliString]
    success: bool

    @property
    def syndrome_bits(self) -> str:
        return _bits(self.syndrome)


def observe(
    s: SchemeSpec, pattern: PauliString
) -> tuple[tuple[int, ...], Optional[PauliString]]:
    """Full syndrome and residual of one pattern, before any decision."""
    rep = s.representation
    if isinstance(rep, CircuitForm):
        frame = residual_error(rep.layout, rep.encoder, rep.decoder, pattern, rep.noisy_halves)
        return frame.syndrome(rep.bases), frame.residual
    return rep.syndrome(pattern), rep.residual(pattern)


def evaluate(s: SchemeSpec, pattern: PauliString) -> ResidualOutcome:
    if pattern.length != s.m:
        raise DimensionError(f"{s.name} has {s.m} noise sites, pattern has {pattern.length}")
    syndrome, residual = observe(s, pattern)
    policy = s.policy
    if policy.kind == "lut":
        if policy.lut is None:
            raise ContractError(f"{s.name} has no lookup table")
        recovery = policy.lut[syndrome]
        ok = mul(recovery, residual).is_identity
        return ResidualOutcome(syndrome, "recover", residual, recovery, ok)
    if policy.kind == "sequential":
        seen = []
        for j in policy.order:
            seen.append(syndrome[j])
            if syndrome[j]:
                break
        syndrome = tuple(seen)
    retained = not any(syndrome)
    if residual is not None:
        trivial = residual.is_identity
    else:
        trivial = s.maps.is_trivial(pattern)
    return ResidualOutcome(
        syndrome, "retain" if retained else "discard", residual, None, retained and trivial
    )


_ORDER = {"I": 0, "X": 1, "Y": 2, "Z": 3}


def _recovery_rank(p: PauliString) -> tuple[int, ...]:
    return tuple(_ORDER[ch] for ch in p.label)


def _likelihood_key(poly: Polynomial, rep: PauliString) -> tuple:
    # small-p ordering: lowest leading power first, then larger coefficient
    lead = next(i for i in range(poly.degree + 1) if poly.coeff(i))
    return (lead, -poly.coeff(lead), _recovery_rank(rep))


def _class_counts(maps: MapForm) -> dict[int, dict[int, list[int]]]:
    """Pattern counts by syndrome code, residual code and weight."""
    check_capacity(maps.m)
    m = maps.m
    low = (1 << m) - 1
    out: dict[int, dict[int, list[int]]] = defaultdict(lambda: defaultdict(lambda: [0] * (m + 1)))
    for code in range(1 << (2 * m)):
        s = gf2.apply_rows(maps.syndrome_rows, code)
        r = gf2.apply_rows(maps.residual_rows, code)
        out[s][r][((code & low) | (code >> m)).bit_count()] += 1
    return out


def build_ml_lut(s: SchemeSpec) -> SyndromeLUT:
    """Most likely residual class per syndrome in the small-p limit."""
    if s.mode == "detect":
        raise ContractError(f"{s.name} is a detection scheme")
    maps = s.maps
    if maps.residual_rows is None:
        raise ContractError(f"{s.name} has no residual map")
    k, bits = maps.k, maps.syndrome_bits
    table = {}
    for syn, bucket in _class_counts(maps).items():
        polys = {
            from_int(r, k): sum(
                (c * weight_probability(w, maps.m) for w, c in enumerate(ws) if c), Polynomial()
            )
            for r, ws in bucket.items()
        }
        table[_bits((syn >> i) & 1 for i in range(bits))] = min(
            polys, key=lambda c: _likelihood_key(polys[c], c)
        )
    # syndromes no pattern produces still need an entry
    for code in range(1 << bits):
        table.setdefault(_bits((code >> i) & 1 for i in range(bits)), PauliString.identity(k))
    return SyndromeLUT(bits, k, table)


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, w: int) -> int:
        return self.counts[w]


def correctable_set(s: SchemeSpec, lut: Optional[SyndromeLUT] = None) -> WeightDistribution:
    """Patterns the LUT corrects, counted by Pauli weight."""
    lut = lut or s.policy.lut
    if lut is None:
        raise ContractError(f"{s.name} has no lookup table")
    maps = s.maps
    counts = [0] * (maps.m + 1)
    for syn, bucket in _class_counts(maps).items():
        rec = lut[tuple((syn >> i) & 1 for i in range(maps.syndrome_bits))].to_int()
        for w, c in enumerate(bucket.get(rec, ())):
            counts[w] += c
    return WeightDistribution(tuple(counts))


# --- circuits -------------------------------------------------------------


def _circuit(layout: RegisterLayout, enc, dec, bases: str, noisy_halves: bool = True) -> CircuitForm:
    n = layout.register_size
    return CircuitForm(
        layout,
        CliffordCircuit(n, tuple(cnot(c, t) for c, t in enc), "encoder"),
        CliffordCircuit(n, tuple(cnot(c, t) for c, t in dec), "decoder"),
        bases,
        noisy_halves,
    )


def proposed1_circuit() -> CircuitForm:
    # V_A: logical controls A-half; V_B: logical controls B-half
    return _circuit(RegisterLayout(1, 1), [(0, 1)], [(0, 2)], "Z")


def elimination_circuit(noisy_halves: bool = True) -> CircuitForm:
    """Two-pair circuit shared by the elimination and two-pair detection schemes."""
    return _circuit(RegisterLayout(1, 2), [(2, 0), (0, 1)], [(4, 0), (0, 3)], "ZX", noisy_halves)


def proposed2q_circuit() -> CircuitForm:
    """One of the reconstructed 8-CNOT circuits (see :mod:`dqcomm.reconstruct`)."""
    return _circuit(
        RegisterLayout(2, 2),
        [(0, 2), (2, 1), (1, 0), (2, 3)],
        [(4, 1), (4, 5), (0, 4), (1, 0)],
        "XZ",
    )


_P7_ENCODER = [(0, 1), (0, 2), (4, 0), (4, 1), (4, 3), (5, 0), (5, 2), (5, 3), (6, 1), (6, 2), (6, 3)]


def proposed7_circuit() -> CircuitForm:
    """Reconstructed 22-CNOT circuit; the decoder mirrors the encoder onto the B-halves."""
    mirror = [(c + 6 if c else 0, t + 6 if t else 0) for c, t in _P7_ENCODER]
    return _circuit(RegisterLayout(1, 6), _P7_ENCODER, mirror, "ZZZXXX")


# error pattern, syndrome, recovery for the single-site generators
PROPOSED7_TABLE = (
    ("XIIIIII", "110000", "X"),
    ("IXIIIII", "100000", "I"),
    ("IIXIIII", "010000", "I"),
    ("IIIXIII", "001000", "I"),
    ("IIIIXII", "011000", "X"),
    ("IIIIIXI", "101000", "X"),
    ("IIIIIIX", "111000", "I"),
    ("ZIIIIII", "000110", "Z"),
    ("IZIIIII", "000101", "Z"),
    ("IIZIIII", "000011", "Z"),
    ("IIIZIII", "000111", "I"),
    ("IIIIZII", "000100", "I"),
    ("IIIIIZI", "000010", "I"),
    ("IIIIIIZ", "000001", "I"),
)


def _bitcode(bits: str) -> int:
    return sum(int(b) << i for i, b in enumerate(bits))


def proposed7_map() -> MapForm:
    cols = {parse_label(p).to_int(): (s, r) for p, s, r in PROPOSED7_TABLE}
    s_cols, l_cols = [], []
    for j in range(14):
        s, r = cols[1 << j]
        s_cols.append(_bitcode(s))
        rec = parse_label(r)
        l_cols.append(rec.x | (rec.z << 1))
    return map_from_columns(7, 1, s_cols, 6, l_cols)


def proposed2q_map() -> MapForm:
    # s_X on pair 0 reads the global Z-parity, s_Z on pair 1 the X-parity
    return MapForm(
        4,
        2,
        (0b1111 << 4, 0b1111),
        None,
        (parse_label("XXXX"), parse_label("ZZZZ")),
    )


# --- registry -------------------------------------------------------------


def _with_ml_lut(s: SchemeSpec) -> SchemeSpec:
    return dataclasses.replace(s, policy=DecisionPolicy("lut", lut=build_ml_lut(s)))


def stabilizer_qed(code: Union[str, codes.StabilizerCode], mode: Optional[Mode] = None) -> SchemeSpec:
    """Distillation with ``code`` followed by noise-free teleportation."""
    if isinstance(code, str):
        code = codes.CODES[code]
    mode = mode or ("correct" if code.name == "steane" else "detect")
    r = len(code.generators)
    profile = STABILIZER_QED_RESOURCES.get(code.name, (None,))
    spec = SchemeSpec(
        f"stabilizer_qed:{code.name}",
        mode,
        code.n,
        code.k,
        code.n,
        r + 2 * code.k,
        profile[0],
        codes.qed_map(code),
        DecisionPolicy("retain_if_zero"),
    )
    return _with_ml_lut(spec) if mode == "correct" else spec


# CNOT totals quoted for the stabilizer QED+QT benchmarks
STABILIZER_QED_RESOURCES = {"zz": (7,), "c422": (28,), "steane": (71,)}


def recurrence_qed() -> SchemeSpec:
    return SchemeSpec(
        "recurrence_qed", "detect", 2, 1, 2, 3, 3, codes.recurrence_map(),
        DecisionPolicy("retain_if_zero"),
    )


def qedqt(blocks: Sequence[SchemeSpec], name: Optional[str] = None,
          cnot_count: Optional[int] = None) -> SchemeSpec:
    """Independent detection blocks, one teleported logical qubit per block."""
    if any(b.mode != "detect" for b in blocks):
        raise ContractError("only detection blocks compose")
    counts = [b.cnot_count for b in blocks]
    if cnot_count is None and None not in counts:
        cnot_count = sum(counts)
    return SchemeSpec(
        name or "qedqt:" + "+".join(b.name for b in blocks),
        "detect",
        sum(b.n for b in blocks),
        sum(b.k for b in blocks),
        sum(b.e for b in blocks),
        sum(b.c for b in blocks),
        cnot_count,
        codes.compose_maps([b.maps for b in blocks]),
        DecisionPolicy("retain_if_zero"),
    )


def _proposed1() -> SchemeSpec:
    return SchemeSpec("proposed1", "detect", 2, 1, 1, 1, 2, proposed1_circuit(),
                      DecisionPolicy("retain_if_zero"))


def _proposed2() -> SchemeSpec:
    return SchemeSpec("proposed2", "detect", 3, 1, 2, 2, 4, elimination_circuit(),
                      DecisionPolicy("sequential", order=(0, 1)))


def _proposed2q() -> SchemeSpec:
    return SchemeSpec("proposed2q", "detect", 4, 2, 2, 2, 8, proposed2q_map(),
                      DecisionPolicy("retain_if_zero"), proposed2q_circuit())


def _proposed7() -> SchemeSpec:
    spec = SchemeSpec("proposed7", "correct", 7, 1, 6, 6, 22, proposed7_map(),
                      DecisionPolicy("lut"), proposed7_circuit())
    return _with_ml_lut(spec)


NOISEFREE_LUT = {"00": "I", "10": "X", "11": "Y", "01": "Z"}


def _noisefree() -> SchemeSpec:
    lut = SyndromeLUT.from_labels(2, 1, NOISEFREE_LUT)
    return SchemeSpec("noisefree_elim", "eliminate", 1, 1, 2, 2, 4,
                      elimination_circuit(noisy_halves=False), DecisionPolicy("lut", lut=lut))


_REGISTRY = {
    "proposed1": _proposed1,
    "proposed2": _proposed2,
    "proposed2q": _proposed2q,
    "proposed7": _proposed7,
    "noisefree_elim": _noisefree,
    "recurrence_qed": recurrence_qed,
    "qedqt1": lambda: qedqt([recurrence_qed()] * 2, "qedqt1", cnot_count=4),
    "qedqt2": lambda: dataclasses.replace(stabilizer_qed("c422"), name="qedqt2"),
}

PROPOSED = ("proposed1", "proposed2", "proposed2q", "proposed7", "noisefree_elim")
SCHEME_NAMES = tuple(_REGISTRY) + tuple(f"stabilizer_qed:{c}" for c in codes.CODES)


class UnknownSchemeError(LookupError):
    pass


@functools.lru_cache(maxsize=None)
def scheme(name: str) -> SchemeSpec:
    if name.startswith("stabilizer_qed:"):
        code = name.split(":", 1)[1]
        if code not in codes.CODES:
            raise UnknownSchemeError(f"unknown code {code!r}; known: {', '.join(codes.CODES)}")
        return stabilizer_qed(code)
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise UnknownSchemeError(
            f"unknown scheme {name!r}; known: {', '.join(SCHEME_NAMES)}"
        ) from None
