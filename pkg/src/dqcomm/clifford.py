"""Heisenberg-picture propagation of Pauli errors through CNOT/H circuits.

A register of ``k`` logical qubits and ``e`` EPR pairs is laid out as
``[logical 0..k-1 | A-halves | B-halves]``. Noise acts on the A-halves before
the encoder and on the logical qubits between encoder and decoder; the
decoder circuit holds ``V_B`` and is applied as its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

from . import gf2
from .pauli import DimensionError, PauliString, commutes, mul

Basis = Literal["Z", "X"]


class ContractError(ValueError):
    """Raised when an operation's precondition on its inputs does not hold."""


@dataclass(frozen=True)
class CliffordGate:
    kind: Literal["CNOT", "H"]
    target: int
    control: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind == "CNOT":
            if self.control is None or self.control == self.target:
                raise ValueError(f"CNOT needs a control distinct from target {self.target}")
        elif self.kind == "H":
            if self.control is not None:
                raise ValueError("H takes no control")
        else:
            raise ValueError(f"unsupported gate {self.kind!r}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,) if self.control is None else (self.control, self.target)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "target": self.target}
        if self.control is not None:
            out["control"] = self.control
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CliffordGate":
        return cls(data["kind"], data["target"], data.get("control"))


def cnot(control: int, target: int) -> CliffordGate:
    return CliffordGate("CNOT", target, control)


def hadamard(target: int) -> CliffordGate:
    return CliffordGate("H", target)


@dataclass(frozen=True)
class CliffordCircuit:
    register_size: int
    gates: tuple[CliffordGate, ...] = ()
    role: Literal["encoder", "decoder"] = "encoder"

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(not 0 <= q < self.register_size for q in g.qubits):
                raise DimensionError(f"{g} acts outside a {self.register_size}-qubit register")

    @property
    def cnot_count(self) -> int:
        return sum(g.kind == "CNOT" for g in self.gates)

    def to_json(self) -> dict:
        return {
            "register_size": self.register_size,
            "gates": [g.to_json() for g in self.gates],
            "role": self.role,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CliffordCircuit":
        return cls(
            data["register_size"],
            tuple(CliffordGate.from_json(g) for g in data["gates"]),
            data.get("role", "encoder"),
        )


@dataclass(frozen=True)
class RegisterLayout:
    k: int
    e: int

    @property
    def register_size(self) -> int:
        return self.k + 2 * self.e

    @property
    def logical(self) -> tuple[int, ...]:
        return tuple(range(self.k))

    def a_half(self, pair: int) -> int:
        return self.k + pair

    def b_half(self, pair: int) -> int:
        return self.k + self.e + pair

    @property
    def a_halves(self) -> tuple[int, ...]:
        return tuple(self.a_half(j) for j in range(self.e))

    @property
    def b_halves(self) -> tuple[int, ...]:
        return tuple(self.b_half(j) for j in range(self.e))

    def to_json(self) -> dict:
        return {"k": self.k, "e": self.e}


def conjugate_gate(gate: CliffordGate, pauli: PauliString) -> PauliString:
    """``g P g†`` using the standard tableau update (sign kept if tracked)."""
    x, z, n = pauli.x, pauli.z, pauli.length
    if any(q >= n for q in gate.qubits):
        raise DimensionError(f"{gate} does not fit a {n}-qubit Pauli")
    flip = 0
    t = gate.target
    xt, zt = (x >> t) & 1, (z >> t) & 1
    if gate.kind == "H":
        flip = xt & zt
        x = (x & ~(1 << t)) | (zt << t)
        z = (z & ~(1 << t)) | (xt << t)
    else:
        c = gate.control
        xc, zc = (x >> c) & 1, (z >> c) & 1
        flip = xc & zt & (xt ^ zc ^ 1)
        x ^= xc << t
        z ^= zt << c
    sign = pauli.sign
    if sign is not None and flip:
        sign = -sign
    return PauliString(n, x, z, sign)


def conjugate_circuit(
    circuit: CliffordCircuit,
    pauli: PauliString,
    direction: Literal["forward", "inverse"] = "forward",
) -> PauliString:
    """Conjugate by the circuit (``forward``) or by its inverse."""
    if pauli.length != circuit.register_size:
        raise DimensionError(
            f"{pauli.length}-qubit Pauli on a {circuit.register_size}-qubit circuit"
        )
    # CNOT and H are self-inverse, so the inverse is the reversed gate list
    gates = circuit.gates if direction == "forward" else reversed(circuit.gates)
    for g in gates:
        pauli = conjugate_gate(g, pauli)
    return pauli


@dataclass(frozen=True)
class FrameResult:
    """Total residual Pauli ``E`` on the register and what it means."""

    total: PauliString
    residual: PauliString
    shifts: tuple[tuple[int, int], ...]

    @property
    def bell_states(self) -> tuple[str, ...]:
        names = {(0, 0): "Phi+", (0, 1): "Phi-", (1, 0): "Psi+", (1, 1): "Psi-"}
        return tuple(names[s] for s in self.shifts)

    def syndrome(self, bases: Sequence[Basis]) -> tuple[int, ...]:
        # Z-basis pairs reveal the X-type shift, X-basis pairs the Z-type one
        return tuple(a if b == "Z" else zb for (a, zb), b in zip(self.shifts, bases))


def _check_circuits(layout: RegisterLayout, *circuits: CliffordCircuit) -> None:
    for c in circuits:
        if c.register_size != layout.register_size:
            raise DimensionError(
                f"circuit on {c.register_size} qubits, layout needs {layout.register_size}"
            )


def noise_sites(layout: RegisterLayout, noisy_halves: bool = True) -> tuple[int, ...]:
    """Register qubits hit by the channel, in pattern order."""
    return layout.logical + (layout.a_halves if noisy_halves else ())


def residual_error(
    layout: RegisterLayout,
    encoder: CliffordCircuit,
    decoder: CliffordCircuit,
    pattern: PauliString,
    noisy_halves: bool = True,
) -> FrameResult:
    """Propagate one channel pattern to the post-decoder frame.

    ``pattern`` lists the logical-channel Paulis first, then (when
    ``noisy_halves``) the A-half Paulis.
    """
    _check_circuits(layout, encoder, decoder)
    sites = noise_sites(layout, noisy_halves)
    if pattern.length != len(sites):
        raise DimensionError(f"pattern of length {pattern.length}, expected {len(sites)}")
    n = layout.register_size
    full = pattern.unsigned().embed(n, sites)
    logical_part = full.restrict(layout.logical).embed(n, layout.logical)
    half_part = mul(full, logical_part)
    e = mul(conjugate_circuit(encoder, half_part), logical_part)
    e = conjugate_circuit(decoder, e, "inverse")
    shifts = tuple(
        (
            ((e.x >> layout.a_half(j)) ^ (e.x >> layout.b_half(j))) & 1,
            ((e.z >> layout.a_half(j)) ^ (e.z >> layout.b_half(j))) & 1,
        )
        for j in range(layout.e)
    )
    return FrameResult(e, e.restrict(layout.logical), shifts)


def epr_stabilizers(layout: RegisterLayout) -> list[PauliString]:
    n = layout.register_size
    gens = []
    for j in range(layout.e):
        a, b = layout.a_half(j), layout.b_half(j)
        gens.append(PauliString(n, (1 << a) | (1 << b), 0, 1))
        gens.append(PauliString(n, 0, (1 << a) | (1 << b), 1))
    return gens


def _in_signed_group(p: PauliString, gens: list[PauliString]) -> bool:
    combo = gf2.decompose(p.to_int(), [g.to_int() for g in gens])
    if combo is None:
        return False
    acc = PauliString.identity(p.length, signed=True)
    for i in combo:
        acc = mul(acc, gens[i])
    return acc.sign == p.sign


def check_reversibility(
    layout: RegisterLayout, encoder: CliffordCircuit, decoder: CliffordCircuit
) -> bool:
    """True iff ``V_B† V_A`` acts as the identity on ``|psi> ⊗ |Phi+>^e``.

    Every EPR stabilizer must map into the (+1) stabilizer group and every
    logical X/Z must map to itself times a (+1) stabilizer element.
    """
    _check_circuits(layout, encoder, decoder)

    def u(p: PauliString) -> PauliString:
        return conjugate_circuit(decoder, conjugate_circuit(encoder, p), "inverse")

    gens = epr_stabilizers(layout)
    for g in gens:
        if not _in_signed_group(u(g), gens):
            return False
    n = layout.register_size
    for q in layout.logical:
        for kind in "XZ":
            logical = PauliString.single(n, q, kind, signed=True)
            image = u(logical)
            if not commutes(image, logical):
                return False
            if not _in_signed_group(mul(image, logical), gens):
                return False
    return True


@dataclass(frozen=True)
class MapForm:
    """Linear syndrome/residual maps on packed patterns (``x | z << m``).

    ``syndrome_rows[i]`` is the mask whose parity against a pattern gives
    syndrome bit ``i``; ``residual_rows`` (optional) gives the residual
    logical class as ``k`` X-bits followed by ``k`` Z-bits.
    ``trivial_generators`` spans the retained patterns that leave the
    logical qubits intact, for detection schemes without a residual map.
    """

    m: int
    k: int
    syndrome_rows: tuple[int, ...]
    residual_rows: Optional[tuple[int, ...]] = None
    trivial_generators: tuple[PauliString, ...] = field(default=())

    @property
    def syndrome_bits(self) -> int:
        return len(self.syndrome_rows)

    def syndrome_code(self, pattern: PauliString) -> int:
        return gf2.apply_rows(self.syndrome_rows, pattern.to_int())

    def syndrome(self, pattern: PauliString) -> tuple[int, ...]:
        code = self.syndrome_code(pattern)
        return tuple((code >> i) & 1 for i in range(self.syndrome_bits))

    def residual(self, pattern: PauliString) -> Optional[PauliString]:
        if self.residual_rows is None:
            return None
        code = gf2.apply_rows(self.residual_rows, pattern.to_int())
        mask = (1 << self.k) - 1
        return PauliString(self.k, code & mask, (code >> self.k) & mask)

    def is_trivial(self, pattern: PauliString) -> bool:
        """Whether the pattern leaves the logical qubits unchanged."""
        if self.residual_rows is not None:
            return self.residual(pattern).is_identity
        return gf2.in_span(pattern.to_int(), [g.to_int() for g in self.trivial_generators])

    def to_json(self) -> dict:
        out: dict = {
            "type": "map",
            "m": self.m,
            "k": self.k,
            "syndrome_rows": [_row_label(r, self.m) for r in self.syndrome_rows],
        }
        if self.residual_rows is not None:
            out["residual_rows"] = [_row_label(r, self.m) for r in self.residual_rows]
        if self.trivial_generators:
            out["trivial_generators"] = [g.label for g in self.trivial_generators]
        return out


def _row_label(row: int, m: int) -> str:
    # a row mask reads as the Pauli whose symplectic-style overlap it tests
    return PauliString(m, row & ((1 << m) - 1), row >> m).label


def map_from_columns(
    m: int,
    k: int,
    syndrome_columns: Sequence[int],
    n_syndrome: int,
    residual_columns: Optional[Sequence[int]] = None,
    trivial_generators: Sequence[PauliString] = (),
) -> MapForm:
    """Assemble a :class:`MapForm` from images of the 2m generator errors.

    Column ``j < m`` is the image of X on site ``j``; column ``m + j`` of Z.
    """
    rows = gf2.columns_to_rows(syndrome_columns, n_syndrome)
    res = None
    if residual_columns is not None:
        res = gf2.columns_to_rows(residual_columns, 2 * k)
    return MapForm(m, k, rows, res, tuple(trivial_generators))


def derive_maps(
    layout: RegisterLayout,
    encoder: CliffordCircuit,
    decoder: CliffordCircuit,
    bases: Sequence[Basis],
    noisy_halves: bool = True,
) -> MapForm:
    """Syndrome and residual maps of a reversible circuit pair."""
    if len(bases) != layout.e:
        raise DimensionError(f"{len(bases)} measurement bases for {layout.e} pairs")
    if not check_reversibility(layout, encoder, decoder):
        raise ContractError("encoder/decoder pair is not reversible")
    m = len(noise_sites(layout, noisy_halves))
    s_cols, l_cols = [], []
    for kind in "XZ":
        for site in range(m):
            frame = residual_error(
                layout, encoder, decoder, PauliString.single(m, site, kind), noisy_halves
            )
            s_cols.append(sum(bit << i for i, bit in enumerate(frame.syndrome(bases))))
            l_cols.append(frame.residual.x | (frame.residual.z << layout.k))
    return map_from_columns(m, layout.k, s_cols, layout.e, l_cols)
