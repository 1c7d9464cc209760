"""Symplectic n-qubit Pauli strings.

Qubit ``i`` is the ``i``-th character of a label (leftmost is qubit 0) and
bit ``1 << i`` of the packed ``x``/``z`` integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Optional

_LABEL_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LABEL = {bits: ch for ch, bits in _LABEL_BITS.items()}

Axis = Literal["x", "z"]


class PauliParseError(ValueError):
    """Raised for labels that are not strings over I/X/Y/Z."""


class DimensionError(ValueError):
    """Raised when qubit counts or indices do not line up."""


@dataclass(frozen=True)
class PauliString:
    """Pauli operator on ``length`` qubits, phase-free unless ``sign`` is set.

    ``sign`` is ``None`` for phase-free operators (the metric engine only
    cares about Pauli classes) and ``+1``/``-1`` when signs are tracked.
    """

    length: int
    x: int = 0
    z: int = 0
    sign: Optional[int] = None

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DimensionError("length must be nonnegative")
        limit = 1 << self.length
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise DimensionError(f"bit vectors do not fit in {self.length} qubits")
        if self.sign not in (None, 1, -1):
            raise ValueError(f"sign must be None, +1 or -1, got {self.sign!r}")

    @classmethod
    def identity(cls, length: int, signed: bool = False) -> "PauliString":
        return cls(length, 0, 0, 1 if signed else None)

    @classmethod
    def from_label(cls, label: str, signed: bool = False) -> "PauliString":
        return parse_label(label, signed=signed)

    @classmethod
    def single(cls, length: int, qubit: int, kind: str, signed: bool = False) -> "PauliString":
        """``kind`` acting on ``qubit`` and identity elsewhere."""
        if not 0 <= qubit < length:
            raise DimensionError(f"qubit {qubit} out of range for length {length}")
        xb, zb = _LABEL_BITS[kind]
        return cls(length, xb << qubit, zb << qubit, 1 if signed else None)

    @property
    def label(self) -> str:
        return "".join(self[i] for i in range(self.length))

    @property
    def signed(self) -> bool:
        return self.sign is not None

    def __getitem__(self, qubit: int) -> str:
        return _BITS_LABEL[((self.x >> qubit) & 1, (self.z >> qubit) & 1)]

    def __str__(self) -> str:
        if self.sign == -1:
            return "-" + self.label
        if self.sign == 1:
            return "+" + self.label
        return self.label

    def __mul__(self, other: "PauliString") -> "PauliString":
        return mul(self, other)

    def unsigned(self) -> "PauliString":
        return PauliString(self.length, self.x, self.z)

    def with_sign(self, sign: int = 1) -> "PauliString":
        return PauliString(self.length, self.x, self.z, sign)

    def restrict(self, qubits: Iterable[int]) -> "PauliString":
        """Sub-string on ``qubits`` (in the given order), phase dropped."""
        qubits = list(qubits)
        x = z = 0
        for j, q in enumerate(qubits):
            if not 0 <= q < self.length:
                raise DimensionError(f"qubit {q} out of range for length {self.length}")
            x |= ((self.x >> q) & 1) << j
            z |= ((self.z >> q) & 1) << j
        return PauliString(len(qubits), x, z)

    def embed(self, length: int, qubits: Iterable[int]) -> "PauliString":
        """Place this string on ``qubits`` of a ``length``-qubit register."""
        qubits = list(qubits)
        if len(qubits) != self.length:
            raise DimensionError("embedding needs one target qubit per position")
        x = z = 0
        for j, q in enumerate(qubits):
            if not 0 <= q < length:
                raise DimensionError(f"qubit {q} out of range for length {length}")
            x |= ((self.x >> j) & 1) << q
            z |= ((self.z >> j) & 1) << q
        return PauliString(length, x, z, self.sign)

    def to_int(self) -> int:
        """Pack as ``x | z << length``; the inverse of :func:`from_int`."""
        return self.x | (self.z << self.length)

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0


def from_int(code: int, length: int) -> PauliString:
    mask = (1 << length) - 1
    return PauliString(length, code & mask, (code >> length) & mask)


def parse_label(label: str, signed: bool = False) -> PauliString:
    """Parse ``"IXYZ"``-style labels; a leading ``+``/``-`` sets the sign."""
    sign = 1 if signed else None
    body = label
    if body[:1] in "+-" and body:
        sign = -1 if body[0] == "-" else 1
        body = body[1:]
    if not body:
        raise PauliParseError("empty Pauli label")
    x = z = 0
    for i, ch in enumerate(body):
        try:
            xb, zb = _LABEL_BITS[ch]
        except KeyError:
            raise PauliParseError(f"invalid character {ch!r} at position {i} in {label!r}") from None
        x |= xb << i
        z |= zb << i
    return PauliString(len(body), x, z, sign)


def _check_same_length(a: PauliString, b: PauliString) -> None:
    if a.length != b.length:
        raise DimensionError(f"length mismatch: {a.length} vs {b.length}")


def _phase_exponent(a: PauliString, b: PauliString) -> int:
    # Power of i picked up when multiplying the label-form products a*b
    # (Y counted as Y, not XZ). Per-qubit table of Aaronson-Gottesman.
    total = 0
    for q in range(a.length):
        x1, z1 = (a.x >> q) & 1, (a.z >> q) & 1
        x2, z2 = (b.x >> q) & 1, (b.z >> q) & 1
        if x1 == 0 and z1 == 0:
            continue
        if x1 == 1 and z1 == 1:
            total += z2 - x2
        elif x1 == 1:
            total += z2 * (2 * x2 - 1)
        else:
            total += x2 * (1 - 2 * z2)
    return total % 4


def mul(a: PauliString, b: PauliString) -> PauliString:
    """Product ``a * b``.

    Phase-free when either factor is unsigned. When both carry signs the
    product must be Hermitian (``a`` and ``b`` commute), otherwise a
    ``ValueError`` is raised since ``±i`` phases are not represented.
    """
    _check_same_length(a, b)
    x, z = a.x ^ b.x, a.z ^ b.z
    if a.sign is None or b.sign is None:
        return PauliString(a.length, x, z)
    phase = _phase_exponent(a, b)
    if phase % 2:
        raise ValueError(f"product of anticommuting {a} and {b} is not Hermitian")
    sign = a.sign * b.sign * (-1 if phase == 2 else 1)
    return PauliString(a.length, x, z, sign)


def weight(a: PauliString) -> int:
    return (a.x | a.z).bit_count()


def sub_parity(a: PauliString, indices: Iterable[int], axis: Axis) -> int:
    """XOR of the X (``axis="x"``) or Z (``axis="z"``) bits over ``indices``."""
    if axis not in ("x", "z"):
        raise ValueError(f"axis must be 'x' or 'z', got {axis!r}")
    bits = a.x if axis == "x" else a.z
    parity = 0
    for q in indices:
        if not 0 <= q < a.length:
            raise DimensionError(f"index {q} out of range for length {a.length}")
        parity ^= (bits >> q) & 1
    return parity


def symplectic_product(a: PauliString, b: PauliString) -> int:
    _check_same_length(a, b)
    return ((a.x & b.z) ^ (a.z & b.x)).bit_count() & 1


def commutes(a: PauliString, b: PauliString) -> bool:
    return symplectic_product(a, b) == 0
