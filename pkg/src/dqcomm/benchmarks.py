"""Distillation-plus-teleportation baselines, delays and resource counts."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields
from typing import Literal, Mapping, Optional, Union

from .channel import ONE_MINUS_P, P_THIRD
from .codes import CODES, StabilizerCode, recurrence_map
from .pauli import parse_label
from .poly import Polynomial, RationalFunction
from .schemes import Mode, SchemeSpec
from .schemes import stabilizer_qed as _stabilizer_qed

PAULIS = "IXYZ"


@dataclass(frozen=True)
class RoundResult:
    kept: object
    joint: dict[str, object]
    conditional: dict[str, object]


def _divide(a, b):
    if isinstance(a, Polynomial) or isinstance(b, Polynomial):
        return RationalFunction(a, b)
    return a / b


def recurrence_round(
    first: Mapping[str, object], second: Optional[Mapping[str, object]] = None
) -> RoundResult:
    """One recurrence round on two pairs with Pauli distributions ``first``
    (the surviving pair) and ``second`` (sacrificed; defaults to ``first``).

    Values may be floats, Fractions or Polynomials.
    """
    second = first if second is None else second
    maps = recurrence_map()
    joint: dict[str, object] = {}
    for a in PAULIS:
        for b in PAULIS:
            pattern = parse_label(a + b)
            if any(maps.syndrome(pattern)):
                continue
            label = maps.residual(pattern).label
            term = first[a] * second[b]
            joint[label] = joint[label] + term if label in joint else term
    kept = sum(joint.values(), 0 * first["I"])
    conditional = {label: _divide(v, kept) for label, v in joint.items()}
    return RoundResult(kept, joint, conditional)


def depolarizing_distribution(p=None) -> dict[str, object]:
    """Single-pair error distribution; symbolic in p when ``p`` is omitted."""
    if p is None:
        stay, flip = ONE_MINUS_P, P_THIRD
    else:
        stay, flip = 1 - p, p / 3
    return {"I": stay, "X": flip, "Y": flip, "Z": flip}


def stabilizer_qed(
    code: Union[str, StabilizerCode], e_pairs: Optional[int] = None, mode: Optional[Mode] = None
) -> SchemeSpec:
    """QED with ``code`` over ``e_pairs`` EPR pairs, then teleportation."""
    if isinstance(code, str):
        code = CODES[code]
    if e_pairs is not None and e_pairs != code.n:
        raise ValueError(f"{code.name} acts on {code.n} pairs, not {e_pairs}")
    return _stabilizer_qed(code, mode)


@dataclass(frozen=True)
class DelayModel:
    t_c: float = 1.0
    m: int = 1

    def __post_init__(self) -> None:
        if self.t_c <= 0 or self.m < 1:
            raise ValueError("need t_c > 0 and at least one round")


DelayKind = Literal["recurrence", "stabilizer", "proposed", "qsc_ie"]


def delay(kind: DelayKind, model: DelayModel = DelayModel()) -> float:
    """Classical-communication delay of one transmission."""
    if kind == "recurrence":
        # m rounds of syndrome exchange, then the teleportation bits
        return (model.m + 1) * model.t_c
    if kind == "stabilizer":
        return 2 * model.t_c
    if kind in ("proposed", "qsc_ie"):
        return model.t_c
    raise ValueError(f"unknown scheme kind {kind!r}")


@dataclass(frozen=True)
class ResourceProfile:
    scheme: str
    n: int
    k: int
    e: int
    c: int
    cnot: int


DETECTION_TABLE = (
    ResourceProfile("QED+QT 1", 4, 2, 4, 6, 4),
    ResourceProfile("QED+QT 2", 4, 2, 4, 6, 28),
    ResourceProfile("QSC-IE", 4, 2, 1, 0, 16),
    ResourceProfile("Proposed", 4, 2, 2, 2, 8),
)

CORRECTION_TABLE = (
    ResourceProfile("QED+QT", 7, 1, 7, 8, 71),
    ResourceProfile("QSC-IE", 7, 1, 3, 0, 43),
    ResourceProfile("Proposed", 7, 1, 6, 6, 22),
)


def resource_table(which: Literal["detection", "correction"] = "detection") -> list[ResourceProfile]:
    if which == "detection":
        return list(DETECTION_TABLE)
    if which == "correction":
        return list(CORRECTION_TABLE)
    raise ValueError(f"unknown table {which!r}")


def resources_csv(rows: list[ResourceProfile]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(f.name for f in fields(ResourceProfile))
    writer.writerows(astuple(r) for r in rows)
    return buf.getvalue()
