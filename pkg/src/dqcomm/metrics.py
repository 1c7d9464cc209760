"""Exact QBER, yield and goodput by exhaustive pattern enumeration."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from scipy.optimize import bisect

from .channel import ONE_MINUS_P, enumerate_patterns, pattern_probability, weight_probability
from .clifford import ContractError
from .pauli import PauliString, weight
from .poly import Polynomial, RationalFunction
from .schemes import DecisionPolicy, SchemeSpec, SyndromeLUT, WeightDistribution, correctable_set, evaluate

DEFAULT_BRACKET = (1e-6, 0.74)
THRESHOLD_TOL = 1e-9


def weights_to_polynomial(w: WeightDistribution | Sequence[int], n: int) -> Polynomial:
    counts = w.counts if isinstance(w, WeightDistribution) else tuple(w)
    return sum((c * weight_probability(i, n) for i, c in enumerate(counts) if c), Polynomial())


def uncoded_qber(k: int) -> Polynomial:
    return 1 - ONE_MINUS_P**k


@dataclass(frozen=True)
class MetricsReport:
    scheme: str
    mode: str
    n: int
    k: int
    p_retain: Polynomial
    p_joint: Polynomial
    qber: RationalFunction
    yield_poly: Polynomial
    goodput: RationalFunction
    retained_weights: Optional[WeightDistribution] = None
    success_weights: Optional[WeightDistribution] = None
    threshold: Optional[float] = field(default=None)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def p_success(self) -> RationalFunction:
        return RationalFunction(self.p_joint, self.p_retain)

    def at(self, p) -> dict:
        """QBER, yield and goodput at ``p`` (exact for rational ``p``)."""
        return {"qber": self.qber(p), "yield": self.yield_poly(p), "goodput": self.goodput(p)}

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme,
            "mode": self.mode,
            "n": self.n,
            "k": self.k,
            "p_retain": self.p_retain.to_json(),
            "p_joint_success": self.p_joint.to_json(),
            "qber": self.qber.to_json(),
            "yield": self.yield_poly.to_json(),
            "goodput": self.goodput.to_json(),
            "threshold": self.threshold,
        }


def detect_metrics(
    s: SchemeSpec,
    probability: Callable[[PauliString], Polynomial] = pattern_probability,
) -> MetricsReport:
    if s.mode != "detect":
        raise ContractError(f"{s.name} is not a detection scheme")
    retained = [0] * (s.m + 1)
    joint = [0] * (s.m + 1)
    p_retain, p_joint = Polynomial(), Polynomial()
    custom = probability is not pattern_probability
    for pattern in enumerate_patterns(s.m):
        out = evaluate(s, pattern)
        if out.decision != "retain":
            continue
        w = weight(pattern)
        retained[w] += 1
        joint[w] += out.success
        if custom:
            prob = probability(pattern)
            p_retain += prob
            if out.success:
                p_joint += prob
    if not custom:
        p_retain = weights_to_polynomial(retained, s.m)
        p_joint = weights_to_polynomial(joint, s.m)
    rate = Fraction(s.k, s.n)
    return MetricsReport(
        s.name,
        s.mode,
        s.n,
        s.k,
        p_retain,
        p_joint,
        1 - RationalFunction(p_joint, p_retain),
        rate * p_retain,
        RationalFunction(rate * p_joint, p_retain),
        WeightDistribution(tuple(retained)),
        WeightDistribution(tuple(joint)),
    )


def correct_metrics(s: SchemeSpec, lut: Optional[SyndromeLUT] = None) -> MetricsReport:
    if s.mode == "detect":
        raise ContractError(f"{s.name} is a detection scheme")
    lut = lut or s.policy.lut
    if lut is None or not lut.is_total:
        raise ContractError(f"{s.name} needs a lookup table covering every syndrome")
    w = correctable_set(s, lut)
    p_s = weights_to_polynomial(w, s.m)
    rate = Fraction(s.k, s.n)
    one = Polynomial.constant(1)
    return MetricsReport(
        s.name,
        s.mode,
        s.n,
        s.k,
        one,
        p_s,
        RationalFunction(1 - p_s),
        Polynomial.constant(rate),
        RationalFunction(rate * p_s),
        None,
        w,
    )


def threshold(
    qber: RationalFunction | Polynomial,
    uncoded: Polynomial,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
) -> Optional[float]:
    """Crossing of the coded and uncoded QBER, or ``None`` if they never cross."""

    def gap(p: float) -> float:
        x = Fraction(p)
        return float(qber(x) - uncoded(x))

    lo, hi = bracket
    g_lo, g_hi = gap(lo), gap(hi)
    if g_lo == 0:
        return lo
    if g_hi == 0:
        return hi
    if (g_lo > 0) == (g_hi > 0):
        return None
    return bisect(gap, lo, hi, xtol=THRESHOLD_TOL)


def metrics(s: SchemeSpec, with_threshold: bool = True) -> MetricsReport:
    """Exact report for any registered scheme, threshold included."""
    report = detect_metrics(s) if s.mode == "detect" else correct_metrics(s)
    if not with_threshold:
        return report
    p_th = threshold(report.qber, uncoded_qber(s.k))
    return dataclasses.replace(report, threshold=p_th)


def conditional_residuals(
    s: SchemeSpec, support: Sequence[int], stage: Sequence[int]
) -> tuple[Polynomial, dict[str, Polynomial]]:
    """Residual distribution with noise only on ``support`` sites, given
    that the syndrome bits listed in ``stage`` all read 0.

    Returns the probability of that event and the joint probability of each
    residual label with it.
    """
    total = Polynomial()
    joint: dict[str, Polynomial] = {}
    allowed = 0
    for i in support:
        allowed |= 1 << i
    m = len(support)
    # every bit is needed, so read the full syndrome
    full = dataclasses.replace(s, policy=DecisionPolicy("retain_if_zero"))
    for pattern in enumerate_patterns(s.m):
        if (pattern.x | pattern.z) & ~allowed:
            continue
        out = evaluate(full, pattern)
        if any(out.syndrome[j] for j in stage):
            continue
        prob = weight_probability(weight(pattern), m)
        total += prob
        label = out.residual.label
        joint[label] = joint.get(label, Polynomial()) + prob
    return total, joint
