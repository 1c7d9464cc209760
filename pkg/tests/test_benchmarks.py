from fractions import Fraction

import pytest
import sympy as sp

from dqcomm.benchmarks import (
    DelayModel,
    delay,
    depolarizing_distribution,
    recurrence_round,
    resource_table,
    resources_csv,
    stabilizer_qed,
)
from dqcomm.metrics import correct_metrics, detect_metrics
from dqcomm.poly import Polynomial
from dqcomm.schemes import correctable_set, scheme


def _keep_oracle(first, second):
    # keep iff the X-type flips of both pairs agree; survivor Z flips pick up pair 2's
    x = {"I": 0, "X": 1, "Y": 1, "Z": 0}
    z = {"I": 0, "X": 0, "Y": 1, "Z": 1}
    name = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
    out = {}
    for a, pa in first.items():
        for b, pb in second.items():
            if x[a] == x[b]:
                label = name[(x[a], z[a] ^ z[b])]
                out[label] = out.get(label, 0) + pa * pb
    return out


def test_round_matches_hand_oracle():
    first = {"I": Fraction(7, 10), "X": Fraction(1, 10), "Y": Fraction(1, 20), "Z": Fraction(3, 20)}
    second = {"I": Fraction(1, 2), "X": Fraction(1, 4), "Y": Fraction(1, 8), "Z": Fraction(1, 8)}
    r = recurrence_round(first, second)
    assert r.joint == _keep_oracle(first, second)
    assert sum(r.conditional.values()) == 1


def test_round_from_depolarizing_pairs():
    r = recurrence_round(depolarizing_distribution())
    assert r.kept == Polynomial([1, Fraction(-4, 3), Fraction(8, 9)])
    discarded = 1 - r.kept
    assert r.kept + discarded == Polynomial([1])
    assert recurrence_round(depolarizing_distribution(0.0)).conditional["I"] == 1.0


def test_two_rounds_squared():
    r = recurrence_round(depolarizing_distribution())
    two = detect_metrics(scheme("qedqt1"))
    assert two.yield_poly == Fraction(1, 2) * r.kept**2
    assert two.p_joint == r.joint["I"] ** 2
    p = sp.symbols("p")
    ratio = (1 - 2 * p + sp.Rational(10, 9) * p**2) ** 2 / (1 - sp.Rational(4, 3) * p + sp.Rational(8, 9) * p**2) ** 2
    series = sp.series(ratio, p, 0, 5).removeO()
    ours = two.p_success.series(4)
    assert sp.expand(series - sum(sp.Rational(c.numerator, c.denominator) * p**i for i, c in enumerate(ours.coeffs))) == 0


def test_c422_distributions():
    r = detect_metrics(stabilizer_qed("c422", 4))
    assert r.retained_weights.counts == (1, 0, 18, 24, 21)
    assert r.success_weights.counts == (1, 0, 0, 0, 3)


def test_steane_matches_seven_qubit_scheme():
    steane = stabilizer_qed("steane", 7)
    assert correctable_set(steane).counts == (1, 21, 42, 252, 609, 1281, 1428, 462)
    assert correct_metrics(steane).p_joint == correct_metrics(scheme("proposed7")).p_joint


def test_pair_count_must_match():
    with pytest.raises(ValueError):
        stabilizer_qed("steane", 6)


def test_delays():
    assert delay("recurrence", DelayModel(1.0, 1)) == 2
    assert delay("stabilizer") == 2
    assert delay("proposed") == 1 and delay("qsc_ie") == 1
    for m in range(1, 5):
        for t in (0.5, 2.0):
            model = DelayModel(t, m)
            assert delay("proposed", model) <= min(delay("recurrence", model), delay("stabilizer", model))
    with pytest.raises(ValueError):
        DelayModel(0, 1)


def test_resource_tables():
    det = {r.scheme: (r.n, r.k, r.e, r.c, r.cnot) for r in resource_table("detection")}
    assert det["QED+QT 2"] == (4, 2, 4, 6, 28)
    cor = {r.scheme: (r.n, r.k, r.e, r.c, r.cnot) for r in resource_table("correction")}
    assert cor["Proposed"] == (7, 1, 6, 6, 22)
    assert cor["QSC-IE"] == (7, 1, 3, 0, 43)
    assert resources_csv(resource_table("correction")).splitlines()[0] == "scheme,n,k,e,c,cnot"
