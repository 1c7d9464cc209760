import itertools
from fractions import Fraction

import pytest

from dqcomm.channel import enumerate_patterns, pattern_probability
from dqcomm.clifford import ContractError
from dqcomm.pauli import DimensionError, PauliString, from_int, mul, parse_label
from dqcomm.schemes import (
    PROPOSED7_TABLE,
    SCHEME_NAMES,
    UnknownSchemeError,
    build_ml_lut,
    correctable_set,
    evaluate,
    observe,
    scheme,
)


@pytest.mark.parametrize(
    "name,resources",
    [
        ("proposed1", (2, 1, 1, 1, 2)),
        ("proposed2", (3, 1, 2, 2, 4)),
        ("proposed2q", (4, 2, 2, 2, 8)),
        ("proposed7", (7, 1, 6, 6, 22)),
        ("noisefree_elim", (1, 1, 2, 2, 4)),
    ],
)
def test_resources(name, resources):
    s = scheme(name)
    assert (s.n, s.k, s.e, s.c, s.cnot_count) == resources


def test_unknown_names():
    with pytest.raises(UnknownSchemeError):
        scheme("proposed9")
    with pytest.raises(UnknownSchemeError):
        scheme("stabilizer_qed:golay")


@pytest.mark.parametrize("name", SCHEME_NAMES)
def test_identity_pattern_succeeds(name):
    s = scheme(name)
    out = evaluate(s, PauliString.identity(s.m))
    assert out.success and not any(out.syndrome)


def test_dimension_check():
    with pytest.raises(DimensionError):
        evaluate(scheme("proposed1"), parse_label("XXX"))


def test_evaluate_examples():
    p7 = scheme("proposed7")
    out = evaluate(p7, parse_label("XIIIIII"))
    assert out.syndrome_bits == "110000" and out.recovery.label == "X" and out.success
    out = evaluate(p7, parse_label("IIIZIII"))
    assert out.syndrome_bits == "000111" and out.recovery.label == "I" and out.success
    out = evaluate(scheme("proposed2q"), parse_label("YYYY"))
    assert out.decision == "retain" and out.success
    out = evaluate(scheme("proposed1"), parse_label("XI"))
    assert out.syndrome == (1,) and out.decision == "discard"


def test_sequential_policy_stops_after_first_flag():
    s = scheme("proposed2")
    records = {len(evaluate(s, p).syndrome) for p in enumerate_patterns(3)}
    assert records == {1, 2}
    for p in enumerate_patterns(3):
        out = evaluate(s, p)
        if len(out.syndrome) == 1:
            assert out.syndrome == (1,) and out.decision == "discard"


@pytest.mark.parametrize("name", ["proposed1", "proposed2q"])
def test_retained_correct_sets_are_subgroups(name):
    s = scheme(name)
    group = [p for p in enumerate_patterns(s.m) if evaluate(s, p).success]
    labels = {p.label for p in group}
    assert labels == ({"II", "ZZ"} if name == "proposed1" else {"IIII", "XXXX", "YYYY", "ZZZZ"})
    for a, b in itertools.product(group, repeat=2):
        assert mul(a, b).label in labels


def test_proposed7_syndrome_classes():
    maps = scheme("proposed7").maps
    sizes = {}
    for p in enumerate_patterns(7):
        key = maps.syndrome(p)
        sizes[key] = sizes.get(key, 0) + 1
    assert len(sizes) == 64 and set(sizes.values()) == {256}


def test_proposed7_table_rows():
    s = scheme("proposed7")
    for label, syndrome, recovery in PROPOSED7_TABLE:
        out = evaluate(s, parse_label(label))
        assert out.syndrome_bits == syndrome
        assert out.recovery.label == recovery


def test_ml_lut_examples():
    lut = scheme("proposed7").policy.lut
    assert lut.is_total
    assert lut["000000"].label == "I"
    assert lut["100000"].label == "I"
    assert lut["110000"].label == "X"


def _oracle_lut(s, p):
    """Arg-max of the exact class probability at a small rational p."""
    best = {}
    for pattern in enumerate_patterns(s.m):
        syn, res = observe(s, pattern)
        key = "".join(map(str, syn))
        bucket = best.setdefault(key, {})
        bucket[res.label] = bucket.get(res.label, 0) + pattern_probability(pattern)(p)
    return best


def test_ml_lut_agrees_with_small_p_likelihood():
    s = scheme("proposed7")
    lut = s.policy.lut
    for key, bucket in _oracle_lut(s, Fraction(1, 1000)).items():
        top = max(bucket.values())
        winners = {label for label, v in bucket.items() if v == top}
        assert lut[key].label in winners


def test_ml_lut_rejects_detection_schemes():
    with pytest.raises(ContractError):
        build_ml_lut(scheme("proposed1"))


def test_correctable_sets():
    w = correctable_set(scheme("proposed7"))
    assert w.total == 4096
    assert w.counts == (1, 21, 42, 252, 609, 1281, 1428, 462)
    assert correctable_set(scheme("noisefree_elim")).counts == (1, 3)
    # any recovery choice keeps one of four equally sized classes
    s = scheme("proposed7")
    assert correctable_set(s, s.policy.lut.replace("110000", "I")).total == 4096


def test_noise_free_elimination_cancels_every_error():
    s = scheme("noisefree_elim")
    assert s.policy.lut.to_json() == {"00": "I", "01": "Z", "10": "X", "11": "Y"}
    for label in "IXYZ":
        out = evaluate(s, parse_label(label))
        assert out.recovery.label == label and out.success


@pytest.mark.parametrize("name", [n for n in SCHEME_NAMES if scheme(n).m <= 3])
def test_syndrome_linearity_exhaustive(name):
    s = scheme(name)
    m = s.m
    for a, b in itertools.product(range(4**m), repeat=2):
        pa, pb = from_int(a, m), from_int(b, m)
        sa, ra = observe(s, pa)
        sb, rb = observe(s, pb)
        sc, rc = observe(s, mul(pa, pb))
        assert tuple(x ^ y for x, y in zip(sa, sb)) == sc
        if ra is not None:
            assert mul(ra, rb) == rc


def test_circuit_and_map_agree_for_reconstructed_schemes():
    for name in ("proposed2q", "proposed7"):
        s = scheme(name)
        assert s.circuit.maps.syndrome_rows == s.maps.syndrome_rows
    p7 = scheme("proposed7")
    assert p7.circuit.maps.residual_rows == p7.maps.residual_rows


def test_json_export():
    data = scheme("proposed7").to_json()
    assert data["representation"]["type"] == "map"
    assert data["policy"]["lut"]["110000"] == "X"
    assert scheme("proposed1").to_json()["representation"]["type"] == "circuit"
