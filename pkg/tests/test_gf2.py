from hypothesis import given, strategies as st

from dqcomm import gf2

vectors = st.lists(st.integers(0, 255), max_size=6)


def brute_span(vs):
    out = set()
    for mask in range(1 << len(vs)):
        acc = 0
        for i, v in enumerate(vs):
            if (mask >> i) & 1:
                acc ^= v
        out.add(acc)
    return out


@given(vectors, st.integers(0, 255))
def test_in_span_and_decompose_agree_with_brute_force(vs, target):
    inside = target in brute_span(vs)
    assert gf2.in_span(target, vs) == inside
    combo = gf2.decompose(target, vs)
    assert (combo is not None) == inside
    if combo is not None:
        acc = 0
        for i in combo:
            acc ^= vs[i]
        assert acc == target


@given(vectors)
def test_rank_and_span(vs):
    span = brute_span(vs)
    assert 1 << gf2.rank(vs) == len(span)
    assert set(gf2.span(vs)) == span


@given(st.lists(st.integers(0, 255), max_size=6))
def test_nullspace(rows):
    basis = gf2.nullspace(rows, 8)
    kernel = {v for v in range(256) if all(gf2.parity(r & v) == 0 for r in rows)}
    assert set(gf2.span(basis)) == kernel
    assert gf2.rank(basis) == len(basis)


def test_rows_and_columns():
    cols = [0b01, 0b11, 0b10]
    rows = gf2.columns_to_rows(cols, 2)
    assert rows == (0b011, 0b110)
    for v in range(8):
        expected = 0
        for j in range(3):
            if (v >> j) & 1:
                expected ^= cols[j]
        assert gf2.apply_rows(rows, v) == expected
