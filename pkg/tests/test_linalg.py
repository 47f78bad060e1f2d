from fractions import Fraction

from hypothesis import given, settings, strategies as st

from treealg.linalg import (
    EchelonSpan,
    LinComb,
    RatMatrix,
    combine,
    kernel_basis,
    rowreduce,
    span_contains,
    to_int_row,
)


def det_cofactor(m):
    """Brute-force determinant by first-row cofactor expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def test_combine_examples():
    x = LinComb.single("x")
    y = LinComb.single("y")
    assert combine(x, 1, x.scale(-1)).is_zero()
    assert combine(x, 0, y) == x
    lhs = combine(x.scale(Fraction(2, 3)), 1, combine(x.scale(Fraction(1, 3)), 1, y))
    assert lhs == x + y


def test_combine_commutative_associative_as_stored():
    a = LinComb([("x", 1), ("y", Fraction(1, 2))])
    b = LinComb([("y", Fraction(-1, 2)), ("z", 3)])
    c = LinComb([("x", -1)])
    assert combine(a, 1, b).terms == combine(b, 1, a).terms
    assert combine(combine(a, 1, b), 1, c).terms == combine(a, 1, combine(b, 1, c)).terms


def test_lincomb_str_sorted():
    a = LinComb([("y", -2), ("x", 1)])
    assert str(a) == "x - 2*y"
    assert str(LinComb()) == "0"


def test_rowreduce_identity():
    m = RatMatrix.from_rows([[1, 0], [0, 1]])
    ech, rank, pivots = rowreduce(m)
    assert rank == 2 and pivots == (0, 1)
    assert ech.entries == [[1, 0], [0, 1]]


def test_rowreduce_proportional_rows():
    _, rank, _ = rowreduce(RatMatrix.from_rows([[1, 2], [2, 4]]))
    assert rank == 1


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=4, max_size=4),
        min_size=4,
        max_size=4,
    )
)
def test_rank_matches_determinant_oracle(rows):
    _, rank, _ = rowreduce(RatMatrix.from_rows(rows))
    assert (rank == 4) == (det_cofactor(rows) != 0)


@settings(max_examples=30, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-5, max_value=5), min_size=5, max_size=5),
        min_size=5,
        max_size=5,
    )
)
def test_rank_equals_transpose_rank(rows):
    m = RatMatrix.from_rows(rows)
    assert rowreduce(m)[1] == rowreduce(m.transpose())[1]


def test_rowreduce_is_rref():
    m = RatMatrix.from_rows([[2, 4, 1], [1, 2, 0], [0, 0, 3]])
    ech, rank, pivots = rowreduce(m)
    assert rank == 2
    for i, p in enumerate(pivots):
        assert ech.entries[i][p] == 1
        for j in range(rank):
            if j != i:
                assert ech.entries[j][p] == 0


def test_kernel_identity_empty():
    assert kernel_basis(RatMatrix.from_rows([[1, 0], [0, 1]])) == []


def test_kernel_one_equation():
    (v,) = kernel_basis(RatMatrix.from_rows([[1, 1]]))
    assert v[0] * 1 + v[1] * 1 == 0 and any(v)


@settings(max_examples=30, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-4, max_value=4), min_size=6, max_size=6),
        min_size=3,
        max_size=5,
    )
)
def test_kernel_vectors_are_exact(rows):
    m = RatMatrix.from_rows(rows)
    basis = kernel_basis(m)
    assert len(basis) == m.cols - rowreduce(m)[1]
    for v in basis:
        for row in rows:
            assert sum(a * b for a, b in zip(row, v)) == 0


def test_span_contains_examples():
    x = LinComb.single("x")
    y = LinComb.single("y")
    assert span_contains([x + y], (x + y).scale(2))
    assert not span_contains([x], y)


def test_span_contains_rank_invariant():
    gens = [LinComb([("x", 1), ("y", 2)]), LinComb([("y", 1), ("z", 1)])]
    cand = gens[0] + gens[1].scale(Fraction(3, 7))
    assert span_contains(gens, cand)
    keys = ["x", "y", "z"]
    span = EchelonSpan(3)
    for g in gens:
        span.insert([g.coeff(k) for k in keys])
    before = span.rank
    span.insert([cand.coeff(k) for k in keys])
    assert span.rank == before


def test_echelon_span_reduce_exact_is_projection():
    span = EchelonSpan(3)
    span.insert([1, 1, 0])
    v = [Fraction(3), Fraction(1), Fraction(2)]
    r = span.reduce_exact(v)
    assert r == span.reduce_exact(r)
    assert r[0] == 0
    assert span.contains([a - b for a, b in zip(v, r)])


def test_to_int_row_clears_denominators():
    assert to_int_row([Fraction(1, 2), Fraction(1, 3)]) == [3, 2]
    assert to_int_row([2, -1]) == [2, -1]


def test_rational_string_forms():
    assert str(Fraction(-1, 2)) == "-1/2"
    assert str(Fraction(4, 2)) == "2"
