import pytest
from hypothesis import given, settings, strategies as st

from treealg.trees import (
    LEAF,
    Angle,
    DuplicateLabelError,
    ParseError,
    angles,
    catalan,
    entering_edges,
    enumerate_trees,
    parse_pbt,
    parse_planar,
    parse_rooted,
    pbt_basis,
    pbt_shapes,
    planar_shapes,
    planar_trees,
    rooted_trees,
    to_planar,
    to_rooted,
    weighted_pbt_basis,
)


def catalan_oracle(n):
    """The recursion C_n = sum C_i C_{n-1-i}, independent of catalan()."""
    vals = [1]
    for k in range(1, n + 1):
        vals.append(sum(vals[i] * vals[k - 1 - i] for i in range(k)))
    return vals[n]


def cayley_count_oracle(n):
    """Rooted labeled trees on n vertices by brute-force parent maps."""
    from itertools import product

    count = 0
    for root in range(n):
        others = [v for v in range(n) if v != root]
        for parents in product(range(n), repeat=len(others)):
            parent = dict(zip(others, parents))
            ok = True
            for v in others:
                seen = set()
                w = v
                while w != root:
                    if w in seen or w not in parent:
                        ok = False
                        break
                    seen.add(w)
                    w = parent[w]
                if not ok:
                    break
            if ok:
                count += 1
    return count


def test_parse_planar_example():
    t = parse_planar("1(2,3)")
    assert t.label == "1" and [c.label for c in t.children] == ["2", "3"]
    assert str(t) == "1(2,3)"


def test_parse_nonplanar_sorts():
    assert str(parse_rooted("1(3,2)")) == "1(2,3)"


def test_parse_pbt_example():
    t = parse_pbt("(* a (* b *))")
    assert t.left is LEAF and t.label == "a" and t.right.label == "b"
    assert str(t) == "(* a (* b *))"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_planar("1(2,,3)")
    with pytest.raises(ParseError):
        parse_planar("1(2")
    with pytest.raises(DuplicateLabelError):
        parse_planar("1(2,2)")
    with pytest.raises(ParseError):
        parse_pbt("(* a *")


def test_angles_single_vertex():
    assert angles(parse_planar("1")) == [Angle("1", 0)]


def test_angles_corolla():
    assert len(angles(parse_planar("1(2,3)"))) == 5


def test_angles_six_vertex_tree():
    # any 6-vertex planar tree has 11 angles
    assert len(angles(parse_planar("4(5(6,7),8(9))"))) == 11


def test_angles_count_exhaustive():
    for v in range(1, 8):
        for t in planar_shapes(v):
            assert len(angles(t)) == 2 * v - 1


def test_angle_order_at_one_vertex_is_slot_order():
    t = parse_planar("1(2(4),3,5)")
    for v in t.labels():
        slots = [a.slot for a in angles(t) if a.vertex == v]
        assert slots == sorted(slots)


def test_entering_edges_examples():
    t = parse_planar("1(2,3)")
    assert [str(s) for s in entering_edges(t, "1")] == ["2", "3"]
    assert entering_edges(t, "3") == ()
    assert [str(s) for s in entering_edges(parse_planar("1(2(4),3)"), "2")] == ["4"]
    with pytest.raises(KeyError):
        entering_edges(t, "9")


def test_planar_shape_counts():
    assert len(planar_shapes(3)) == 2
    for n in range(1, 8):
        assert len(planar_shapes(n)) == catalan_oracle(n - 1)
    assert {str(t) for t in planar_shapes(3)} == {"1(2(3))", "1(2,3)"}


def test_labeled_rooted_trees_cayley():
    for n in range(1, 5):
        labels = [str(i) for i in range(1, n + 1)]
        assert len(rooted_trees(labels)) == cayley_count_oracle(n)
        assert len(rooted_trees(labels)) == n ** (n - 1)


def test_pbt_shape_counts():
    for n in range(0, 8):
        assert len(pbt_shapes(n)) == catalan_oracle(n)
    assert len(pbt_shapes(4)) == 14


def test_planar_labeled_count():
    assert len(planar_trees(["1", "2", "3"])) == catalan(2) * 6


def test_parse_print_roundtrip_enumerated():
    for n in range(1, 7):
        for t in planar_shapes(n):
            assert parse_planar(str(t)) == t
    for n in range(1, 5):
        for t in planar_trees([str(i) for i in range(1, n + 1)]):
            assert parse_planar(str(t)) == t
        for t in rooted_trees([str(i) for i in range(1, n + 1)]):
            assert parse_rooted(str(t)) == t
    for n in range(1, 7):
        for t in pbt_shapes(n):
            assert parse_pbt(str(t)) == t
    for t in pbt_basis(3, ["a", "b"]):
        assert parse_pbt(str(t)) == t


def test_nonplanar_canonicalization_permutation_invariant():
    for t in planar_trees(["1", "2", "3", "4"]):
        r = to_rooted(t)
        assert to_rooted(to_planar(r)) == r
    # all planar embeddings of one rooted tree canonicalize identically
    groups = {}
    for t in planar_trees(["1", "2", "3"]):
        groups.setdefault(to_rooted(t), set()).add(t)
    assert len(groups) == 9


def test_relabel_roundtrip():
    t = parse_planar("1(2(4),3)")
    mapping = {"1": "x", "2": "y", "3": "z", "4": "w"}
    back = {v: k for k, v in mapping.items()}
    assert t.relabel(mapping).relabel(back) == t


def test_enumerate_trees_dispatch():
    assert len(enumerate_trees("planar", 3)) == 2
    assert len(enumerate_trees("planar", 3, labels=["1", "2", "3"])) == 12
    assert len(enumerate_trees("nonplanar", 3)) == 9
    assert len(enumerate_trees("pbt", 4)) == 14
    assert len(enumerate_trees("pbt", 2, labels=["a", "b"])) == 8
    with pytest.raises(ValueError):
        enumerate_trees("weird", 2)


def test_weighted_pbt_basis_matches_flat_weights():
    flat = weighted_pbt_basis(["a", "b"], {"a": 1, "b": 1}, 3)
    plain = [t for d in range(1, 4) for t in pbt_basis(d, ["a", "b"])]
    assert sorted(map(str, flat)) == sorted(map(str, plain))


def test_weighted_pbt_basis_respects_weights():
    out = weighted_pbt_basis(["a", "b"], {"a": 1, "b": 2}, 2)
    degs = sorted(
        sum({"a": 1, "b": 2}[x] for x in t.decorations()) for t in out
    )
    assert degs == [1, 2, 2, 2]  # a; b; a<a; a>a


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.data())
def test_pbt_infix_decorations(n, data):
    shapes = pbt_shapes(n)
    t = shapes[data.draw(st.integers(min_value=0, max_value=len(shapes) - 1))]
    assert t.decorations() == [str(i) for i in range(1, n + 1)]
