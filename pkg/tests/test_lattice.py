import json

import pytest

from hexloop.lattice import InvalidSize, SizeVector, VertexNotInGrid, build_grid, contains_vertex, valid_sizes


def test_grid_3143_families():
    g = build_grid((3, 1, 4, 3))
    assert tuple(len(f) for f in g.families) == (3, 1, 4, 3, 1, 4)
    assert len(g.families[1]) == 1 and len(g.families[4]) == 1


def test_tfpl_size_has_no_right_bottom_or_left_bottom():
    for n in range(1, 6):
        g = build_grid((n, 0, n, 0))
        assert g.families[3] == () and g.families[5] == ()
        # the rows form a triangle: each row is two vertices longer than the one above
        widths = [sum(1 for v in g.vertices if v[1] == y) for y in g.rows]
        assert widths == [2 * i + 3 for i in range(n)]


def test_family_cardinalities_examples():
    # (K, L, M, N, K+L-N, M+N-K) evaluated at (5,4,5,0)
    assert tuple(len(f) for f in build_grid((5, 4, 5, 0)).families) == (5, 4, 5, 0, 9, 0)
    g = build_grid((4, 3, 2, 3))
    assert len(g.families[4]) == 4 and len(g.families[5]) == 1


def test_contains_vertex_examples():
    s = SizeVector(3, 1, 4, 3)
    assert contains_vertex(s, 0, 0)
    assert not contains_vertex(s, -1, -1)
    assert contains_vertex(s, 1, 0)


def test_parity_examples():
    g = build_grid((3, 1, 4, 3))
    top = g.vertices[0]
    assert top[1] == max(v[1] for v in g.vertices)
    assert g.parity(top) == "odd"
    assert g.parity((top[0] + 1, top[1])) == "even"
    assert g.parity((top[0], top[1] - 1)) == "even"
    with pytest.raises(VertexNotInGrid):
        g.parity((100, 100))


def test_invalid_sizes():
    with pytest.raises(InvalidSize):
        SizeVector(5, 0, 1, 1)
    with pytest.raises(InvalidSize):
        SizeVector(0, 0, 1, 2)


def test_family_invariants_up_to_total_16():
    for size in valid_sizes(16):
        g = build_grid(size)
        fams = g.families
        assert tuple(len(f) for f in fams) == size.word_lengths()
        seen = set()
        for fam in fams:
            assert all(v in g for v in fam)
            xs = [v[0] for v in fam]
            assert xs == sorted(set(xs))
            assert seen.isdisjoint(fam)
            seen.update(fam)
        top_y = max(v[1] for v in g.vertices)
        bottom_y = min(v[1] for v in g.vertices)
        assert all(v[1] == top_y and g.parity(v) == "odd" for v in fams[1])
        assert all(v[1] == bottom_y and g.parity(v) == "even" for v in fams[4])


def test_grid_json_dump():
    data = json.loads(build_grid((3, 1, 4, 3)).dumps())
    assert data["size"] == [3, 1, 4, 3]
    assert set(data["families"]) == {"l_T", "t", "r_T", "r_B", "b", "l_B"}
    assert len(data["vertices"]) == len(build_grid((3, 1, 4, 3)).vertices)
