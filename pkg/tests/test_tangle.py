import numpy as np
import pytest

from hexloop.boundary import Boundary
from hexloop.lattice import SizeVector, valid_sizes
from hexloop.oriented import boundary_of_oriented, enumerate_oriented, oriented_table
from hexloop.puzzles import sweep_boundaries
from hexloop.tangle import (
    STAT_NAMES,
    CountMismatch,
    PathTangle,
    TangleEndpoints,
    blue_steps_formula,
    endpoints,
    enumerate_tangles,
    excess_via_tangle,
    from_tangle,
    intersecting_pairs,
    intersecting_pairs_formula,
    red_steps_formula,
    rows_from_paths,
    step_counts,
    tangle_rows,
    tangle_statistics,
    to_tangle,
    validate_tangle,
)
from hexloop.theorems import excess
from hexloop.words import inversions

FIG10 = "00011,01,001;11000,10,100"


def test_fig10_endpoints_and_tangles():
    bd = Boundary.parse(FIG10)
    assert bd.size == SizeVector(5, 2, 3, 5)
    ep = endpoints(bd)
    assert len(ep.D) == len(ep.E) == "00011".count("0") + "01".count("0")
    assert len(ep.D2) == len(ep.E2) == "01".count("1") + "001".count("1")
    tangles = enumerate_tangles(bd)
    assert len(tangles) == 30
    for pt in tangles:
        assert validate_tangle(pt, ep) is None
        assert [p[0] for p in pt.blue] == list(ep.D) and [p[-1] for p in pt.blue] == list(ep.E)
        assert [p[0] for p in pt.red] == list(ep.D2) and [p[-1] for p in pt.red] == list(ep.E2)
        o = from_tangle(pt)
        assert boundary_of_oriented(o) == bd
        assert to_tangle(o) == pt


def test_fig10_intersecting_pairs_value():
    bd = Boundary.parse(FIG10)
    lt, t, rt, rb, b, lb = bd.words
    expected = inversions(b) - inversions(t) + b.count("0") * lb.count("1") + rb.count("0") * (b.count("1") + lb.count("1"))
    assert intersecting_pairs_formula(bd) == expected
    for pt in enumerate_tangles(bd):
        assert intersecting_pairs(pt) == expected


def test_no_blue_paths_when_no_zeros():
    bd = Boundary.parse("1,1,1;1,1,1")
    assert bd.size == SizeVector(1, 1, 1, 1)
    ep = endpoints(bd)
    assert ep.D == () and ep.E == ()


def test_endpoints_require_balanced_boundary():
    with pytest.raises(CountMismatch):
        endpoints("00,-,01;-,11,-")


def test_endpoints_inside_strip_on_sweep():
    for size in valid_sizes(8):
        for bd in sweep_boundaries(size):
            ep = endpoints(bd)
            for p in ep.D + ep.E + ep.D2 + ep.E2:
                assert ep.ymin <= p[1] <= ep.ymax


def test_validation_failures():
    ep = TangleEndpoints(((4, 0), (4, 0)), ((2, 1), (2, 1)), (), (), -1, 1)
    pt = PathTangle(SizeVector(1, 0, 1, 0), (((4, 0), (2, 1)), ((4, 0), (2, 1))), ())
    assert "share a vertex" in validate_tangle(pt, ep).message
    ep = TangleEndpoints((), (), ((0, 0),), ((4, 0),), -1, 1)
    pt = PathTangle(SizeVector(1, 0, 1, 0), (), (((0, 0), (4, 0)),))
    assert validate_tangle(pt, ep).condition == 2
    ep = TangleEndpoints(((2, 0),), ((0, 1),), ((0, 0),), ((2, 1),), -1, 1)
    pt = PathTangle(SizeVector(1, 0, 1, 0), (((2, 0), (0, 1)),), (((0, 0), (2, 1)),))
    assert validate_tangle(pt, ep).condition == 1


def test_dominance_violation_gives_no_tangles():
    assert enumerate_tangles("10,-,01;-,01,-") == []


def test_roundtrip_small_instance():
    (o,) = enumerate_oriented((2, 0, 2, 0), "01,-,01;-,01,-")
    pt = to_tangle(o)
    assert from_tangle(pt) == o
    assert PathTangle.from_json(pt.to_json()) == pt


def test_roundtrip_and_counts_on_sweep():
    for size in valid_sizes(6):
        for o in enumerate_oriented(size):
            pt = to_tangle(o)
            assert validate_tangle(pt, endpoints(boundary_of_oriented(o))) is None
            assert from_tangle(pt) == o
        counts = oriented_table(size).counts()
        for bd in sweep_boundaries(size):
            assert len(tangle_rows(bd)) == counts.get(bd.key(), 0)


def test_statistics_and_formulas_on_sweep():
    for size in valid_sizes(6):
        for bd in sweep_boundaries(size):
            tangles = enumerate_tangles(bd)
            if not tangles:
                continue
            rows = np.stack([rows_from_paths(pt) for pt in tangles])
            bulk = tangle_statistics(size, rows)
            for pt, st in zip(tangles, bulk):
                c = step_counts(pt)
                assert c["blue_down"] + c["blue_horiz"] == blue_steps_formula(bd)
                assert c["red_down"] + c["red_horiz"] == red_steps_formula(bd)
                assert intersecting_pairs(pt) == intersecting_pairs_formula(bd)
                assert excess_via_tangle(pt) == excess(bd) >= 0
                named = dict(zip(STAT_NAMES, st))
                for key in c:
                    assert named[key] == c[key]
                assert named["intersecting_pairs"] == intersecting_pairs(pt)


def test_excess_one_example():
    tangles = enumerate_tangles("011,1,0111;110,1,1110")
    assert len(tangles) == 10
    assert all(excess_via_tangle(pt) == 1 for pt in tangles)


def test_straight_paths_give_zero_steps():
    # excess zero boundary of size (1,0,1,0): no down or horizontal steps at all
    for bd in sweep_boundaries((1, 0, 1, 0)):
        for pt in enumerate_tangles(bd):
            c = step_counts(pt)
            if c["blue_down"] + c["blue_horiz"] + c["red_down"] + c["red_horiz"] == 0:
                assert blue_steps_formula(bd) == red_steps_formula(bd) == 0
