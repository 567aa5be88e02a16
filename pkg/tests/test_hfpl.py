import itertools
from collections import Counter

import numpy as np
import pytest

from hexloop.boundary import Boundary, BoundarySizeMismatch
from hexloop.hfpl import (
    HfplConfig,
    boundary_of,
    canonical_orient,
    count_hfpl,
    enumerate_hfpl,
    link_pattern_pair,
    ordinary_table,
    validate_hfpl,
)
from hexloop.lattice import build_grid, valid_sizes
from hexloop.linkpatterns import word_of_elp
from hexloop.oriented import boundary_of_oriented, oriented_table, turn_balance
from hexloop.tangle import enumerate_tangles, from_tangle
from hexloop.words import complement

FIG1 = "001,0,001;010,0,100"
FIG_3143 = "011,1,0111;110,1,1110"
FIG7 = "00101,0100,01001;-,110001000,-"


def test_fig1_boundary_class():
    configs = enumerate_hfpl((3, 1, 3, 3), FIG1)
    assert configs
    for c in configs:
        assert validate_hfpl(c) is None
        assert str(boundary_of(c)) == FIG1


def test_3143_boundary_class():
    configs = enumerate_hfpl((3, 1, 4, 3), FIG_3143)
    assert len(configs) == 9
    assert all(str(boundary_of(c)) == FIG_3143 for c in configs)


def test_fig7_boundary_and_link_patterns():
    # size (5,4,5,0) is beyond the exhaustive tables; reach the class through tangles
    bd = Boundary.parse(FIG7)
    found = 0
    for pt in enumerate_tangles(bd):
        o = from_tangle(pt)
        c = o.base
        if validate_hfpl(c) is None and boundary_of(c) == bd:
            pi_b, pi_t = link_pattern_pair(c)
            assert word_of_elp(pi_b) == bd.b
            assert word_of_elp(pi_t) == complement(bd.t)
            found += 1
    assert found >= 1


def test_empty_and_full_edge_sets_are_invalid():
    g = build_grid((3, 1, 4, 3))
    empty = HfplConfig(g.size, (0,) * len(g.edges))
    rep = validate_hfpl(empty)
    assert rep is not None and rep.condition in (2, 3)
    top = g.families[1][0]
    assert empty.degree(top) == 0
    full = HfplConfig(g.size, (1,) * len(g.edges))
    rep = validate_hfpl(full)
    assert rep is not None and "degree" in rep.message


def test_json_roundtrip():
    for c in enumerate_hfpl((3, 1, 4, 3), FIG_3143):
        assert HfplConfig.from_json(c.to_json()) == c


def brute_force_counts(size):
    """Every edge subset, filtered by the validator (independent of the DFS)."""
    g = build_grid(size)
    out = Counter()
    for mask in itertools.product((0, 1), repeat=len(g.edges)):
        c = HfplConfig(g.size, mask)
        if validate_hfpl(c) is None:
            out[boundary_of(c).key()] += 1
    return out


@pytest.mark.parametrize("size", [(1, 0, 1, 0), (1, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1), (2, 0, 2, 0), (1, 1, 1, 1)])
def test_enumeration_matches_brute_force(size):
    if len(build_grid(size).edges) > 16:
        pytest.skip("too many edges for the subset search")
    assert brute_force_counts(size) == Counter(ordinary_table(size).counts())


def test_small_examples():
    assert count_hfpl((1, 0, 1, 0), "0,-,0;-,0,-") == brute_force_counts((1, 0, 1, 0))[Boundary.parse("0,-,0;-,0,-").key()]
    assert count_hfpl((2, 0, 2, 0), "01,-,01;-,01,-") == 1
    # first necessary condition violated: zeros of l_T t differ from zeros of b r_B
    assert enumerate_hfpl((2, 0, 2, 0), "00,-,01;-,11,-") == []


def test_boundary_size_mismatch():
    with pytest.raises(BoundarySizeMismatch):
        enumerate_hfpl((2, 0, 2, 0), "0,-,01;-,01,-")


def test_link_pattern_pair_with_no_top_family():
    for c in enumerate_hfpl((2, 0, 2, 0)):
        _, pi_t = link_pattern_pair(c)
        assert pi_t.n == 0


def test_link_pattern_words_on_sweep():
    for size in valid_sizes(7):
        for c in enumerate_hfpl(size):
            bd = boundary_of(c)
            pi_b, pi_t = link_pattern_pair(c)
            assert word_of_elp(pi_b) == bd.b
            assert word_of_elp(pi_t) == complement(bd.t)


def test_canonical_orientation_on_sweep():
    for size in valid_sizes(6):
        seen = set()
        for c in enumerate_hfpl(size):
            o = canonical_orient(c)
            assert o.base == c
            assert boundary_of_oriented(o) == boundary_of(c)
            ts = turn_balance(o)
            assert ts.n_ccw == 0
            assert o.states not in seen
            seen.add(o.states)


def test_ordinary_at_most_oriented_on_sweep():
    for size in valid_sizes(8):
        h = ordinary_table(size).counts()
        hv = oriented_table(size).counts()
        for k, c in h.items():
            assert c <= hv.get(k, 0)


def test_projection_agrees_with_direct_search():
    for size in valid_sizes(7):
        direct = ordinary_table(size, "direct")
        proj = ordinary_table(size, "projection")
        assert direct.counts() == proj.counts()
        a = {bytes(r) for r in direct.confs}
        b = {bytes(r) for r in proj.confs}
        assert a == b
        assert np.all(direct.loops >= 0)
