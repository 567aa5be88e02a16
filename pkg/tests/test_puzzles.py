import itertools

import pytest

from hexloop.boundary import Boundary
from hexloop.lattice import valid_sizes
from hexloop.puzzles import (
    LrInput,
    ShapeError,
    enumerate_hexagonal,
    enumerate_triangular,
    hex_embed_triangular,
    hexagon_region,
    lr_of_boundary,
    lr_of_words,
    lr_oracle,
    puzzle_rows,
    sweep_boundaries,
    triangle_region,
)
from hexloop.words import LengthMismatch, all_words, sorted_word, to_partition

FIG12 = "011,1,1011;110,1,1110"


def test_uniqueness_facts_up_to_length_six():
    for n in range(7):
        for w in all_words(n):
            s = sorted_word(w)
            assert enumerate_triangular(w, s, w) == 1
            assert enumerate_triangular(s, w, w) == 1


def test_all_zero_triangle():
    for n in range(1, 6):
        z = "0" * n
        assert enumerate_triangular(z, z, z) == 1


def test_triangular_matches_tableaux_exhaustive():
    for n in range(6):
        ws = list(all_words(n))
        for u, v, w in itertools.product(ws, repeat=3):
            assert enumerate_triangular(u, v, w) == lr_of_words(u, v, w), (u, v, w)


def test_triangular_length_mismatch():
    with pytest.raises(LengthMismatch):
        enumerate_triangular("01", "0", "01")


def test_fig12_boundary():
    count = enumerate_hexagonal(FIG12)
    assert count >= 1
    assert count == lr_of_boundary(FIG12)


def test_fig12_composite_words():
    assert hex_embed_triangular(FIG12) == ("01110111", "11011011", "11101110")


def test_hexagon_degenerates_to_triangle():
    for n in range(1, 5):
        for u, v, w in itertools.product(list(all_words(n)), repeat=3):
            bd = Boundary(u, "", v, "", w, "")
            assert enumerate_hexagonal(bd) == enumerate_triangular(u, v, w)
            assert hex_embed_triangular(bd) == (u, v, w)


def test_hexagon_matches_composite_triangle_on_sweep():
    for size in valid_sizes(7):
        for bd in sweep_boundaries(size):
            h = enumerate_hexagonal(bd)
            assert h == enumerate_triangular(*hex_embed_triangular(bd)) == lr_of_boundary(bd)


def test_lr_examples():
    assert lr_oracle(LrInput((), (), ())) == 1
    assert lr_oracle(LrInput((3, 1), (), (3, 1))) == 1
    assert lr_oracle(LrInput((1,), (1,), (1, 1))) == 1
    assert lr_oracle(LrInput((2, 1), (2, 1), (3, 2, 1))) == 2
    assert lr_oracle(LrInput((1,), (1,), (3,))) == 0


def test_lr_symmetry_in_lambda_and_mu():
    parts = [to_partition(w) for n in range(7) for w in all_words(n) if w.count("1") == 3]
    parts = sorted(set(parts))
    for lam in parts[:12]:
        for mu in parts[:12]:
            for nu in parts:
                if sum(nu) == sum(lam) + sum(mu):
                    assert lr_oracle(LrInput(lam, mu, nu)) == lr_oracle(LrInput(mu, lam, nu))


def test_lr_input_validation():
    with pytest.raises(ShapeError):
        LrInput((1, 2), (), ())
    with pytest.raises(ShapeError):
        LrInput((3,), (), (), box=(1, 2))


def test_lr_of_boundary_example():
    assert lr_of_boundary("01,-,01;-,01,-") == 1


def test_puzzle_rows_fill_the_region():
    region = triangle_region(2)
    rows = puzzle_rows(region, {"u": "01", "v": "01", "w": "01"})
    assert len(rows) == enumerate_triangular("01", "01", "01")
    for r in rows:
        assert set(r.values()) <= {0, 1, 2}
    hexagon_region((3, 1, 4, 3))
