"""The ten acceptance criteria, each printed as one PASS/FAIL line.

A criterion that is false as stated is reported as FAIL.  Its test first
asserts the exact shape of the failure (which boundaries fail and why), so
any other regression still breaks the suite, and then marks itself xfail.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the lines as
they are produced; they are also repeated in the terminal summary.
"""
from __future__ import annotations

import itertools
from dataclasses import replace
from functools import lru_cache

import numpy as np
import pytest

from conftest import report_criterion
from hexloop import _kernels as kern
from hexloop.boundary import Boundary
from hexloop.lattice import SizeVector
from hexloop.linkpatterns import directed_elp, elp_of_word, g_value, word_of_elp, ExtendedLinkPattern
from hexloop.puzzles import enumerate_triangular, lr_of_boundary, lr_of_words
from hexloop.qring import ZERO, LaurentPoly, Q, apply_matrices, build_matrix, eval_at_rho, inverse_matrix
from hexloop.theorems import SweepScope, _size_data, excess, excess1_terms, moves, verify
from hexloop.words import all_words, from_partition, is_dyck, sorted_word, to_partition

SCOPE = SweepScope(max_total=8, tfpl_max=5, matrix_max=6, roundtrip="all")


@lru_cache(maxsize=None)
def report(*checks: str):
    return verify(SCOPE, list(checks))


def both_families(size: SizeVector) -> bool:
    return size.L > 0 and size.word_lengths()[4] > 0


def top_to_bottom_counts(d) -> dict[int, int]:
    rows = d.oriented.stats[:, kern.ST_T_TO_B] > 0
    out: dict[int, int] = {}
    for k in d.oriented.keys[rows]:
        out[int(k)] = out.get(int(k), 0) + 1
    return out


def frame(bd: Boundary) -> tuple:
    return (bd.l_T, bd.r_T, bd.r_B, bd.l_B)


def _summary(r) -> str:
    return f"{r.passed} passed, {r.failed} failed"


def test_criterion_01_bijection():
    r = report("bijection").results["bijection"]
    report_criterion(1, r.ok, f"tangle counts and round trips over the sweep: {_summary(r)} in {r.seconds:.0f}s")
    assert r.ok, r.counterexample
    assert r.seconds < 600


def test_criterion_02_necessary_conditions():
    r = report("neccond").results["neccond"]
    report_criterion(2, r.ok, f"nonempty classes satisfying all three conditions: {_summary(r)}")
    assert r.ok, r.counterexample


def test_criterion_03_turn_identity():
    r = report("turns").results["turns"]
    report_criterion(3, r.ok, f"oriented configurations, both turn choices: {_summary(r)}")
    assert r.ok, r.counterexample


def test_criterion_04_tangle_formulas():
    rep = report("edge_formulas", "intersecting_pairs", "excess_identity")
    ok = rep.ok
    detail = "; ".join(f"{k} {_summary(r)}" for k, r in rep.results.items())
    report_criterion(4, ok, detail)
    assert ok


def test_criterion_05_excess_zero():
    r = report("excess0").results["excess0"]
    # exact shape of the failures: a class fails precisely when it contains
    # an oriented configuration with a path from the top to the bottom family,
    # and then the ordinary count misses exactly those configurations
    failing = 0
    for size in SCOPE.size_list():
        d = _size_data(size)
        t2b = top_to_bottom_counts(d)
        for bd in d.boundaries:
            if excess(bd):
                continue
            k = bd.key()
            h, hv = d.h_counts.get(k, 0), d.o_counts.get(k, 0)
            assert hv == lr_of_boundary(bd)
            assert h == hv - t2b.get(k, 0)
            failing += h != hv
    assert failing == r.failed
    assert _size_data(SizeVector(2, 0, 2, 0)).h_counts[Boundary.parse("01,-,01;-,01,-").key()] == 1
    report_criterion(
        5,
        r.ok,
        f"{_summary(r)}; oriented count = puzzles = LR everywhere, ordinary count short by the "
        f"top-to-bottom configurations on {r.failed} boundaries",
    )
    if not r.ok:
        pytest.xfail("ordinary and oriented counts differ when a path runs from the top to the bottom family")


def test_criterion_06_excess_one():
    r = report("excess1").results["excess1"]
    f1_bad = f2_bad = f2_flip_bad = f3_bad = 0
    for size in SCOPE.size_list():
        d = _size_data(size)
        t2b_frames = {frame(Boundary.from_key(size, k)) for k in top_to_bottom_counts(d)}
        for bd in d.boundaries:
            if excess(bd) != 1:
                continue
            k = bd.key()
            wq = d.weighted.get(k, ZERO)
            f1 = excess1_terms(bd, "oriented").total
            f2 = excess1_terms(bd, "weighted").total
            f3 = excess1_terms(bd, "plain").total
            bottom = sum(lr_of_boundary(replace(bd, b=w)) for w, _ in moves(bd.b, "down"))
            f1_bad += f1 != LaurentPoly.const(d.o_counts.get(k, 0))
            f2_bad += f2 != wq
            f2_flip_bad += f2 + Q * (2 * bottom) != wq
            if f3 != LaurentPoly.const(d.h_counts.get(k, 0)):
                f3_bad += 1
                assert both_families(size) and frame(bd) in t2b_frames
    assert f1_bad == 0 and f2_flip_bad == 0
    report_criterion(
        6,
        r.ok,
        f"{_summary(r)}; oriented formula exact everywhere, weighted formula off on {f2_bad} boundaries by the sign "
        f"of the constant q in the bottom coefficient, plain formula off on {f3_bad} boundaries near top-to-bottom paths",
    )
    if not r.ok:
        pytest.xfail("the weighted formula carries a sign slip; the plain formula miscounts top-to-bottom paths")


def test_criterion_07_matrices():
    inverses_ok = all(
        build_matrix(n, m).is_unitriangular(lower=(m == "bottom"))
        and (build_matrix(n, m) @ inverse_matrix(n, m)).is_identity()
        for n in range(7)
        for m in ("bottom", "top")
    )
    assert inverses_ok
    relation_bad = recovery_bad = 0
    for size in SCOPE.size_list():
        d = _size_data(size)
        L, nb = size.L, size.word_lengths()[4]
        mt, mb = build_matrix(L, "top"), build_matrix(nb, "bottom")
        it, ib = inverse_matrix(L, "top"), inverse_matrix(nb, "bottom")
        groups: dict[tuple, list[Boundary]] = {}
        for bd in d.boundaries:
            groups.setdefault(frame(bd), []).append(bd)
        for (lt, rt, rb, lb), members in groups.items():
            def table(counts):
                out = {}
                for t, b in itertools.product(all_words(L), all_words(nb)):
                    v = counts.get(Boundary(lt, t, rt, rb, b, lb).key())
                    if v:
                        out[(t, b)] = v
                return out

            assembled = apply_matrices(mt, mb, table(d.restricted))
            recovered = apply_matrices(it, ib, table(d.weighted))
            for bd in members:
                k = bd.key()
                rel = d.weighted.get(k, ZERO) == assembled.get((bd.t, bd.b), ZERO)
                val = eval_at_rho(recovered.get((bd.t, bd.b), ZERO))
                rec = val.is_integer() and val.a == d.h_counts.get(k, 0)
                if not (rel and rec):
                    assert both_families(size), f"{size} {bd}"
                relation_bad += not rel
                recovery_bad += not rec
    ok = inverses_ok and relation_bad == recovery_bad == 0
    report_criterion(
        7,
        ok,
        f"inverses exact for n <= 6; relation off on {relation_bad} and recovery off on {recovery_bad} "
        "boundaries, all at sizes where top and bottom families coexist",
    )
    if not ok:
        pytest.xfail("the matrix relation treats top and bottom half-arches independently")


def test_criterion_08_puzzles():
    bad = 0
    for n in range(6):
        ws = list(all_words(n))
        for u, v, w in itertools.product(ws, repeat=3):
            bad += enumerate_triangular(u, v, w) != lr_of_words(u, v, w)
    unique = all(
        enumerate_triangular(w, sorted_word(w), w) == 1 and enumerate_triangular(sorted_word(w), w, w) == 1
        for n in range(7)
        for w in all_words(n)
    )
    r = report("puzzles").results["puzzles"]
    ok = bad == 0 and unique and r.ok
    report_criterion(8, ok, f"triangles vs tableaux mismatches {bad}; uniqueness {unique}; hexagon vs triangle {_summary(r)}")
    assert ok


def test_criterion_09_symmetry():
    r = report("symmetry").results["symmetry"]
    report_criterion(9, r.ok, f"both reflections over the sweep: {_summary(r)}")
    assert r.ok, r.counterexample


def test_criterion_10_words_and_link_patterns():
    ok = True
    for n in range(13):
        for w in all_words(n):
            ok &= from_partition(to_partition(w), w.count("0"), w.count("1")) == w
            ok &= word_of_elp(elp_of_word(w)) == w
    fig4 = ExtendedLinkPattern(13, (1, 8), (13,), ((2, 5), (3, 4), (6, 7), (9, 10), (11, 12)))
    worked = (
        word_of_elp(fig4) == "1001101101010"
        and word_of_elp(elp_of_word("001101000111")) == "001101000111"
        and is_dyck("001101000111")
        and g_value("1010101010010", "1001101101010") == 2
        and directed_elp("1010101010010", "1001101101010").rl_count() == 2
    )
    ok = bool(ok and worked)
    report_criterion(10, ok, "round trips exhaustive to length 12; worked values reproduced")
    assert ok
