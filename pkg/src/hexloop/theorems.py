"""Excess, boundary moves, the closed formulas for excess one, and a sweep
harness that checks every structural identity against exhaustive
enumeration."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Iterable, Literal

import numpy as np

from . import _kernels as kern
from .boundary import Boundary, balanced
from .hfpl import ordinary_table
from .lattice import InvalidSize, SizeVector, valid_sizes
from .oriented import oriented_table
from .puzzles import enumerate_hexagonal, enumerate_triangular, hex_embed_triangular, lr_of_boundary, sweep_boundaries
from .qring import (
    Q,
    Q_INV,
    ZERO,
    LaurentPoly,
    NotUnitriangular,
    apply_matrices,
    build_matrix,
    eval_at_rho,
    inverse_matrix,
)
from .tangle import (
    blue_steps_formula,
    from_tangle,
    intersecting_pairs_formula,
    oriented_tangle_rows,
    red_steps_formula,
    tangle_rows,
    tangle_statistics,
    to_tangle,
)
from .words import all_words, complement, dominance_leq, inversions, star

Flavor = Literal["oriented", "weighted", "plain"]


class ExcessMismatch(ValueError):
    pass


def excess(boundary) -> int:
    bd = Boundary.coerce(boundary)
    lt, t, rt, rb, b, lb = bd.words
    return (
        inversions(rb)
        + inversions(b)
        + inversions(lb)
        - inversions(lt)
        - inversions(t)
        - inversions(rt)
        - lt.count("1") * t.count("0")
        - t.count("1") * rt.count("0")
        - rb.count("0") * lb.count("1")
    )


# ------------------------------------------------------------------ moves


@dataclass(frozen=True)
class MoveStats:
    """Letter counts left (L0, L1) and right (R0, R1) of the swapped pair."""

    L0: int
    L1: int
    R0: int
    R1: int

    @property
    def L(self) -> int:
        return self.L0 + self.L1 + 1

    @property
    def R(self) -> int:
        return self.R0 + self.R1 + 1


def _move_stats(w: str, i: int) -> MoveStats:
    left, right = w[:i], w[i + 2 :]
    return MoveStats(left.count("0"), left.count("1"), right.count("0"), right.count("1"))


def moves(w: str, direction: Literal["up", "down"] = "up") -> list[tuple[str, MoveStats]]:
    """``up``: all w+ obtained by turning one factor 01 into 10.
    ``down``: all w- from which ``w`` arises that way.  The stats always
    describe the move from the smaller word to the larger one."""
    src, dst = ("01", "10") if direction == "up" else ("10", "01")
    out = []
    for i in range(len(w) - 1):
        if w[i : i + 2] == src:
            out.append((w[:i] + dst + w[i + 2 :], _move_stats(w, i)))
    return out


# ------------------------------------------------------- excess-one formulas


@dataclass(frozen=True)
class FormulaTerm:
    side: str  # which boundary word was moved
    moved: Boundary
    coefficient: LaurentPoly
    lr: int

    @property
    def value(self) -> LaurentPoly:
        return self.coefficient * self.lr


@dataclass(frozen=True)
class FormulaValue:
    flavor: str
    terms: tuple[FormulaTerm, ...]

    @property
    def total(self) -> LaurentPoly:
        acc = ZERO
        for t in self.terms:
            acc = acc + t.value
        return acc

    def breakdown(self) -> str:
        lines = [f"{t.side:>4} -> {t.moved}: ({t.coefficient}) * {t.lr}" for t in self.terms if t.lr]
        return "\n".join(lines) or "(all terms vanish)"


@lru_cache(maxsize=None)
def _lr(bd: Boundary) -> int:
    return lr_of_boundary(bd)


def excess1_terms(boundary, flavor: Flavor) -> FormulaValue:
    """Evaluate the six sums of the excess-one formula of the given flavor
    exactly as printed, keeping every term for inspection."""
    bd = Boundary.coerce(boundary)
    e = excess(bd)
    if e != 1:
        raise ExcessMismatch(f"boundary {bd} has excess {e}, not 1")
    lt, t, rt, rb, b, lb = bd.words
    _, L, M, _ = bd.size.as_tuple()
    one = lambda w: w.count("1")  # noqa: E731
    zero = lambda w: w.count("0")  # noqa: E731
    s = Q + Q_INV
    P = LaurentPoly.const

    def coef(plain, oriented, weighted) -> LaurentPoly:
        value = {"plain": plain, "oriented": oriented, "weighted": weighted}[flavor]
        return value if isinstance(value, LaurentPoly) else P(value)

    terms = []

    def add(side: str, moved: Boundary, c: LaurentPoly) -> None:
        terms.append(FormulaTerm(side, moved, c, _lr(moved)))

    for w, m in moves(lt, "up"):
        add("l_T", replace(bd, l_T=w), coef(
            one(lt) + one(t),
            one(lt) + one(t) + m.L1,
            m.R1 + one(t) + 1 + s * m.L1,
        ))
    for w, m in moves(t, "up"):
        add("t", replace(bd, t=w), coef(
            one(lt) + m.L1 - 1,
            2 * (one(lt) + m.L1),
            s * (one(lt) + m.L1) - Q,
        ))
    for w, m in moves(rt, "up"):
        add("r_T", replace(bd, r_T=w), coef(
            L + m.L,
            L + one(t) + m.L + m.L1 + 1,
            zero(t) + 1 + m.L0 + s * (one(t) + m.L1),
        ))
    for w, m in moves(rb, "down"):
        add("r_B", replace(bd, r_B=w), coef(
            zero(t) + zero(rt) + one(lb) - one(rb) + 1,
            L + M + one(lb) + 1 - one(rb) - one(b) - m.L1,
            zero(t) + zero(rt) - m.R1 + s * (one(lb) - m.L1),
        ))
    for w, m in moves(b, "down"):
        add("b", replace(bd, b=w), -coef(
            m.L1,
            2 * m.L1,
            s * m.L1 + Q,
        ))
    for w, m in moves(lb, "down"):
        add("l_B", replace(bd, l_B=w), coef(
            one(lt) + one(t) - m.L + 1,
            one(lt) + one(t) - m.L - m.L1,
            one(lt) + one(t) - m.L0 - s * m.L1,
        ))
    return FormulaValue(flavor, tuple(terms))


def excess1_formula(boundary, flavor: Flavor) -> LaurentPoly | int:
    value = excess1_terms(boundary, flavor).total
    return value if flavor == "weighted" else _as_int(value)


def _as_int(p: LaurentPoly) -> int:
    if any(e != 0 for e, _ in p.terms):
        raise ValueError(f"{p} is not a constant")
    return p.at_one()


def excess1_restricted(boundary) -> LaurentPoly:
    """Weighted count with the excess-zero neighbours removed: the weighted
    formula minus q^-1 sum_{t->t+} c(t+) minus q sum_{b-->b} c(b-)."""
    bd = Boundary.coerce(boundary)
    value = excess1_terms(bd, "weighted").total
    for w, _ in moves(bd.t, "up"):
        value = value - Q_INV * _lr(replace(bd, t=w))
    for w, _ in moves(bd.b, "down"):
        value = value - Q * _lr(replace(bd, b=w))
    return value


# -------------------------------------------------------------- symmetries


def reflect_vertical(bd: Boundary) -> Boundary:
    lt, t, rt, rb, b, lb = bd.words
    return Boundary(star(rt), star(t), star(lt), star(lb), star(b), star(rb))


def reflect_horizontal(bd: Boundary) -> Boundary:
    lt, t, rt, rb, b, lb = bd.words
    c = complement
    return Boundary(c(lb), c(b), c(rb), c(rt), c(t), c(lt))


# ---------------------------------------------------------------- harness

ALL_CHECKS = (
    "neccond",
    "turns",
    "edge_formulas",
    "intersecting_pairs",
    "excess_identity",
    "bijection",
    "excess0",
    "excess1",
    "matrices",
    "symmetry",
    "puzzles",
)


@dataclass(frozen=True)
class SweepScope:
    max_total: int = 8
    tfpl_max: int = 5
    sizes: tuple[SizeVector, ...] | None = None
    matrix_max: int = 6
    roundtrip: Literal["all", "bulk"] = "bulk"

    def size_list(self) -> list[SizeVector]:
        if self.sizes is not None:
            return [SizeVector.coerce(s) for s in self.sizes]
        out = list(valid_sizes(self.max_total)) if self.max_total >= 0 else []
        for n in range(1, self.tfpl_max + 1):
            s = SizeVector(n, 0, n, 0)
            if s.total > self.max_total:
                out.append(s)
        return out


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    counterexample: str | None = None
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, witness: Callable[[], str] | str = "") -> None:
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if self.counterexample is None:
            self.counterexample = witness() if callable(witness) else witness


@dataclass
class Report:
    scope: SweepScope
    results: dict[str, CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results.values())

    def to_json(self) -> dict:
        return {
            "scope": {
                "max_total": self.scope.max_total,
                "tfpl_max": self.scope.tfpl_max,
                "sizes": None if self.scope.sizes is None else [str(s) for s in self.scope.sizes],
            },
            "ok": self.ok,
            "checks": {
                k: {
                    "passed": r.passed,
                    "failed": r.failed,
                    "counterexample": r.counterexample,
                    "notes": r.notes,
                    "seconds": round(r.seconds, 3),
                }
                for k, r in self.results.items()
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def table(self) -> str:
        rows = [f"{'check':<20}{'status':<8}{'passed':>10}{'failed':>10}{'sec':>9}"]
        for k, r in self.results.items():
            rows.append(f"{k:<20}{'PASS' if r.ok else 'FAIL':<8}{r.passed:>10}{r.failed:>10}{r.seconds:>9.2f}")
            if r.counterexample:
                rows.append(f"    first counterexample: {r.counterexample}")
            for n in r.notes:
                rows.append(f"    note: {n}")
        return "\n".join(rows)


@dataclass
class _SizeData:
    size: SizeVector
    oriented: object
    ordinary: object
    o_counts: dict
    h_counts: dict
    weighted: dict
    restricted: dict
    boundaries: list


@lru_cache(maxsize=8)
def _size_data(size: SizeVector) -> _SizeData:
    ot = oriented_table(size)
    ht = ordinary_table(size)
    return _SizeData(
        size,
        ot,
        ht,
        ot.counts(),
        ht.counts(),
        ot.weighted(False),
        ot.weighted(True),
        sweep_boundaries(size),
    )


def verify(scope: SweepScope | None = None, checks: Iterable[str] | None = None, progress=None) -> Report:
    scope = scope or SweepScope()
    selected = list(ALL_CHECKS if checks is None else checks)
    unknown = [c for c in selected if c not in ALL_CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")
    results = {c: CheckResult(c) for c in selected}
    sizes = scope.size_list()
    if "matrices" in results:
        _check_matrix_inverses(results["matrices"], scope.matrix_max)
    for size in sizes:
        if progress:
            progress(size)
        data = _size_data(size)
        for name in selected:
            t0 = time.perf_counter()
            _CHECKS[name](results[name], data, scope)
            results[name].seconds += time.perf_counter() - t0
    return Report(scope, results)


# individual checks -----------------------------------------------------------


def _check_neccond(res: CheckResult, d: _SizeData, scope) -> None:
    for key in set(d.o_counts) | set(d.h_counts):
        bd = Boundary.from_key(d.size, key)
        lt, t, rt, rb, b, lb = bd.words
        ok = balanced(bd)
        ok = ok and dominance_leq(lt + t, b + rb) and dominance_leq(t + rt, lb + b)
        ok = ok and excess(bd) >= 0
        res.record(ok, lambda: f"{d.size} {bd}")


def _check_turns(res: CheckResult, d: _SizeData, scope) -> None:
    st = d.oriented.stats
    rhs = st[:, kern.ST_RL_B] - st[:, kern.ST_RL_T] + st[:, kern.ST_CCW] - st[:, kern.ST_CW]
    ul = st[:, kern.ST_UL] - st[:, kern.ST_LU]
    ld = st[:, kern.ST_LD] - st[:, kern.ST_DL]
    good = (ul == rhs) & (ld == rhs) & (st[:, kern.ST_SAME_SIDE] == 0)
    _record_bulk(res, good, lambda i: f"{d.size} row {i}: ul={ul[i]} ld={ld[i]} rhs={rhs[i]}")


def _record_bulk(res: CheckResult, good: np.ndarray, witness: Callable[[int], str]) -> None:
    res.passed += int(good.sum())
    bad = np.nonzero(~good)[0]
    res.failed += len(bad)
    if len(bad) and res.counterexample is None:
        res.counterexample = witness(int(bad[0]))


@lru_cache(maxsize=8)
def _tangle_data(size: SizeVector):
    rows = oriented_tangle_rows(size)
    stats = tangle_statistics(size, rows)
    return rows, stats


def _per_row_formula(d: _SizeData, fn) -> np.ndarray:
    cache: dict[int, int] = {}
    out = np.empty(len(d.oriented.keys), dtype=np.int64)
    for i, k in enumerate(d.oriented.keys):
        k = int(k)
        if k not in cache:
            cache[k] = fn(Boundary.from_key(d.size, k))
        out[i] = cache[k]
    return out


def _check_edge_formulas(res: CheckResult, d: _SizeData, scope) -> None:
    _, st = _tangle_data(d.size)
    blue = _per_row_formula(d, blue_steps_formula)
    red = _per_row_formula(d, red_steps_formula)
    good = (st[:, 0] + st[:, 2] == blue) & (st[:, 3] + st[:, 5] == red)
    _record_bulk(res, good, lambda i: f"{d.size} row {i}: blue {st[i,0]+st[i,2]} vs {blue[i]}, red {st[i,3]+st[i,5]} vs {red[i]}")


def _check_intersecting_pairs(res: CheckResult, d: _SizeData, scope) -> None:
    _, st = _tangle_data(d.size)
    formula = _per_row_formula(d, intersecting_pairs_formula)
    good = st[:, 8] == formula
    _record_bulk(res, good, lambda i: f"{d.size} row {i}: {st[i,8]} vs {formula[i]}")


def _check_excess_identity(res: CheckResult, d: _SizeData, scope) -> None:
    _, st = _tangle_data(d.size)
    exc = _per_row_formula(d, excess)
    value = st[:, 0] + st[:, 2] + st[:, 3] + st[:, 5] - st[:, 8]
    good = (value == exc) & (exc >= 0)
    _record_bulk(res, good, lambda i: f"{d.size} row {i}: tangle {value[i]} vs excess {exc[i]}")


def _check_bijection(res: CheckResult, d: _SizeData, scope) -> None:
    rows, _ = _tangle_data(d.size)
    keys = d.oriented.keys
    for bd in d.boundaries:
        mine = rows[keys == bd.key()]
        theirs = tangle_rows(bd)
        ok = len(mine) == len(theirs) and sorted(map(bytes, mine)) == sorted(map(bytes, theirs))
        res.record(ok, lambda: f"{d.size} {bd}: {len(mine)} oriented vs {len(theirs)} tangles")
    if scope.roundtrip == "all":
        from .oriented import OrientedHfpl

        for st in d.oriented.states:
            o = OrientedHfpl(d.size, tuple(int(x) for x in st))
            back = from_tangle(to_tangle(o))
            res.record(back == o, lambda: f"{d.size} round trip fails on {o.states}")


def _check_excess0(res: CheckResult, d: _SizeData, scope) -> None:
    st = d.oriented.stats
    exps = d.oriented.exponents
    for bd in d.boundaries:
        if excess(bd) != 0:
            continue
        k = bd.key()
        h = d.h_counts.get(k, 0)
        hv = d.o_counts.get(k, 0)
        puzzles = enumerate_hexagonal(bd)
        lr = _lr(bd)
        rows = d.oriented.rows_for(bd)
        clean = bool(
            np.all(exps[rows] == 0)
            and np.all(st[rows, kern.ST_CCW] + st[rows, kern.ST_CW] == 0)
            and np.all(st[rows, kern.ST_RL_B] + st[rows, kern.ST_RL_T] == 0)
        )
        ok = h == hv == puzzles == lr and clean
        res.record(ok, lambda: f"{d.size} {bd}: h={h} h_vec={hv} puzzles={puzzles} lr={lr} clean={clean}")


def _check_excess1(res: CheckResult, d: _SizeData, scope) -> None:
    for bd in d.boundaries:
        if excess(bd) != 1:
            continue
        k = bd.key()
        h = d.h_counts.get(k, 0)
        hv = d.o_counts.get(k, 0)
        wq = d.weighted.get(k, ZERO)
        f1 = excess1_terms(bd, "oriented").total
        f2 = excess1_terms(bd, "weighted").total
        f3 = excess1_terms(bd, "plain").total
        ok = f1 == LaurentPoly.const(hv) and f2 == wq and f3 == LaurentPoly.const(h)

        def witness() -> str:
            parts = [f"{d.size} {bd}: h_vec={hv} vs (1)={f1}; h_vec(q)={wq} vs (2)={f2}; h={h} vs (3)={f3}"]
            for flavor in ("oriented", "weighted", "plain"):
                parts.append(f"[{flavor}]\n" + excess1_terms(bd, flavor).breakdown())
            return "\n".join(parts)

        res.record(ok, witness)


def _check_matrix_inverses(res: CheckResult, nmax: int) -> None:
    for n in range(nmax + 1):
        for mode in ("bottom", "top"):
            try:
                m = build_matrix(n, mode)
                inv = inverse_matrix(n, mode)
                ok = m.is_unitriangular(lower=(mode == "bottom")) and (m @ inv).is_identity()
            except NotUnitriangular as exc:
                ok = False
                res.record(False, f"M_{mode[0]}({n}) is not unitriangular: {exc}")
                continue
            res.record(ok, f"M_{mode[0]}({n}) fails the inverse check")


def _check_matrices(res: CheckResult, d: _SizeData, scope) -> None:
    """Relation between weighted and restricted counts, and the recovery of
    ordinary counts at q = rho, evaluated for whole (t, b) tables at once."""
    L, nb = d.size.L, d.size.word_lengths()[4]
    mt, mb = build_matrix(L, "top"), build_matrix(nb, "bottom")
    it, ib = inverse_matrix(L, "top"), inverse_matrix(nb, "bottom")
    groups: dict[tuple, list[Boundary]] = {}
    for bd in d.boundaries:
        groups.setdefault((bd.l_T, bd.r_T, bd.r_B, bd.l_B), []).append(bd)

    def table(counts: dict, frame: tuple) -> dict:
        lt, rt, rb, lb = frame
        out = {}
        for t in all_words(L):
            for b in all_words(nb):
                v = counts.get(Boundary(lt, t, rt, rb, b, lb).key())
                if v:
                    out[(t, b)] = v
        return out

    for frame, members in groups.items():
        assembled = apply_matrices(mt, mb, table(d.restricted, frame))
        recovered = apply_matrices(it, ib, table(d.weighted, frame))
        for bd in members:
            k = bd.key()
            lhs = d.weighted.get(k, ZERO)
            rhs = assembled.get((bd.t, bd.b), ZERO)
            rec = eval_at_rho(recovered.get((bd.t, bd.b), ZERO))
            h = d.h_counts.get(k, 0)
            ok = lhs == rhs and rec.is_integer() and rec.a == h
            res.record(ok, lambda: f"{d.size} {bd}: weighted={lhs} assembled={rhs} recovered={rec} h={h}")


def _check_symmetry(res: CheckResult, d: _SizeData, scope) -> None:
    K, L, M, N = d.size.as_tuple()
    targets = []
    for name, fn, size in (
        ("vertical", reflect_vertical, (M, L, K, M + N - K)),
        ("horizontal", reflect_horizontal, (M + N - K, K + L - N, N, M)),
    ):
        try:
            targets.append((name, fn, _size_data(SizeVector(*size))))
        except InvalidSize:
            res.notes.append(f"{name} reflection of {d.size} is not a valid size")
    for bd in d.boundaries:
        hv = d.o_counts.get(bd.key(), 0)
        for name, fn, other in targets:
            image = fn(bd)
            hv2 = other.o_counts.get(image.key(), 0)
            res.record(hv == hv2, lambda: f"{name}: {d.size} {bd} has {hv}, image {image} has {hv2}")


def _check_puzzles(res: CheckResult, d: _SizeData, scope) -> None:
    for bd in d.boundaries:
        hexc = enumerate_hexagonal(bd)
        tri = enumerate_triangular(*hex_embed_triangular(bd))
        res.record(hexc == tri == _lr(bd), lambda: f"{d.size} {bd}: hexagon {hexc} triangle {tri} lr {_lr(bd)}")


_CHECKS = {
    "neccond": _check_neccond,
    "turns": _check_turns,
    "edge_formulas": _check_edge_formulas,
    "intersecting_pairs": _check_intersecting_pairs,
    "excess_identity": _check_excess_identity,
    "bijection": _check_bijection,
    "excess0": _check_excess0,
    "excess1": _check_excess1,
    "matrices": _check_matrices,
    "symmetry": _check_symmetry,
    "puzzles": _check_puzzles,
}
