"""Knutson-Tao puzzles on triangles and hexagons, and a Littlewood-Richardson
oracle based on skew tableaux.

Puzzles are encoded with edge labels {0, 1, 2}: a rhombus piece is cut
along its short diagonal into two unit triangles whose common edge gets
label 2, so every unit triangle reads 000, 111 or a rotation of 012
counter-clockwise.  Boundary edges carry labels 0 and 1 only.

Coordinates: the triangle of side ``n`` has vertices ``(a, b)`` with
``a, b >= 0`` and ``a + b <= n`` (``a`` along the bottom side, ``b`` up the
left side).  Edge ``h(a, b)`` joins ``(a, b)-(a+1, b)``, ``l(a, b)`` joins
``(a, b)-(a, b+1)`` and ``r(a, b)`` joins ``(a+1, b)-(a, b+1)``.

Boundary reading: the left side is read bottom to top, the right side top to
bottom and the bottom side left to right.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as kern
from .boundary import Boundary, all_boundaries, balanced
from .lattice import SizeVector
from .words import LengthMismatch, bit_count, sorted_word, to_partition

Partition = tuple[int, ...]


class ShapeError(ValueError):
    pass


# ------------------------------------------------------------------ regions


@dataclass(frozen=True)
class PuzzleRegion:
    """A union of unit triangles of the side-``n`` triangle."""

    n: int
    triangles: np.ndarray  # (nt, 3) edge ids, counter-clockwise
    edge_names: tuple  # edge id -> ("h"|"l"|"r", a, b)
    sides: dict  # side name -> edge ids in reading order

    @property
    def n_edges(self) -> int:
        return len(self.edge_names)

    def boundary_edges(self) -> np.ndarray:
        return np.array([e for ids in self.sides.values() for e in ids], dtype=np.int64)


def _region(n: int, keep, sides: dict) -> PuzzleRegion:
    names: dict = {}

    def eid(name) -> int:
        if name not in names:
            names[name] = len(names)
        return names[name]

    tris = []
    for b in range(n):
        for a in range(n - b):
            if keep("up", a, b):
                tris.append((eid(("h", a, b)), eid(("r", a, b)), eid(("l", a, b))))
            if a + b <= n - 2 and keep("down", a, b):
                tris.append((eid(("l", a + 1, b)), eid(("h", a, b + 1)), eid(("r", a, b))))
    side_ids = {}
    for key, edges in sides.items():
        side_ids[key] = tuple(eid(e) for e in edges)
    ordered = sorted(names, key=names.get)
    arr = np.array(tris, dtype=np.int64).reshape(-1, 3)
    return PuzzleRegion(n, arr, tuple(ordered), side_ids)


@lru_cache(maxsize=None)
def triangle_region(n: int) -> PuzzleRegion:
    sides = {
        "u": [("l", 0, k) for k in range(n)],
        "v": [("r", k, n - 1 - k) for k in range(n)],
        "w": [("h", k, 0) for k in range(n)],
    }
    return _region(n, lambda kind, a, b: True, sides)


@lru_cache(maxsize=None)
def hexagon_region(size) -> PuzzleRegion:
    K, L, M, N = SizeVector.coerce(size).as_tuple()
    n = L + M + N
    P = M + N - K

    def keep(kind: str, a: int, b: int) -> bool:
        lo = a + b if kind == "up" else a + b + 1
        return b < n - L and lo >= P and a < n - N

    sides = {
        "l_T": [("l", 0, P + k) for k in range(K)],
        "t": [("h", k, n - L) for k in range(L)],
        "r_T": [("r", L + k, n - L - k - 1) for k in range(M)],
        "r_B": [("l", n - N, k) for k in range(N)],
        "b": [("h", P + k, 0) for k in range(K + L - N)],
        "l_B": [("r", k, P - k - 1) for k in range(P)],
    }
    return _region(n, keep, sides)


# -------------------------------------------------------------- enumeration


def _solutions(region: PuzzleRegion) -> np.ndarray:
    bnd = region.boundary_edges()
    if region.triangles.shape[0] == 0:
        # a region of zero area is a segment: its edges are free 0/1 labels,
        # shared by the sides running along it
        free = sorted(set(int(e) for e in bnd))
        grid = np.array(list(itertools.product((0, 1), repeat=len(free))), dtype=np.uint8).reshape(2 ** len(free), len(free))
        col = {e: i for i, e in enumerate(free)}
        return grid[:, [col[int(e)] for e in bnd]] if len(bnd) else grid[:, :0]
    allowed = np.full(region.n_edges, 0b111, dtype=np.int64)
    allowed[bnd] = 0b011
    return kern.enumerate_puzzles(region.triangles, region.n_edges, kern.PIECES_CCW, allowed, bnd)


def _side_words(region: PuzzleRegion, rows: np.ndarray) -> list[tuple[str, ...]]:
    out = []
    for row in rows:
        pos = 0
        words = []
        for ids in region.sides.values():
            words.append("".join(str(int(x)) for x in row[pos : pos + len(ids)]))
            pos += len(ids)
        out.append(tuple(words))
    return out


@lru_cache(maxsize=None)
def triangular_table(n: int) -> dict[tuple[str, str, str], int]:
    """Counts of triangular puzzles of side ``n`` keyed by boundary (u, v, w)."""
    region = triangle_region(n)
    table: dict = {}
    for key in _side_words(region, _solutions(region)):
        table[key] = table.get(key, 0) + 1
    return table


@lru_cache(maxsize=None)
def hexagonal_table(size) -> dict[Boundary, int]:
    size = SizeVector.coerce(size)
    region = hexagon_region(size)
    table: dict = {}
    for words in _side_words(region, _solutions(region)):
        bd = Boundary(*words)
        table[bd] = table.get(bd, 0) + 1
    return table


def enumerate_triangular(u: str, v: str, w: str) -> int:
    if not len(u) == len(v) == len(w):
        raise LengthMismatch(f"side words {u!r}, {v!r}, {w!r} differ in length")
    return triangular_table(len(u)).get((u, v, w), 0)


def enumerate_hexagonal(boundary) -> int:
    bd = Boundary.coerce(boundary)
    return hexagonal_table(bd.size).get(bd, 0)


def puzzle_rows(region: PuzzleRegion, boundary_words: dict[str, str]) -> list[dict]:
    """All puzzles with a fixed boundary, each as ``{edge name: label}``."""
    allowed = np.full(region.n_edges, 0b111, dtype=np.int64)
    for side, ids in region.sides.items():
        word = boundary_words[side]
        if len(word) != len(ids):
            raise LengthMismatch(f"side {side} has length {len(ids)}, got {word!r}")
        for e, ch in zip(ids, word):
            allowed[e] = 1 << int(ch)
    every = np.arange(region.n_edges, dtype=np.int64)
    rows = kern.enumerate_puzzles(region.triangles, region.n_edges, kern.PIECES_CCW, allowed, every)
    return [{region.edge_names[e]: int(r[e]) for e in range(region.n_edges)} for r in rows]


# ------------------------------------------------------------ LR coefficients


@dataclass(frozen=True)
class LrInput:
    lam: Partition
    mu: Partition
    nu: Partition
    box: tuple[int, int] | None = None  # (rows, cols)

    def __post_init__(self) -> None:
        for name in ("lam", "mu", "nu"):
            p = tuple(x for x in getattr(self, name) if x > 0)
            if any(x < 0 for x in getattr(self, name)) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
                raise ShapeError(f"{name}={list(getattr(self, name))} is not a partition")
            object.__setattr__(self, name, p)
            if self.box is not None:
                rows, cols = self.box
                if len(p) > rows or (p and p[0] > cols):
                    raise ShapeError(f"{name}={list(p)} does not fit a {rows}x{cols} box")


def lr_oracle(inp: LrInput) -> int:
    """c_{lam,mu}^{nu}: number of LR skew tableaux of shape nu/lam, content mu."""
    lam, mu, nu = inp.lam, inp.mu, inp.nu
    if sum(nu) != sum(lam) + sum(mu) or len(lam) > len(nu):
        return 0
    lam_p = list(lam) + [0] * (len(nu) - len(lam))
    if any(l > m for l, m in zip(lam_p, nu)):
        return 0
    if not mu:
        return 1
    return _lr_count(tuple(lam_p), tuple(nu), tuple(mu))


def _lr_count(lam: tuple, nu: tuple, mu: tuple) -> int:
    """Fill rows top to bottom, each row right to left, so the reading word
    (rows top to bottom, right to left) is produced in order and the lattice
    condition can be checked incrementally."""
    rows = len(nu)
    nlet = len(mu)
    filled = [[0] * nu[r] for r in range(rows)]
    used = [0] * (nlet + 1)
    count = 0

    def place(r: int, c: int) -> None:
        nonlocal count
        if r == rows:
            if all(used[i + 1] == mu[i] for i in range(nlet)):
                count += 1
            return
        if c < lam[r]:
            place(r + 1, nu[r + 1] - 1 if r + 1 < rows else 0)
            return
        for x in range(1, nlet + 1):
            if used[x] >= mu[x - 1]:
                continue
            if x > 1 and used[x] + 1 > used[x - 1]:
                continue
            if c + 1 < nu[r] and filled[r][c + 1] < x:
                continue  # rows weakly increase left to right
            if r > 0 and c < nu[r - 1] and c >= lam[r - 1] and filled[r - 1][c] >= x:
                continue  # columns strictly increase downwards
            filled[r][c] = x
            used[x] += 1
            place(r, c - 1) if c - 1 >= lam[r] else place(r + 1, nu[r + 1] - 1 if r + 1 < rows else 0)
            used[x] -= 1
            filled[r][c] = 0

    start = nu[0] - 1
    if start >= lam[0]:
        place(0, start)
    else:
        place(1, nu[1] - 1 if rows > 1 else 0)
    return count


def lr_of_words(u: str, v: str, w: str) -> int:
    """c_{lambda(u), lambda(v)}^{lambda(w)}; zero unless all three words have
    the same number of ones (the coefficient lives in one Grassmannian)."""
    if not bit_count(u, 1) == bit_count(v, 1) == bit_count(w, 1):
        return 0
    return lr_oracle(LrInput(to_partition(u), to_partition(v), to_partition(w)))


def hex_embed_triangular(boundary) -> tuple[str, str, str]:
    """Triangular boundary obtained by completing the hexagon with its three
    uniquely filled corner triangles."""
    bd = Boundary.coerce(boundary)
    lt, t, rt, rb, b, lb = bd.words
    return (sorted_word(lb) + lt + t, sorted_word(t) + rt + sorted_word(rb), lb + b + rb)


def lr_of_boundary(boundary) -> int:
    return lr_of_words(*hex_embed_triangular(boundary))


def sweep_boundaries(size) -> list[Boundary]:
    return [bd for bd in all_boundaries(size) if balanced(bd)]
