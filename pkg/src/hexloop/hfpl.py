"""Ordinary fully packed loop configurations on H^{K,L,M,N}."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from . import _kernels as kern
from .boundary import Boundary, bit_offsets, keys_from_bits
from .lattice import BOTTOM, LEFT, REGULAR, RIGHT, TOP, HexGrid, SizeVector, Vertex, build_grid
from .linkpatterns import ExtendedLinkPattern


class InvalidConfig(ValueError):
    pass


@dataclass(frozen=True)
class ViolationReport:
    condition: int
    witness: object
    message: str

    def __str__(self) -> str:
        return f"condition ({self.condition}) violated at {self.witness}: {self.message}"


@dataclass(frozen=True)
class HfplConfig:
    """An edge subset of the grid, stored as a 0/1 mask over ``grid.edges``."""

    size: SizeVector
    mask: tuple[int, ...]

    @property
    def grid(self) -> HexGrid:
        return build_grid(self.size)

    @classmethod
    def from_edges(cls, size, edges: Iterable[tuple[Vertex, Vertex]]) -> "HfplConfig":
        size = SizeVector.coerce(size)
        grid = build_grid(size)
        mask = [0] * len(grid.edges)
        for a, b in edges:
            key = (tuple(a), tuple(b))
            if key not in grid.edge_index:
                raise InvalidConfig(f"{a}-{b} is not a grid edge")
            mask[grid.edge_index[key]] = 1
        return cls(size, tuple(mask))

    def edge_list(self) -> list[tuple[Vertex, Vertex]]:
        g = self.grid
        return [(g.vertices[u], g.vertices[v]) for (u, v), m in zip(g.edges, self.mask) if m]

    def degree(self, v: Vertex) -> int:
        g = self.grid
        return sum(1 for k in g.arrays.slot_edges[g.index[tuple(v)]] if k >= 0 and self.mask[k])

    def to_json(self) -> dict:
        return {"size": list(self.size.as_tuple()), "edges": [[list(a), list(b)] for a, b in self.edge_list()]}

    @classmethod
    def from_json(cls, data: dict | str) -> "HfplConfig":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_edges(data["size"], [(tuple(a), tuple(b)) for a, b in data["edges"]])

    def as_array(self) -> np.ndarray:
        return np.array([self.mask], dtype=np.uint8).reshape(1, len(self.mask))


def degree_windows(grid: HexGrid) -> tuple[np.ndarray, np.ndarray]:
    kind = grid.arrays.kind
    dmin = np.where(kind == REGULAR, 2, np.where((kind == TOP) | (kind == BOTTOM), 1, 0)).astype(np.int64)
    dmax = np.where(kind == REGULAR, 2, 1).astype(np.int64)
    return dmin, dmax


def _trace(grid: HexGrid, confs: np.ndarray):
    a = grid.arrays
    return kern.trace_ordinary(
        confs, a.eu, a.ev, a.slot_edges, a.kind, a.fam_id, a.fam_pos, bit_offsets(grid.size), sum(grid.size.word_lengths())
    )


def validate_hfpl(c: HfplConfig) -> ViolationReport | None:
    """Check the four defining conditions; return the first violation or None."""
    g = c.grid
    if len(c.mask) != len(g.edges):
        return ViolationReport(0, None, "mask length differs from the number of grid edges")
    a = g.arrays
    for i, v in enumerate(g.vertices):
        d = sum(1 for k in a.slot_edges[i] if k >= 0 and c.mask[k])
        kd = a.kind[i]
        if kd in (LEFT, RIGHT) and d > 1:
            return ViolationReport(1, v, f"left/right family vertex has degree {d}")
        if kd in (TOP, BOTTOM) and d != 1:
            return ViolationReport(2, v, f"top/bottom family vertex has degree {d}")
        if kd == REGULAR and d != 2:
            return ViolationReport(3, v, f"inner vertex has degree {d}")
    _, _, bad, partner = _trace(g, c.as_array())
    if bad[0]:
        for i in range(len(g.vertices)):
            p = partner[0, i]
            if p >= 0 and a.kind[i] == a.kind[p] and a.kind[i] in (LEFT, RIGHT):
                return ViolationReport(4, (g.vertices[i], g.vertices[p]), "path joins two vertices of the same side")
    return None


def _require_valid(c: HfplConfig) -> None:
    rep = validate_hfpl(c)
    if rep is not None:
        raise InvalidConfig(str(rep))


def boundary_of(c: HfplConfig) -> Boundary:
    _require_valid(c)
    bits, _, _, _ = _trace(c.grid, c.as_array())
    return Boundary.from_key(c.size, int(keys_from_bits(bits, c.size)[0]))


def loop_count(c: HfplConfig) -> int:
    _require_valid(c)
    _, loops, _, _ = _trace(c.grid, c.as_array())
    return int(loops[0])


def link_pattern_pair(c: HfplConfig) -> tuple[ExtendedLinkPattern, ExtendedLinkPattern]:
    """(pi_b, pi_t): how the bottom and top family vertices are linked."""
    _require_valid(c)
    g = c.grid
    a = g.arrays
    _, _, _, partner = _trace(g, c.as_array())
    partner = partner[0]

    def pattern(idx: np.ndarray, own: int, left_kinds: tuple, right_kinds: tuple) -> ExtendedLinkPattern:
        left, right, arches = [], [], set()
        for pos, v in enumerate(idx, start=1):
            p = partner[v]
            kp = a.kind[p]
            if kp == own:
                q = int(a.fam_pos[p]) + 1
                arches.add((min(pos, q), max(pos, q)))
            elif kp in left_kinds:
                left.append(pos)
            elif kp in right_kinds:
                right.append(pos)
            else:
                raise InvalidConfig(f"unexpected partner kind {kp}")
        return ExtendedLinkPattern(len(idx), tuple(left), tuple(right), tuple(sorted(arches)))

    pi_b = pattern(a.family_idx[4], BOTTOM, (LEFT,), (RIGHT, TOP))
    pi_t = pattern(a.family_idx[1], TOP, (LEFT, BOTTOM), (RIGHT,))
    return pi_b, pi_t


@dataclass(frozen=True)
class OrdinaryTable:
    """All ordinary configurations of one size with per-row statistics."""

    size: SizeVector
    confs: np.ndarray
    keys: np.ndarray
    loops: np.ndarray
    n_rejected: int  # degree-valid subgraphs failing condition (4)

    def counts(self) -> dict[int, int]:
        ks, cs = np.unique(self.keys, return_counts=True)
        return {int(k): int(c) for k, c in zip(ks, cs)}

    def rows_for(self, bd: Boundary) -> np.ndarray:
        return np.nonzero(self.keys == bd.key())[0]


def degree_subgraphs(size) -> np.ndarray:
    grid = build_grid(SizeVector.coerce(size))
    a = grid.arrays
    dmin, dmax = degree_windows(grid)
    return kern.enumerate_degree_subgraphs(a.eu, a.ev, len(grid.vertices), dmin, dmax)


# above this total the direct subgraph search is replaced by projection
DIRECT_MAX_TOTAL = 8


@lru_cache(maxsize=64)
def ordinary_table(size, method: str = "auto") -> OrdinaryTable:
    """All ordinary configurations of a size.

    ``method="direct"`` searches all subgraphs within the degree windows and
    discards those failing condition (4); the number of such subgraphs grows
    quickly.  ``method="projection"`` forgets the orientation of every
    oriented configuration instead: each ordinary configuration has at least
    one orientation, and every oriented configuration satisfies condition (4).
    ``"auto"`` uses the direct search up to total ``DIRECT_MAX_TOTAL``.
    """
    size = SizeVector.coerce(size)
    if method == "auto":
        method = "direct" if size.total <= DIRECT_MAX_TOTAL else "projection"
    grid = build_grid(size)
    if method == "direct":
        confs = degree_subgraphs(size)
    elif method == "projection":
        from .oriented import oriented_table

        states = oriented_table(size).states
        confs = np.unique((states > 0).astype(np.uint8), axis=0).reshape(-1, len(grid.edges))
    else:
        raise ValueError(f"unknown method {method!r}")
    bits, loops, bad, _ = _trace(grid, confs)
    ok = bad == 0
    keys = keys_from_bits(bits, size)
    return OrdinaryTable(size, confs[ok], keys[ok], loops[ok], int((~ok).sum()))


def enumerate_hfpl(size, boundary: Boundary | str | None = None) -> list[HfplConfig]:
    size = SizeVector.coerce(size)
    table = ordinary_table(size)
    if boundary is None:
        rows = range(len(table.keys))
    else:
        bd = Boundary.coerce(boundary)
        bd.check_size(size)
        rows = table.rows_for(bd)
    return [HfplConfig(size, tuple(int(x) for x in table.confs[i])) for i in rows]


def count_hfpl(size, boundary: Boundary | str) -> int:
    size = SizeVector.coerce(size)
    bd = Boundary.coerce(boundary)
    bd.check_size(size)
    return ordinary_table(size).counts().get(bd.key(), 0)


def canonical_orient(c: HfplConfig):
    """Canonical orientation (clockwise loops, left-to-right arches, bottom to top)."""
    from .oriented import OrientedHfpl

    _require_valid(c)
    g = c.grid
    a = g.arrays
    vx = np.array([v[0] for v in g.vertices], dtype=np.int64)
    vy = np.array([v[1] for v in g.vertices], dtype=np.int64)
    st = kern.canonical_orient(c.as_array(), a.eu, a.ev, a.slot_edges, a.kind, a.fam_pos, vx, vy)
    return OrientedHfpl(c.size, tuple(int(x) for x in st[0]))


def canonical_states(size, confs: np.ndarray) -> np.ndarray:
    grid = build_grid(SizeVector.coerce(size))
    a = grid.arrays
    vx = np.array([v[0] for v in grid.vertices], dtype=np.int64)
    vy = np.array([v[1] for v in grid.vertices], dtype=np.int64)
    return kern.canonical_orient(confs, a.eu, a.ev, a.slot_edges, a.kind, a.fam_pos, vx, vy)
