"""The hexagonal grid graph H^{K,L,M,N} and its boundary vertex families."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

Vertex = tuple[int, int]

FAMILY_NAMES = ("l_T", "t", "r_T", "r_B", "b", "l_B")

# vertex kinds used by the search kernels
REGULAR, LEFT, RIGHT, TOP, BOTTOM = 0, 1, 2, 3, 4
# family ids in sextuple order
F_LT, F_T, F_RT, F_RB, F_B, F_LB = range(6)
FAMILY_KIND = (LEFT, TOP, RIGHT, RIGHT, BOTTOM, LEFT)


class InvalidSize(ValueError):
    pass


class VertexNotInGrid(KeyError):
    pass


@dataclass(frozen=True, order=True)
class SizeVector:
    K: int
    L: int
    M: int
    N: int

    def __post_init__(self):
        if min(self.K, self.L, self.M, self.N) < 0:
            raise InvalidSize(f"negative entry in {self.as_tuple()}")
        if self.K > self.M + self.N or self.N > self.K + self.L:
            raise InvalidSize(f"size {self.as_tuple()} violates K <= M+N or N <= K+L")
        if self.M + self.N == 0 and self.as_tuple() != (0, 0, 0, 0):
            raise InvalidSize(f"size {self.as_tuple()} has an empty grid but nonempty families")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.K, self.L, self.M, self.N)

    @property
    def total(self) -> int:
        return self.K + self.L + self.M + self.N

    def word_lengths(self) -> tuple[int, int, int, int, int, int]:
        K, L, M, N = self.as_tuple()
        return (K, L, M, N, K + L - N, M + N - K)

    def __str__(self) -> str:
        return ",".join(map(str, self.as_tuple()))

    @classmethod
    def parse(cls, text: str) -> "SizeVector":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"size must be K,L,M,N, got {text!r}")
        return cls(*(int(p) for p in parts))

    @classmethod
    def coerce(cls, value) -> "SizeVector":
        if isinstance(value, SizeVector):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(*value)


def contains_vertex(size: SizeVector, x: int, y: int) -> bool:
    K, L, M, N = size.as_tuple()
    return (
        y <= x
        and y <= K - 1
        and y <= -x + 2 * (K + L)
        and y >= -x - 1
        and y >= -M - N + K
        and y >= x - 2 * (M + L) - 1
    )


def is_odd(v: Vertex) -> bool:
    """Chessboard colouring; (0,0) and every vertex with x+y even is odd."""
    return (v[0] + v[1]) % 2 == 0


def valid_sizes(max_total: int) -> list[SizeVector]:
    out = []
    for K in range(max_total + 1):
        for L in range(max_total + 1 - K):
            for M in range(max_total + 1 - K - L):
                for N in range(max_total + 1 - K - L - M):
                    if K <= M + N and N <= K + L and M + N > 0:
                        out.append(SizeVector(K, L, M, N))
    return out


@dataclass(frozen=True)
class HexGrid:
    """Vertices in row-major order (top row first, left to right) plus families.

    Edges are ordered so that each vertex contributes its right edge and then
    its down edge; horizontal edges are stored (left, right), vertical edges
    (upper, lower).
    """

    size: SizeVector
    vertices: tuple[Vertex, ...]
    families: tuple[tuple[Vertex, ...], ...]
    index: dict = field(repr=False, compare=False)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.index

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for i, (x, y) in enumerate(self.vertices):
            r = self.index.get((x + 1, y))
            if r is not None:
                out.append((i, r))
            d = self.index.get((x, y - 1))
            if d is not None:
                out.append((i, d))
        return tuple(out)

    @cached_property
    def edge_index(self) -> dict[tuple[Vertex, Vertex], int]:
        out = {}
        for k, (u, v) in enumerate(self.edges):
            a, b = self.vertices[u], self.vertices[v]
            out[(a, b)] = k
            out[(b, a)] = k
        return out

    @cached_property
    def arrays(self) -> "GridArrays":
        return GridArrays.build(self)

    def parity(self, v: Vertex) -> str:
        if tuple(v) not in self.index:
            raise VertexNotInGrid(v)
        return "odd" if is_odd(v) else "even"

    def family_of(self, v: Vertex) -> tuple[int, int] | None:
        """(family id, 1-based position) of a family vertex, else None."""
        return self.arrays.family_lookup.get(tuple(v))

    @property
    def rows(self) -> range:
        K, _, M, N = self.size.as_tuple()
        return range(K - 1, K - M - N - 1, -1)

    def to_json(self) -> dict:
        return {
            "size": list(self.size.as_tuple()),
            "vertices": [list(v) for v in self.vertices],
            "families": {name: [list(v) for v in fam] for name, fam in zip(FAMILY_NAMES, self.families)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@lru_cache(maxsize=None)
def build_grid(size) -> HexGrid:
    size = SizeVector.coerce(size)
    K, L, M, N = size.as_tuple()
    rows: dict[int, list[Vertex]] = {}
    for y in range(K - 1, K - M - N - 1, -1):
        xs = [x for x in range(y, -y + 2 * (K + L) + 1) if contains_vertex(size, x, y)]
        rows[y] = [(x, y) for x in xs]
    vertices = tuple(v for y in sorted(rows, reverse=True) for v in rows[y])
    index = {v: i for i, v in enumerate(vertices)}
    ys = sorted(rows, reverse=True)  # top to bottom
    top_y, bottom_y = (ys[0], ys[-1]) if ys else (0, 0)

    l_t = tuple(rows[y][0] for y in reversed(ys[:K]))  # left to right = bottom to top
    r_t = tuple(rows[y][-1] for y in ys[:M])  # left to right = top to bottom
    l_b = tuple(rows[y][0] for y in ys[len(ys) - (M + N - K):])  # top to bottom
    r_b = tuple(rows[y][-1] for y in reversed(ys[len(ys) - N:])) if N else ()  # bottom to top
    corner = set(l_t) | set(r_t) | set(l_b) | set(r_b)
    t = tuple(v for v in rows.get(top_y, []) if is_odd(v) and v not in corner) if K + L else ()
    b = tuple(v for v in rows.get(bottom_y, []) if not is_odd(v) and v not in corner) if ys else ()
    # the top row carries T only when it is the row y=K-1; it always is when grid nonempty
    families = (l_t, t, r_t, r_b, b, l_b)
    expected = size.word_lengths()
    got = tuple(len(f) for f in families)
    if got != expected:
        raise AssertionError(f"family sizes {got} != {expected} for {size.as_tuple()}")
    for fam in families:
        xs = [v[0] for v in fam]
        assert xs == sorted(set(xs)), "families must be strictly increasing in x"
    return HexGrid(size, vertices, families, index)


@dataclass(frozen=True)
class GridArrays:
    """Flat numpy views of a grid for the search kernels.

    ``slot_edges[v]`` lists the incident edge ids in the order left, right,
    up, down (``-1`` when absent).  ``ext_up[v]`` is 1 when the vertical
    external edge of a family vertex points up and 0 when it points down.
    """

    eu: np.ndarray
    ev: np.ndarray
    horizontal: np.ndarray
    slot_edges: np.ndarray
    kind: np.ndarray
    fam_id: np.ndarray
    fam_pos: np.ndarray
    ext_up: np.ndarray
    upper_odd: np.ndarray
    family_idx: tuple[np.ndarray, ...]
    family_lookup: dict

    @classmethod
    def build(cls, grid: HexGrid) -> "GridArrays":
        nv = len(grid.vertices)
        edges = grid.edges
        eu = np.array([e[0] for e in edges], dtype=np.int64)
        ev = np.array([e[1] for e in edges], dtype=np.int64)
        horizontal = np.array([grid.vertices[u][1] == grid.vertices[v][1] for u, v in edges], dtype=np.bool_)
        slot = -np.ones((nv, 4), dtype=np.int64)
        for k, (u, v) in enumerate(edges):
            if horizontal[k]:
                slot[u, 1] = k
                slot[v, 0] = k
            else:
                slot[u, 3] = k
                slot[v, 2] = k
        kind = np.zeros(nv, dtype=np.int64)
        fam_id = -np.ones(nv, dtype=np.int64)
        fam_pos = -np.ones(nv, dtype=np.int64)
        ext_up = np.zeros(nv, dtype=np.int64)
        lookup = {}
        for f, fam in enumerate(grid.families):
            for p, vert in enumerate(fam):
                i = grid.index[vert]
                assert fam_id[i] == -1, "families overlap"
                kind[i] = FAMILY_KIND[f]
                fam_id[i] = f
                fam_pos[i] = p
                ext_up[i] = 1 if f in (F_LT, F_T, F_RT) else 0
                lookup[vert] = (f, p + 1)
        upper_odd = np.array([is_odd(grid.vertices[u]) for u in eu], dtype=np.bool_)
        family_idx = tuple(np.array([grid.index[v] for v in fam], dtype=np.int64) for fam in grid.families)
        return cls(eu, ev, horizontal, slot, kind, fam_id, fam_pos, ext_up, upper_odd, family_idx, lookup)
