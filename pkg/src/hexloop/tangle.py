"""Blue-red path tangles and their correspondence with oriented HFPLs.

Points are stored with doubled x-coordinates: a point (x, y) with x a
half-integer is kept as ``(2x, y)``, so all coordinates are integers.

A tangle is also encoded per grid edge ("tangle row"): on a horizontal edge
1 marks a path vertex at its midpoint (blue if the left endpoint is odd, red
otherwise) and 2 additionally a horizontal step of the other colour through
it; on a vertical edge 1 marks a blue and 2 a red diagonal step crossing it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels as kern
from .boundary import Boundary, balanced
from .hfpl import InvalidConfig, ViolationReport
from .lattice import HexGrid, SizeVector, build_grid, is_odd
from .oriented import OrientedHfpl, boundary_of_oriented, oriented_table, validate_oriented
from .words import inversions

Point = tuple[int, int]  # (2x, y)

BLUE_STEPS = ((-2, 1), (-2, -1), (-4, 0))
RED_STEPS = ((2, 1), (2, -1), (4, 0))

# tangle state as a function of (edge class, orientation state); classes are
# 0 horizontal, 1 vertical with odd upper end, 2 vertical with even upper end
TANGLE_OF_STATE = np.array([[1, 0, 2], [0, 1, 2], [0, 2, 1]], dtype=np.uint8)
STATE_OF_TANGLE = np.array([[1, 0, 2], [0, 1, 2], [0, 2, 1]], dtype=np.uint8)
for _c in range(3):
    for _s in range(3):
        STATE_OF_TANGLE[_c, TANGLE_OF_STATE[_c, _s]] = _s
del _c, _s


class CountMismatch(ValueError):
    pass


class InvalidTangle(ValueError):
    pass


@dataclass(frozen=True)
class TangleEndpoints:
    D: tuple[Point, ...]
    E: tuple[Point, ...]
    D2: tuple[Point, ...]  # red starts
    E2: tuple[Point, ...]  # red ends
    ymin: int
    ymax: int


def _zeros(w: str) -> list[int]:
    return [i for i, ch in enumerate(w, start=1) if ch == "0"]


def _ones(w: str) -> list[int]:
    return [i for i, ch in enumerate(w, start=1) if ch == "1"]


def endpoints(boundary) -> TangleEndpoints:
    bd = Boundary.coerce(boundary)
    if not balanced(bd):
        raise CountMismatch(f"boundary {bd} violates the counting constraints")
    K, L, M, N = bd.size.as_tuple()
    lt, t, rt, rb, b, lb = bd.words
    D = []
    for k, i in enumerate(_zeros(b + rb), start=1):
        if k <= b.count("0"):
            D.append((2 * (M + N - K) - 3 + 4 * i, -M - N + K))
        else:
            D.append((2 * (M + L) - 1 + 2 * i, -M - L - 1 + i))
    E = []
    for k, j in enumerate(_zeros(lt + t), start=1):
        if k <= lt.count("0"):
            E.append((2 * j - 1, j - 1))
        else:
            E.append((4 * j - 2 * K - 1, K - 1))
    D2 = []
    for k, i in enumerate(_ones(lb + b), start=1):
        if k <= lb.count("1"):
            D2.append((2 * i - 1, -i))
        else:
            D2.append((4 * i - 2 * (M + N - K) - 1, -M - N + K))
    E2 = []
    for k, j in enumerate(_ones(t + rt), start=1):
        if k <= t.count("1"):
            E2.append((2 * K + 4 * j - 3, K - 1))
        else:
            E2.append((2 * (K + L) + 2 * j - 1, K + L - j))
    return TangleEndpoints(tuple(D), tuple(E), tuple(D2), tuple(E2), K - M - N, K - 1)


@dataclass(frozen=True)
class PathTangle:
    size: SizeVector
    blue: tuple[tuple[Point, ...], ...]
    red: tuple[tuple[Point, ...], ...]

    def to_json(self) -> dict:
        def fmt(p: Point) -> list:
            return [f"x={p[0]}/2", p[1]]

        return {
            "size": list(self.size.as_tuple()),
            "blue": [[fmt(p) for p in path] for path in self.blue],
            "red": [[fmt(p) for p in path] for path in self.red],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "PathTangle":
        if isinstance(data, str):
            data = json.loads(data)

        def parse(p) -> Point:
            x = Fraction(p[0][2:]) if isinstance(p[0], str) else Fraction(p[0])
            return (int(2 * x), int(p[1]))

        return cls(
            SizeVector(*data["size"]),
            tuple(tuple(parse(p) for p in path) for path in data["blue"]),
            tuple(tuple(parse(p) for p in path) for path in data["red"]),
        )


# ------------------------------------------------------------ validation


def _steps(path) -> list[tuple[int, int]]:
    return [(b[0] - a[0], b[1] - a[1]) for a, b in zip(path, path[1:])]


def validate_tangle(pt: PathTangle, ep: TangleEndpoints) -> ViolationReport | None:
    fams = (("blue", pt.blue, ep.D, ep.E, BLUE_STEPS), ("red", pt.red, ep.D2, ep.E2, RED_STEPS))
    points = {}
    diag_centres = {}
    for name, fam, starts, ends, allowed in fams:
        if len(fam) != len(starts):
            return ViolationReport(0, name, f"expected {len(starts)} {name} paths, got {len(fam)}")
        seen: set[Point] = set()
        centres: set[tuple[int, int]] = set()
        for k, path in enumerate(fam):
            if not path or path[0] != starts[k] or path[-1] != ends[k]:
                return ViolationReport(0, (name, k + 1), "path does not join its prescribed endpoints")
            for p in path:
                if not ep.ymin <= p[1] <= ep.ymax:
                    return ViolationReport(0, (name, k + 1, p), "path leaves the strip")
                if p in seen:
                    return ViolationReport(0, (name, p), "two paths of one colour share a vertex")
                seen.add(p)
            for a, s in zip(path, _steps(path)):
                if s not in allowed:
                    return ViolationReport(0, (name, k + 1, a), f"illegal step {s}")
                if s[1] != 0:
                    centres.add((2 * a[0] + s[0], 2 * a[1] + s[1]))
        points[name] = seen
        diag_centres[name] = centres
    if diag_centres["blue"] & diag_centres["red"]:
        c = min(diag_centres["blue"] & diag_centres["red"])
        return ViolationReport(1, c, "a red diagonal step crosses a blue one")
    for name, fam, other in (("blue", pt.blue, "red"), ("red", pt.red, "blue")):
        for path in fam:
            for a, s in zip(path, _steps(path)):
                if s[1] == 0:
                    mid = (a[0] + s[0] // 2, a[1])
                    if mid not in points[other]:
                        return ViolationReport(2, mid, f"{name} horizontal step over an unused {other} point")
    return None


# ------------------------------------------------------------- encodings


@dataclass(frozen=True)
class TangleGeometry:
    """Grid-dependent lookup data shared by the encoders and the kernel."""

    edge_class: np.ndarray  # 0 horizontal, 1 vertical odd upper, 2 vertical even upper
    left_odd: np.ndarray
    lookup: np.ndarray  # [X - x0, Y - ymin] -> edge id
    x0: int
    ymin: int
    point_of_edge: tuple  # horizontal edge id -> doubled midpoint, vertical id -> (2x, lower y)

    def edge_at(self, X: int, Y: int) -> int:
        i, j = X - self.x0, Y - self.ymin
        if 0 <= i < self.lookup.shape[0] and 0 <= j < self.lookup.shape[1]:
            return int(self.lookup[i, j])
        return -1


@lru_cache(maxsize=None)
def geometry(size) -> TangleGeometry:
    size = SizeVector.coerce(size)
    g = build_grid(size)
    K, _, M, N = size.as_tuple()
    ymin, ymax = K - M - N, K - 1
    xs = [v[0] for v in g.vertices] or [0]
    x0 = 2 * (min(xs) - 3)
    width = 2 * (max(xs) + 3) - x0 + 1
    lookup = -np.ones((width, max(ymax - ymin + 1, 1)), dtype=np.int64)
    cls = np.zeros(len(g.edges), dtype=np.int64)
    left_odd = np.zeros(len(g.edges), dtype=np.bool_)
    pts = []
    for k, (u, v) in enumerate(g.edges):
        a, b = g.vertices[u], g.vertices[v]
        if a[1] == b[1]:
            X, Y = a[0] + b[0], a[1]
            left_odd[k] = is_odd(a)
        else:
            X, Y = 2 * a[0], b[1]
            cls[k] = 1 if is_odd(a) else 2
        lookup[X - x0, Y - ymin] = k
        pts.append((X, Y))
    return TangleGeometry(cls, left_odd, lookup, x0, ymin, tuple(pts))


def tangle_rows_from_states(size, states: np.ndarray) -> np.ndarray:
    geo = geometry(size)
    return TANGLE_OF_STATE[geo.edge_class[None, :], states]


def states_from_tangle_rows(size, rows: np.ndarray) -> np.ndarray:
    geo = geometry(size)
    return STATE_OF_TANGLE[geo.edge_class[None, :], rows]


def rows_from_paths(pt: PathTangle) -> np.ndarray:
    """Geometric encoding of a tangle as a tangle row."""
    geo = geometry(pt.size)
    row = np.zeros(len(geo.edge_class), dtype=np.uint8)
    mids = []
    for color, fam in ((1, pt.blue), (2, pt.red)):
        for path in fam:
            for p in path:
                k = geo.edge_at(*p)
                if k < 0 or geo.edge_class[k] != 0:
                    raise InvalidTangle(f"point {p} is not an edge midpoint of the grid")
                row[k] = 1
            for a, s in zip(path, _steps(path)):
                if s[1] != 0:
                    k = geo.edge_at(a[0] + s[0] // 2, min(a[1], a[1] + s[1]))
                    if k < 0:
                        raise InvalidTangle(f"step from {a} leaves the grid")
                    row[k] = color
                else:
                    mids.append((a[0] + s[0] // 2, a[1]))
    for m in mids:
        k = geo.edge_at(*m)
        if k < 0:
            raise InvalidTangle(f"horizontal step over {m} leaves the grid")
        row[k] = 2
    return row


def paths_from_row(size, row: np.ndarray, ep: TangleEndpoints) -> PathTangle:
    """Decode a tangle row, following each path from its start point."""
    size = SizeVector.coerce(size)
    geo = geometry(size)
    g = build_grid(size)

    def state_at(X: int, Y: int) -> int:
        k = geo.edge_at(X, Y)
        return int(row[k]) if k >= 0 else 0

    def follow(start: Point, blue: bool) -> tuple[Point, ...]:
        path = [start]
        own = 1 if blue else 2
        sign = -1 if blue else 1
        while True:
            X, Y = path[-1]
            nxt = None
            for dy in (1, -1):
                if state_at(X + sign, min(Y, Y + dy)) == own:
                    nxt = (X + 2 * sign, Y + dy)
            if nxt is None and state_at(X + 2 * sign, Y) == 2:
                nxt = (X + 4 * sign, Y)
            if nxt is None:
                return tuple(path)
            path.append(nxt)

    blue = tuple(follow(p, True) for p in ep.D)
    red = tuple(follow(p, False) for p in ep.D2)
    return PathTangle(size, blue, red)


def to_tangle(o: OrientedHfpl) -> PathTangle:
    rep = validate_oriented(o)
    if rep is not None:
        raise InvalidConfig(str(rep))
    bd = boundary_of_oriented(o)
    row = tangle_rows_from_states(o.size, o.as_array())[0]
    return paths_from_row(o.size, row, endpoints(bd))


def from_tangle(pt: PathTangle) -> OrientedHfpl:
    row = rows_from_paths(pt)
    st = states_from_tangle_rows(pt.size, row[None, :])[0]
    o = OrientedHfpl(pt.size, tuple(int(x) for x in st))
    rep = validate_oriented(o)
    if rep is not None:
        raise InvalidTangle(f"tangle does not come from an oriented HFPL: {rep}")
    return o


# ------------------------------------------------------------ enumeration


def tangle_rows(boundary) -> np.ndarray:
    """All tangles of a boundary as tangle rows (independent DFS over paths)."""
    bd = Boundary.coerce(boundary)
    size = bd.size
    ep = endpoints(bd)
    geo = geometry(size)
    pts = list(ep.D) + list(ep.D2)
    ends = list(ep.E) + list(ep.E2)
    color = np.array([0] * len(ep.D) + [1] * len(ep.D2), dtype=np.int64)
    px0 = np.array([p[0] for p in pts], dtype=np.int64)
    py0 = np.array([p[1] for p in pts], dtype=np.int64)
    px1 = np.array([p[0] for p in ends], dtype=np.int64)
    py1 = np.array([p[1] for p in ends], dtype=np.int64)
    rows, err = kern.enumerate_tangle_states(
        px0, py0, px1, py1, color, ep.ymin, ep.ymax, geo.lookup, geo.x0, len(geo.edge_class)
    )
    if err:
        raise InvalidTangle(f"a path of boundary {bd} left the grid")
    return rows


def enumerate_tangles(boundary) -> list[PathTangle]:
    bd = Boundary.coerce(boundary)
    ep = endpoints(bd)
    return [paths_from_row(bd.size, r, ep) for r in tangle_rows(bd)]


# ------------------------------------------------------------- statistics

STAT_NAMES = (
    "blue_down",
    "blue_up",
    "blue_horiz",
    "red_down",
    "red_up",
    "red_horiz",
    "n_blue",
    "n_red",
    "intersecting_pairs",
)


def tangle_statistics(size, rows: np.ndarray) -> np.ndarray:
    """Columns as in :data:`STAT_NAMES`."""
    g = build_grid(SizeVector.coerce(size))
    a = g.arrays
    geo = geometry(size)
    return kern.tangle_statistics(rows, a.eu, a.ev, a.slot_edges, a.upper_odd, a.horizontal, geo.left_odd)


def step_counts(pt: PathTangle) -> dict[str, int]:
    out = dict.fromkeys(("blue_down", "blue_horiz", "red_down", "red_horiz", "blue_up", "red_up"), 0)
    for color, fam in (("blue", pt.blue), ("red", pt.red)):
        for path in fam:
            for dx, dy in _steps(path):
                key = "horiz" if dy == 0 else ("down" if dy < 0 else "up")
                out[f"{color}_{key}"] += 1
    return out


def intersecting_pairs(pt: PathTangle) -> int:
    """Pairs (blue path, red path) sharing at least one point (geometrically)."""
    count = 0
    for bp in pt.blue:
        bsegs = _segments(bp)
        for rp in pt.red:
            rsegs = _segments(rp)
            if any(_segments_meet(s, r) for s in bsegs for r in rsegs):
                count += 1
    return count


def _segments(path) -> list[tuple[Point, Point]]:
    if len(path) == 1:
        return [(path[0], path[0])]
    return list(zip(path, path[1:]))


def _segments_meet(s, r) -> bool:
    """Exact intersection test for two closed segments (doubled x is fine:
    scaling one axis preserves incidence)."""
    (p1, p2), (p3, p4) = s, r

    def orient(a, b, c) -> int:
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    def on_seg(a, b, c) -> bool:
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    o1, o2, o3, o4 = orient(p1, p2, p3), orient(p1, p2, p4), orient(p3, p4, p1), orient(p3, p4, p2)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and on_seg(p1, p2, p3):
        return True
    if o2 == 0 and on_seg(p1, p2, p4):
        return True
    if o3 == 0 and on_seg(p3, p4, p1):
        return True
    if o4 == 0 and on_seg(p3, p4, p2):
        return True
    return False


def excess_via_tangle(pt: PathTangle) -> int:
    c = step_counts(pt)
    return c["blue_down"] + c["blue_horiz"] + c["red_down"] + c["red_horiz"] - intersecting_pairs(pt)


def blue_steps_formula(bd: Boundary) -> int:
    lt, t, rt, rb, b, lb = bd.words
    return inversions(rb) + inversions(b) + rb.count("0") * b.count("1") - inversions(lt) - inversions(t) - lt.count(
        "1"
    ) * t.count("0")


def red_steps_formula(bd: Boundary) -> int:
    lt, t, rt, rb, b, lb = bd.words
    return inversions(b) + inversions(lb) + b.count("0") * lb.count("1") - inversions(t) - inversions(rt) - t.count(
        "1"
    ) * rt.count("0")


def intersecting_pairs_formula(bd: Boundary) -> int:
    lt, t, rt, rb, b, lb = bd.words
    return inversions(b) - inversions(t) + b.count("0") * lb.count("1") + rb.count("0") * (b.count("1") + lb.count("1"))


def oriented_tangle_rows(size) -> np.ndarray:
    """Images of all oriented HFPLs of a size under the edge rule table."""
    return tangle_rows_from_states(size, oriented_table(size).states)
