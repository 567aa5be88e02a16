"""Oriented HFPLs: validity, local boundary, turn statistics and weights."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal

import numpy as np

from . import _kernels as kern
from .boundary import Boundary, bit_offsets, keys_from_bits
from .hfpl import HfplConfig, InvalidConfig, ViolationReport, link_pattern_pair
from .lattice import BOTTOM, LEFT, REGULAR, RIGHT, TOP, HexGrid, SizeVector, Vertex, build_grid
from .linkpatterns import DirectedLinkPattern
from .qring import LaurentPoly, ZERO

TurnChoice = Literal["ul", "ld"]


@dataclass(frozen=True)
class OrientedHfpl:
    """Per-edge states over ``grid.edges``: 0 absent, 1 first->second, 2 second->first."""

    size: SizeVector
    states: tuple[int, ...]

    @property
    def grid(self) -> HexGrid:
        return build_grid(self.size)

    @property
    def base(self) -> HfplConfig:
        return HfplConfig(self.size, tuple(1 if s else 0 for s in self.states))

    @classmethod
    def from_directions(cls, size, arcs: Iterable[tuple[Vertex, Vertex]]) -> "OrientedHfpl":
        size = SizeVector.coerce(size)
        g = build_grid(size)
        states = [0] * len(g.edges)
        for a, b in arcs:
            a, b = tuple(a), tuple(b)
            k = g.edge_index.get((a, b))
            if k is None:
                raise InvalidConfig(f"{a}->{b} is not a grid edge")
            states[k] = 1 if g.vertices[g.edges[k][0]] == a else 2
        return cls(size, tuple(states))

    def directions(self) -> list[tuple[Vertex, Vertex]]:
        g = self.grid
        out = []
        for (u, v), s in zip(g.edges, self.states):
            if s == 1:
                out.append((g.vertices[u], g.vertices[v]))
            elif s == 2:
                out.append((g.vertices[v], g.vertices[u]))
        return out

    def to_json(self) -> dict:
        d = self.base.to_json()
        d["directions"] = [[list(a), list(b)] for a, b in self.directions()]
        return d

    @classmethod
    def from_json(cls, data: dict | str) -> "OrientedHfpl":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_directions(data["size"], [(tuple(a), tuple(b)) for a, b in data["directions"]])

    def as_array(self) -> np.ndarray:
        return np.array([self.states], dtype=np.uint8).reshape(1, len(self.states))


@dataclass(frozen=True)
class TurnStats:
    t_ccw: int
    t_cw: int
    rl_b: int
    rl_t: int
    n_ccw: int
    n_cw: int

    @property
    def identity_holds(self) -> bool:
        return self.t_ccw - self.t_cw == self.rl_b - self.rl_t + self.n_ccw - self.n_cw


class TurnIdentityError(AssertionError):
    pass


def orientation_windows(grid: HexGrid):
    """Per-vertex windows (in_min, in_max, out_min, out_max, tot_min, tot_max)."""
    kind = grid.arrays.kind
    table = {
        REGULAR: (1, 1, 1, 1, 2, 2),
        LEFT: (0, 0, 0, 1, 0, 1),
        RIGHT: (0, 1, 0, 0, 0, 1),
        TOP: (0, 1, 0, 1, 1, 1),
        BOTTOM: (0, 1, 0, 1, 1, 1),
    }
    cols = np.array([table[int(k)] for k in kind], dtype=np.int64).reshape(len(kind), 6)
    return tuple(np.ascontiguousarray(cols[:, i]) for i in range(6))


def _trace(grid: HexGrid, states: np.ndarray):
    a = grid.arrays
    return kern.trace_oriented(
        states,
        a.eu,
        a.ev,
        a.slot_edges,
        a.kind,
        a.fam_id,
        a.fam_pos,
        a.ext_up,
        bit_offsets(grid.size),
        sum(grid.size.word_lengths()),
    )


def validate_oriented(o: OrientedHfpl) -> ViolationReport | None:
    g = o.grid
    a = g.arrays
    if len(o.states) != len(g.edges) or any(s not in (0, 1, 2) for s in o.states):
        return ViolationReport(0, None, "state vector does not match the grid")
    windows = orientation_windows(g)
    for i, v in enumerate(g.vertices):
        din = dout = 0
        for s, k in enumerate(a.slot_edges[i]):
            if k < 0 or o.states[k] == 0:
                continue
            into = (o.states[k] == 1) == (s in (0, 2))
            din += into
            dout += not into
        i_min, i_max, o_min, o_max, t_min, t_max = (int(w[i]) for w in windows)
        kind = int(a.kind[i])
        if not (i_min <= din <= i_max and o_min <= dout <= o_max and t_min <= din + dout <= t_max):
            cond = {REGULAR: 3, LEFT: 1, RIGHT: 1, TOP: 2, BOTTOM: 2}[kind]
            what = {LEFT: "left family edges must leave", RIGHT: "right family edges must enter"}.get(
                kind, "degree or in/out balance is wrong"
            )
            return ViolationReport(cond, v, f"in={din} out={dout}: {what}")
    return None


def _require_valid(o: OrientedHfpl) -> None:
    rep = validate_oriented(o)
    if rep is not None:
        raise InvalidConfig(str(rep))


def boundary_of_oriented(o: OrientedHfpl) -> Boundary:
    _require_valid(o)
    bits, _ = _trace(o.grid, o.as_array())
    return Boundary.from_key(o.size, int(keys_from_bits(bits, o.size)[0]))


def directed_patterns(o: OrientedHfpl) -> tuple[DirectedLinkPattern, DirectedLinkPattern]:
    """(pi_b, pi_t) with roles: bottom sinks where b is 1, top sinks where t is 0."""
    bd = boundary_of_oriented(o)
    pi_b, pi_t = link_pattern_pair(o.base)
    return (
        DirectedLinkPattern(pi_b, tuple(ch == "1" for ch in bd.b)),
        DirectedLinkPattern(pi_t, tuple(ch == "0" for ch in bd.t)),
    )


def turn_balance(o: OrientedHfpl, choice: TurnChoice = "ul", strict: bool = True) -> TurnStats:
    _require_valid(o)
    _, st = _trace(o.grid, o.as_array())
    return _turn_stats(st[0], choice, strict)


def _turn_stats(row: np.ndarray, choice: TurnChoice, strict: bool) -> TurnStats:
    if choice == "ul":
        ccw, cw = row[kern.ST_UL], row[kern.ST_LU]
    elif choice == "ld":
        ccw, cw = row[kern.ST_LD], row[kern.ST_DL]
    else:
        raise ValueError(f"turn choice must be 'ul' or 'ld', got {choice!r}")
    ts = TurnStats(int(ccw), int(cw), int(row[kern.ST_RL_B]), int(row[kern.ST_RL_T]), int(row[kern.ST_CCW]), int(row[kern.ST_CW]))
    if strict and not ts.identity_holds:
        raise TurnIdentityError(f"turn identity fails: {ts}")
    return ts


def weight(o: OrientedHfpl) -> LaurentPoly:
    ts = turn_balance(o, "ul")
    return LaurentPoly.monomial(ts.t_ccw - ts.t_cw)


@dataclass(frozen=True)
class OrientedTable:
    """All oriented configurations of one size with statistics per row."""

    size: SizeVector
    states: np.ndarray
    keys: np.ndarray
    stats: np.ndarray

    @property
    def exponents(self) -> np.ndarray:
        return self.stats[:, kern.ST_UL] - self.stats[:, kern.ST_LU]

    @property
    def restricted(self) -> np.ndarray:
        return (self.stats[:, kern.ST_RL_B] == 0) & (self.stats[:, kern.ST_RL_T] == 0)

    def counts(self) -> dict[int, int]:
        ks, cs = np.unique(self.keys, return_counts=True)
        return {int(k): int(c) for k, c in zip(ks, cs)}

    def weighted(self, restricted: bool = False) -> dict[int, LaurentPoly]:
        mask = self.restricted if restricted else np.ones(len(self.keys), dtype=bool)
        keys = self.keys[mask]
        exps = self.exponents[mask]
        out: dict[int, dict[int, int]] = {}
        if len(keys):
            pairs, cnt = np.unique(np.stack([keys, exps], axis=1), axis=0, return_counts=True)
            for (k, e), c in zip(pairs, cnt):
                out.setdefault(int(k), {})[int(e)] = int(c)
        return {k: LaurentPoly.from_dict(d) for k, d in out.items()}

    def rows_for(self, bd: Boundary) -> np.ndarray:
        return np.nonzero(self.keys == bd.key())[0]


def orientation_states(size) -> np.ndarray:
    grid = build_grid(SizeVector.coerce(size))
    a = grid.arrays
    return kern.enumerate_orientations(a.eu, a.ev, len(grid.vertices), *orientation_windows(grid))


@lru_cache(maxsize=64)
def oriented_table(size) -> OrientedTable:
    size = SizeVector.coerce(size)
    grid = build_grid(size)
    states = orientation_states(size)
    bits, stats = _trace(grid, states)
    return OrientedTable(size, states, keys_from_bits(bits, size), stats)


def enumerate_oriented(size, boundary: Boundary | str | None = None) -> list[OrientedHfpl]:
    size = SizeVector.coerce(size)
    table = oriented_table(size)
    if boundary is None:
        rows = range(len(table.keys))
    else:
        bd = Boundary.coerce(boundary)
        bd.check_size(size)
        rows = table.rows_for(bd)
    return [OrientedHfpl(size, tuple(int(x) for x in table.states[i])) for i in rows]


def count_oriented(size, boundary: Boundary | str) -> int:
    size = SizeVector.coerce(size)
    bd = Boundary.coerce(boundary)
    bd.check_size(size)
    return oriented_table(size).counts().get(bd.key(), 0)


@lru_cache(maxsize=128)
def _weighted_tables(size: SizeVector, restricted: bool) -> dict[int, LaurentPoly]:
    return oriented_table(size).weighted(restricted)


def weighted_count(size, boundary: Boundary | str, restricted: bool = False) -> LaurentPoly:
    """Sum of q^(turn balance) over the class; ``restricted`` keeps only
    configurations without right-to-left bottom or top arches."""
    size = SizeVector.coerce(size)
    bd = Boundary.coerce(boundary)
    bd.check_size(size)
    return _weighted_tables(size, restricted).get(bd.key(), ZERO)
