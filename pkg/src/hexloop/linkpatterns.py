"""Extended link patterns, their directed versions and the statistic g."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Literal

from .words import Word

Mode = Literal["left_fixing", "right_fixing", "any"]


class NotFeasible(ValueError):
    pass


@dataclass(frozen=True)
class ExtendedLinkPattern:
    """Noncrossing partial matching on {1..n} with left and right points.

    Positions are 1-based.  ``arches`` holds pairs (i, j) with i < j, sorted.
    """

    n: int
    left_points: tuple[int, ...]
    right_points: tuple[int, ...]
    arches: tuple[tuple[int, int], ...]

    def __post_init__(self):
        covered = list(self.left_points) + list(self.right_points)
        for i, j in self.arches:
            if not i < j:
                raise ValueError(f"arch ({i},{j}) is not increasing")
            covered += [i, j]
        if sorted(covered) != list(range(1, self.n + 1)):
            raise ValueError("points and arches must partition 1..n")
        if self.left_points and self.right_points and max(self.left_points) > min(self.right_points):
            raise ValueError("left points must precede right points")
        points = set(self.left_points) | set(self.right_points)
        for (a, b), (c, d) in itertools.combinations(self.arches, 2):
            if a < c < b < d or c < a < d < b:
                raise ValueError(f"arches ({a},{b}) and ({c},{d}) cross")
        for i, j in self.arches:
            if any(i < p < j for p in points):
                raise ValueError(f"arch ({i},{j}) encloses a left or right point")

    def partner(self) -> dict[int, int]:
        out = {}
        for i, j in self.arches:
            out[i] = j
            out[j] = i
        return out

    def __str__(self) -> str:
        left = ",".join(map(str, self.left_points))
        right = ",".join(map(str, self.right_points))
        arches = ",".join(f"({i},{j})" for i, j in self.arches)
        return f"L:[{left}] R:[{right}] A:[{arches}]"

    @classmethod
    def parse(cls, text: str) -> "ExtendedLinkPattern":
        m = re.fullmatch(r"\s*L:\[([\d,\s]*)\]\s*R:\[([\d,\s]*)\]\s*A:\[(.*)\]\s*", text)
        if not m:
            raise ValueError(f"cannot parse link pattern {text!r}")

        def ints(s: str) -> tuple[int, ...]:
            return tuple(int(x) for x in s.split(",") if x.strip())

        arches = tuple(sorted((int(a), int(b)) for a, b in re.findall(r"\((\d+),(\d+)\)", m.group(3))))
        left, right = ints(m.group(1)), ints(m.group(2))
        n = len(left) + len(right) + 2 * len(arches)
        return cls(n, left, right, arches)


@dataclass(frozen=True)
class DirectedLinkPattern:
    """An extended link pattern with a source/sink role for every position.

    ``sinks[i-1]`` is True when position i is a sink.
    """

    base: ExtendedLinkPattern
    sinks: tuple[bool, ...]

    def __post_init__(self):
        if len(self.sinks) != self.base.n:
            raise ValueError("one role per position is required")
        for i, j in self.base.arches:
            if self.sinks[i - 1] == self.sinks[j - 1]:
                raise ValueError(f"arch ({i},{j}) must join a source and a sink")

    def source_sink_word(self) -> Word:
        return "".join("1" if s else "0" for s in self.sinks)

    def rl_count(self) -> int:
        return sum(1 for _, j in self.base.arches if not self.sinks[j - 1])

    def is_left_incoming(self) -> bool:
        return all(self.sinks[p - 1] for p in self.base.left_points)

    def is_right_outgoing(self) -> bool:
        return not any(self.sinks[p - 1] for p in self.base.right_points)


def word_of_elp(p: ExtendedLinkPattern) -> Word:
    out = ["?"] * p.n
    for i in p.left_points:
        out[i - 1] = "1"
    for i in p.right_points:
        out[i - 1] = "0"
    for i, j in p.arches:
        out[i - 1] = "0"
        out[j - 1] = "1"
    return "".join(out)


def elp_of_word(w: Word) -> ExtendedLinkPattern:
    """Parenthesis matching with 0 as opener; unmatched 1s and 0s become points."""
    stack: list[int] = []
    left: list[int] = []
    arches: list[tuple[int, int]] = []
    for pos, ch in enumerate(w, start=1):
        if ch == "0":
            stack.append(pos)
        elif stack:
            arches.append((stack.pop(), pos))
        else:
            left.append(pos)
    return ExtendedLinkPattern(len(w), tuple(left), tuple(stack), tuple(sorted(arches)))


def _mode_ok(dp: DirectedLinkPattern, mode: Mode) -> bool:
    if mode == "left_fixing":
        return dp.is_left_incoming()
    if mode == "right_fixing":
        return dp.is_right_outgoing()
    return True


def directed_elp(w: Word, w_shape: Word, mode: Mode = "any") -> DirectedLinkPattern:
    """The directed pattern with shape ``elp_of_word(w_shape)`` and source-sink word ``w``."""
    if len(w) != len(w_shape):
        raise ValueError(f"length mismatch: {w!r} vs {w_shape!r}")
    base = elp_of_word(w_shape)
    sinks = tuple(ch == "1" for ch in w)
    for i, j in base.arches:
        if sinks[i - 1] == sinks[j - 1]:
            raise NotFeasible(f"arch ({i},{j}) would join two {'sinks' if sinks[i - 1] else 'sources'}")
    dp = DirectedLinkPattern(base, sinks)
    if not _mode_ok(dp, mode):
        raise NotFeasible(f"{w_shape!r} is not {mode} feasible for {w!r}")
    return dp


def directed_elp_bruteforce(w: Word, w_shape: Word, mode: Mode = "any") -> list[DirectedLinkPattern]:
    """All role assignments on ``elp_of_word(w_shape)`` reproducing ``w`` (test oracle)."""
    base = elp_of_word(w_shape)
    found = []
    for roles in itertools.product((False, True), repeat=base.n):
        try:
            dp = DirectedLinkPattern(base, roles)
        except ValueError:
            continue
        if dp.source_sink_word() == w and _mode_ok(dp, mode):
            found.append(dp)
    return found


def is_feasible(w: Word, w_shape: Word, mode: Mode) -> bool:
    try:
        directed_elp(w, w_shape, mode)
    except NotFeasible:
        return False
    return True


def g_value(w: Word, w_shape: Word, mode: Mode = "any") -> int:
    return directed_elp(w, w_shape, mode).rl_count()


def feasible_successors(w: Word, mode: Mode) -> list[tuple[Word, int]]:
    """Every shape word feasible for ``w`` under ``mode`` together with its g value."""
    n = len(w)
    out = []
    for k in range(1 << n):
        cand = format(k, f"0{n}b") if n else ""
        try:
            dp = directed_elp(w, cand, mode)
        except NotFeasible:
            continue
        out.append((cand, dp.rl_count()))
    return out
