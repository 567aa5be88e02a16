"""Binary words and their statistics.

Words are plain ``str`` objects over the alphabet ``{"0", "1"}``.  The
leftmost character is position 1.  The empty word is ``""``.
"""
from __future__ import annotations

from typing import Iterator, Literal, Sequence

Word = str
Partition = tuple[int, ...]


class WordParseError(ValueError):
    """Raised when a string is not a 0/1 word; ``index`` is 1-based."""

    def __init__(self, text: str, index: int):
        super().__init__(f"invalid symbol {text[index - 1]!r} at position {index} in {text!r}")
        self.text = text
        self.index = index


class LengthMismatch(ValueError):
    pass


class OnesCountMismatch(ValueError):
    pass


class ShapeOverflow(ValueError):
    pass


def parse_word(text: str) -> Word:
    """Validate ``text`` as a word.  ``"-"`` and ``"ε"`` denote the empty word."""
    if text in ("-", "ε"):
        return ""
    for i, ch in enumerate(text):
        if ch not in "01":
            raise WordParseError(text, i + 1)
    return text


def format_word(w: Word) -> str:
    return w if w else "-"


def bit_count(w: Word, bit: int | str) -> int:
    return w.count(str(bit))


def inversions(w: Word) -> int:
    """Number of pairs i<j with w_i = 1 and w_j = 0."""
    ones = 0
    total = 0
    for ch in w:
        if ch == "1":
            ones += 1
        else:
            total += ones
    return total


def dominance_leq(w: Word, s: Word) -> bool:
    """Prefix-wise comparison of ones counts (the dominance order)."""
    if len(w) != len(s):
        raise LengthMismatch(f"{w!r} and {s!r} differ in length")
    if w.count("1") != s.count("1"):
        raise OnesCountMismatch(f"{w!r} and {s!r} differ in number of ones")
    pw = ps = 0
    for a, b in zip(w, s):
        pw += a == "1"
        ps += b == "1"
        if pw > ps:
            return False
    return True


def to_partition(w: Word) -> Partition:
    """Young diagram of ``w``: one row per 0, its length is the number of 1s before it."""
    parts = []
    ones = 0
    for ch in w:
        if ch == "1":
            ones += 1
        else:
            parts.append(ones)
    return tuple(p for p in reversed(parts) if p > 0)


def from_partition(p: Sequence[int], zeros: int, ones: int) -> Word:
    """Inverse of :func:`to_partition` for words with the given letter counts."""
    parts = [x for x in p if x > 0]
    if len(parts) > zeros or (parts and parts[0] > ones):
        raise ShapeOverflow(f"partition {list(p)} does not fit a {zeros}x{ones} box")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"{list(p)} is not weakly decreasing")
    padded = parts + [0] * (zeros - len(parts))
    # the k-th zero from the left has padded[zeros-k] ones before it
    out = []
    placed = 0
    for k in range(zeros):
        before = padded[zeros - 1 - k]
        out.append("1" * (before - placed))
        out.append("0")
        placed = before
    out.append("1" * (ones - placed))
    return "".join(out)


def parse_partition(text: str) -> Partition:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"partition must look like [3,2,1], got {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return ()
    parts = tuple(int(x) for x in inner.split(","))
    if any(x < 0 for x in parts) or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"{text!r} is not a partition")
    return tuple(x for x in parts if x > 0)


def format_partition(p: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in p if x > 0) + "]"


def reverse(w: Word) -> Word:
    return w[::-1]


def complement(w: Word) -> Word:
    return w.translate(_FLIP)


def star(w: Word) -> Word:
    return complement(reverse(w))


_FLIP = str.maketrans("01", "10")


def transform(w: Word, kind: Literal["reverse", "complement", "star"]) -> Word:
    if kind == "reverse":
        return reverse(w)
    if kind == "complement":
        return complement(w)
    if kind == "star":
        return star(w)
    raise ValueError(f"unknown transform {kind!r}")


def concat(*parts: Word) -> Word:
    return "".join(parts)


def sorted_word(w: Word) -> Word:
    """0^{|w|_0} 1^{|w|_1}."""
    return "0" * w.count("0") + "1" * w.count("1")


def is_dyck(w: Word) -> bool:
    height = 0
    for ch in w:
        height += 1 if ch == "0" else -1
        if height < 0:
            return False
    return height == 0


def all_words(n: int) -> Iterator[Word]:
    """All words of length ``n`` in lexicographic order."""
    for k in range(1 << n):
        yield format(k, f"0{n}b") if n else ""


def word_order_key(w: Word) -> tuple[int, int, str]:
    """Ascending (ones, inversions, lexicographic); extends the dominance order."""
    return (w.count("1"), inversions(w), w)
