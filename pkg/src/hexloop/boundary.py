"""Boundary sextuples (l_T, t, r_T; r_B, b, l_B) and their integer keys."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .lattice import SizeVector
from .words import Word, all_words, format_word, parse_word


class BoundarySizeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Boundary:
    l_T: Word
    t: Word
    r_T: Word
    r_B: Word
    b: Word
    l_B: Word

    @property
    def words(self) -> tuple[Word, Word, Word, Word, Word, Word]:
        return (self.l_T, self.t, self.r_T, self.r_B, self.b, self.l_B)

    @property
    def size(self) -> SizeVector:
        """The size vector implied by the word lengths."""
        K, L, M, N = len(self.l_T), len(self.t), len(self.r_T), len(self.r_B)
        if (len(self.b), len(self.l_B)) != (K + L - N, M + N - K):
            raise BoundarySizeMismatch(f"word lengths of {self} do not come from a size vector")
        return SizeVector(K, L, M, N)

    def check_size(self, size: SizeVector) -> None:
        if tuple(len(w) for w in self.words) != size.word_lengths():
            raise BoundarySizeMismatch(f"boundary {self} does not match size {size}")

    def bits(self) -> str:
        return "".join(self.words)

    def key(self) -> int:
        s = self.bits()
        return int(s, 2) if s else 0

    @classmethod
    def from_key(cls, size: SizeVector, key: int) -> "Boundary":
        lengths = size.word_lengths()
        total = sum(lengths)
        s = format(int(key), f"0{total}b") if total else ""
        out = []
        pos = 0
        for n in lengths:
            out.append(s[pos:pos + n])
            pos += n
        return cls(*out)

    def __str__(self) -> str:
        w = [format_word(x) for x in self.words]
        return f"{w[0]},{w[1]},{w[2]};{w[3]},{w[4]},{w[5]}"

    @classmethod
    def parse(cls, text: str) -> "Boundary":
        try:
            top, bottom = text.split(";")
            a = top.split(",")
            c = bottom.split(",")
        except ValueError:
            raise ValueError(f"boundary must look like 'l_T,t,r_T;r_B,b,l_B', got {text!r}") from None
        if len(a) != 3 or len(c) != 3:
            raise ValueError(f"boundary must look like 'l_T,t,r_T;r_B,b,l_B', got {text!r}")
        return cls(*(parse_word(x.strip()) for x in a + c))

    @classmethod
    def coerce(cls, value) -> "Boundary":
        if isinstance(value, Boundary):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(*value)


def key_weights(size: SizeVector) -> np.ndarray:
    total = sum(size.word_lengths())
    return np.array([1 << (total - 1 - j) for j in range(total)], dtype=np.int64)


def keys_from_bits(bits: np.ndarray, size: SizeVector) -> np.ndarray:
    if bits.shape[1] == 0:
        return np.zeros(bits.shape[0], dtype=np.int64)
    return bits.astype(np.int64) @ key_weights(size)


def bit_offsets(size: SizeVector) -> np.ndarray:
    return np.concatenate([[0], np.cumsum(size.word_lengths())[:-1]]).astype(np.int64)


def all_boundaries(size) -> Iterator[Boundary]:
    size = SizeVector.coerce(size)
    K, L, M, N, nb, nlb = size.word_lengths()
    for lt in all_words(K):
        for t in all_words(L):
            for rt in all_words(M):
                for rb in all_words(N):
                    for b in all_words(nb):
                        for lb in all_words(nlb):
                            yield Boundary(lt, t, rt, rb, b, lb)


def balanced(bd: Boundary) -> bool:
    """The counting constraints |l_T t|_0 = |b r_B|_0 and |t r_T|_1 = |l_B b|_1."""
    return (bd.l_T + bd.t).count("0") == (bd.r_B + bd.b).count("0") and (bd.t + bd.r_T).count("1") == (
        bd.b + bd.l_B
    ).count("1")
