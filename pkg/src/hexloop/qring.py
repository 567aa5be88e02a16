"""Exact arithmetic in Z[q, q^-1] and Z[rho] (rho^2 = rho - 1), the
feasibility matrices M_b(n), M_t(n) and the recovery of ordinary counts from
weighted oriented counts."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Literal, Mapping

from .linkpatterns import feasible_successors
from .words import Word, all_words, complement, inversions, word_order_key


@dataclass(frozen=True)
class LaurentPoly:
    """Finitely supported map exponent -> nonzero integer coefficient."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((int(e), int(c)) for e, c in d.items() if c)))

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.from_dict({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls.from_dict({e: c})

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __add__(self, other) -> "LaurentPoly":
        other = _lift(other)
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _lift(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = _lift(other)
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only unit monomials have negative powers")
            e, c = self.terms[0]
            return LaurentPoly.monomial(e * k, c ** (-k))
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, q):
        """Evaluate at ``q``; works for ints, Fractions and :class:`CycloInt`."""
        total = 0
        for e, c in self.terms:
            total = total + c * (q ** e)
        return total

    def at_one(self) -> int:
        return sum(c for _, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                s = str(c)
            else:
                mon = "q" if e == 1 else f"q^{e}"
                s = mon if c == 1 else ("-" + mon if c == -1 else f"{c}{mon}")
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += s if s.startswith("-") else "+" + s
        return out

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        s = text.replace(" ", "")
        if s == "0":
            return cls()
        if not s or not re.fullmatch(f"(?:{_TERM})+", s):
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        d: dict[int, int] = {}
        for m in re.finditer(_TERM_GROUPS, s):
            sign, num, qpart, exp = m.groups()
            if not (num or qpart):
                continue
            c = int(num) if num else 1
            if sign == "-":
                c = -c
            e = (int(exp) if exp is not None else 1) if qpart else 0
            d[e] = d.get(e, 0) + c
        return cls.from_dict(d)


_TERM = r"[+-]?(?:\d+(?:q(?:\^-?\d+)?)?|q(?:\^-?\d+)?)"
_TERM_GROUPS = r"([+-]?)(\d*)(q(?:\^(-?\d+))?)?"


def _lift(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


Q = LaurentPoly.monomial(1)
Q_INV = LaurentPoly.monomial(-1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


@dataclass(frozen=True)
class CycloInt:
    """a + b*rho with rho^2 = rho - 1 (rho a primitive sixth root of unity)."""

    a: int = 0
    b: int = 0

    def __add__(self, other) -> "CycloInt":
        o = _cyc(other)
        return CycloInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> "CycloInt":
        return CycloInt(-self.a, -self.b)

    def __sub__(self, other) -> "CycloInt":
        return self + (-_cyc(other))

    def __rsub__(self, other) -> "CycloInt":
        return _cyc(other) - self

    def __mul__(self, other) -> "CycloInt":
        o = _cyc(other)
        return CycloInt(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a + self.b * o.b)

    __rmul__ = __mul__

    def inverse_unit(self) -> "CycloInt":
        """Inverse of a unit (a power of rho up to sign)."""
        for k in range(6):
            cand = RHO_POWERS[k]
            if self * cand == CycloInt(1, 0):
                return cand
            if self * (-cand) == CycloInt(1, 0):
                return -cand
        raise ZeroDivisionError(f"{self} is not a unit of the form +-rho^k")

    def __pow__(self, k: int) -> "CycloInt":
        base = self if k >= 0 else self.inverse_unit()
        out = CycloInt(1, 0)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_integer(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}rho"


def _cyc(x) -> CycloInt:
    if isinstance(x, CycloInt):
        return x
    if isinstance(x, int):
        return CycloInt(x, 0)
    raise TypeError(f"cannot use {type(x).__name__} as a cyclotomic integer")


RHO = CycloInt(0, 1)
RHO_POWERS = []
_p = CycloInt(1, 0)
for _ in range(6):
    RHO_POWERS.append(_p)
    _p = _p * RHO
del _p


def rho_power(e: int) -> CycloInt:
    return RHO_POWERS[e % 6]


def eval_at_rho(p: LaurentPoly) -> CycloInt:
    out = CycloInt(0, 0)
    for e, c in p.terms:
        out = out + c * rho_power(e)
    return out


# ---------------------------------------------------------------- matrices


class CapExceeded(ValueError):
    pass


class NotUnitriangular(ValueError):
    pass


MATRIX_CAP = 10


@dataclass(frozen=True)
class WordMatrix:
    """Sparse matrix indexed by the words of length ``n`` listed in ``order``."""

    n: int
    order: tuple[Word, ...]
    entries: dict = field(hash=False)  # (row, col) -> LaurentPoly, zeros omitted

    def __getitem__(self, rc: tuple[Word, Word]) -> LaurentPoly:
        return self.entries.get(rc, ZERO)

    def row(self, w: Word) -> dict[Word, LaurentPoly]:
        return self._rows.get(w, {})

    def col(self, w: Word) -> dict[Word, LaurentPoly]:
        return self._cols.get(w, {})

    @cached_property
    def _cols(self) -> dict[Word, dict[Word, LaurentPoly]]:
        cols: dict[Word, dict[Word, LaurentPoly]] = {}
        for (r, c), p in self.entries.items():
            cols.setdefault(c, {})[r] = p
        return cols

    @cached_property
    def _rows(self) -> dict[Word, dict[Word, LaurentPoly]]:
        rows: dict[Word, dict[Word, LaurentPoly]] = {}
        for (r, c), p in self.entries.items():
            rows.setdefault(r, {})[c] = p
        return rows

    def is_unitriangular(self, lower: bool) -> bool:
        pos = {w: i for i, w in enumerate(self.order)}
        for w in self.order:
            if self[(w, w)] != ONE:
                return False
        for (r, c), p in self.entries.items():
            if r != c and ((pos[c] > pos[r]) if lower else (pos[c] < pos[r])):
                return False
        return True

    def __matmul__(self, other: "WordMatrix") -> "WordMatrix":
        by_row: dict[Word, list] = {}
        for (r, c), p in other.entries.items():
            by_row.setdefault(r, []).append((c, p))
        out: dict = {}
        for (r, m), p in self.entries.items():
            for c, p2 in by_row.get(m, ()):
                out[(r, c)] = out.get((r, c), ZERO) + p * p2
        return WordMatrix(self.n, self.order, {k: v for k, v in out.items() if v})

    def is_identity(self) -> bool:
        return all((r == c and p == ONE) or (r != c and not p) for (r, c), p in self.entries.items()) and all(
            (w, w) in self.entries for w in self.order
        )

    def dense(self) -> list[list[LaurentPoly]]:
        return [[self[(r, c)] for c in self.order] for r in self.order]

    def to_csv(self) -> str:
        lines = ["," + ",".join(w or "-" for w in self.order)]
        for r in self.order:
            lines.append((r or "-") + "," + ",".join(str(self[(r, c)]) for c in self.order))
        return "\n".join(lines) + "\n"


def matrix_order(n: int, mode: Literal["bottom", "top"] = "bottom") -> tuple[Word, ...]:
    """Row/column order of M_b(n) or M_t(n).

    Bottom: ascending (ones, inversions, lexicographic).  Top: ascending ones,
    then descending inversions, then lexicographic.  Equal-ones successors are
    dominance-smaller in both modes, so the top order has to reverse the
    inversion key to keep M_t upper triangular.
    """
    if mode == "bottom":
        return tuple(sorted(all_words(n), key=word_order_key))
    return tuple(sorted(all_words(n), key=lambda w: (w.count("1"), -inversions(w), w)))


@lru_cache(maxsize=None)
def build_matrix(n: int, mode: Literal["bottom", "top"]) -> WordMatrix:
    """M_b(n) (left-points-fixing, q^g) or M_t(n) (right-points-fixing, q^-g).

    Under :func:`matrix_order` M_b is lower and M_t upper unitriangular.
    """
    if n > MATRIX_CAP:
        raise CapExceeded(f"n={n} exceeds the matrix cap {MATRIX_CAP}")
    order = matrix_order(n, mode)
    entries = {}
    fmode = "left_fixing" if mode == "bottom" else "right_fixing"
    sign = 1 if mode == "bottom" else -1
    for w in order:
        for w2, g in feasible_successors(w, fmode):
            entries[(w, w2)] = LaurentPoly.monomial(sign * g)
    m = WordMatrix(n, order, entries)
    if not m.is_unitriangular(lower=(mode == "bottom")):
        raise NotUnitriangular(f"M_{mode[0]}({n}) is not unitriangular")
    return m


def invert_unitriangular(m: WordMatrix, lower: bool | None = None) -> WordMatrix:
    """Exact inverse by substitution along the matrix order."""
    if lower is None:
        lower = m.is_unitriangular(lower=True)
    if not m.is_unitriangular(lower=lower):
        raise NotUnitriangular("matrix is not unitriangular")
    order = m.order if lower else tuple(reversed(m.order))
    rows: dict[Word, dict[Word, LaurentPoly]] = {w: {} for w in m.order}
    for (r, c), p in m.entries.items():
        if r != c:
            rows[r][c] = p
    inv: dict[Word, dict[Word, LaurentPoly]] = {}
    # row r of the inverse: X[r] = e_r - sum_{c before r} A[r,c] X[c]
    for r in order:
        acc: dict[Word, LaurentPoly] = {r: ONE}
        for c, p in rows[r].items():
            for k, v in inv[c].items():
                acc[k] = acc.get(k, ZERO) - p * v
        inv[r] = {k: v for k, v in acc.items() if v}
    entries = {(r, c): v for r, row in inv.items() for c, v in row.items()}
    return WordMatrix(m.n, m.order, entries)


@lru_cache(maxsize=None)
def inverse_matrix(n: int, mode: Literal["bottom", "top"]) -> WordMatrix:
    return invert_unitriangular(build_matrix(n, mode), lower=(mode == "bottom"))


# ------------------------------------------------------------- recovery

TopIndex = Literal["complement", "literal"]


def _top_word(t: Word, top_index: TopIndex) -> Word:
    return complement(t) if top_index == "complement" else t


def assemble_oriented(
    boundary, restricted_counts: Callable[[object], LaurentPoly], top_index: TopIndex = "complement"
) -> LaurentPoly:
    """Right-hand side of the relation expressing the weighted oriented count
    through restricted counts: sum over feasible (t', b') of
    q^{-g(t,t')} q^{g(b,b')} hbar_{t',b'}(q).

    With ``top_index="complement"`` the top words enter the top matrix as
    their complements (t -> complement(t)), which is how the top source-sink
    word is defined; ``"literal"`` uses t itself.
    """
    from .boundary import Boundary

    bd = Boundary.coerce(boundary)
    mb = build_matrix(len(bd.b), "bottom")
    mt = build_matrix(len(bd.t), "top")
    tw = _top_word(bd.t, top_index)
    total = ZERO
    for tw2, pt in mt.row(tw).items():
        t2 = _top_word(tw2, top_index)
        for b2, pb in mb.row(bd.b).items():
            other = Boundary(bd.l_T, t2, bd.r_T, bd.r_B, b2, bd.l_B)
            total = total + pt * pb * restricted_counts(other)
    return total


def recover_restricted(
    boundary, oriented_counts: Callable[[object], LaurentPoly], top_index: TopIndex = "complement"
) -> LaurentPoly:
    """hbar(q) = sum (M_b^-1)_{b,b'} (M_t^-1)_{t,t'} h_vec_{t',b'}(q)."""
    from .boundary import Boundary

    bd = Boundary.coerce(boundary)
    ib = inverse_matrix(len(bd.b), "bottom")
    it = inverse_matrix(len(bd.t), "top")
    tw = _top_word(bd.t, top_index)
    total = ZERO
    for tw2, pt in it.row(tw).items():
        t2 = _top_word(tw2, top_index)
        for b2, pb in ib.row(bd.b).items():
            other = Boundary(bd.l_T, t2, bd.r_T, bd.r_B, b2, bd.l_B)
            total = total + pt * pb * oriented_counts(other)
    return total


def apply_matrices(
    mt: WordMatrix, mb: WordMatrix, values: Mapping[tuple[Word, Word], LaurentPoly], top_index: TopIndex = "complement"
) -> dict[tuple[Word, Word], LaurentPoly]:
    """All sums sum_{t', b'} mt[t, t'] mb[b, b'] values[t', b'] at once, for a
    table of values indexed by (top word, bottom word); zero entries omitted."""
    half: dict[tuple[Word, Word], LaurentPoly] = {}
    for (t2, b2), v in values.items():
        if not v:
            continue
        for b, p in mb.col(b2).items():
            half[(t2, b)] = half.get((t2, b), ZERO) + p * v
    out: dict[tuple[Word, Word], LaurentPoly] = {}
    for (t2, b), v in half.items():
        if not v:
            continue
        for tw, p in mt.col(_top_word(t2, top_index)).items():
            t = _top_word(tw, top_index)
            out[(t, b)] = out.get((t, b), ZERO) + p * v
    return {k: v for k, v in out.items() if v}


class MissingClass(KeyError):
    pass


class NotInteger(ValueError):
    pass


def recover_h_exact(boundary, oriented_counts, top_index: TopIndex = "complement") -> CycloInt:
    get = _getter(oriented_counts)
    return eval_at_rho(recover_restricted(boundary, get, top_index))


def recover_h(boundary, oriented_counts, top_index: TopIndex = "complement") -> int:
    """Ordinary count recovered from weighted oriented counts at q = rho."""
    val = recover_h_exact(boundary, oriented_counts, top_index)
    if not val.is_integer():
        raise NotInteger(f"recovered value {val} is not an integer")
    return val.a


def _getter(counts) -> Callable[[object], LaurentPoly]:
    if callable(counts):
        return counts

    def get(bd):
        try:
            return counts[bd]
        except KeyError:
            raise MissingClass(str(bd)) from None

    return get
