import itertools

import pytest
from hypothesis import given, strategies as st

from hexloop.words import (
    LengthMismatch,
    OnesCountMismatch,
    ShapeOverflow,
    WordParseError,
    all_words,
    bit_count,
    concat,
    dominance_leq,
    format_partition,
    from_partition,
    inversions,
    is_dyck,
    parse_partition,
    parse_word,
    to_partition,
    transform,
)

words = st.text(alphabet="01", max_size=12)


def brute_inversions(w):
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] == "1" and w[j] == "0")


def contained(p, q):
    q = list(q) + [0] * len(p)
    return all(a <= b for a, b in zip(p, q))


@pytest.mark.parametrize("w,bit,expected", [("", 1, 0), ("1110", 1, 3), ("0100", 0, 3)])
def test_bit_count(w, bit, expected):
    assert bit_count(w, bit) == expected


@pytest.mark.parametrize("w,expected", [("1001010", 7), ("000111", 0), ("110", 2)])
def test_inversions_examples(w, expected):
    assert inversions(w) == expected == brute_inversions(w)


def test_dominance_examples():
    assert dominance_leq("0101", "0110")
    assert dominance_leq("0110", "0110")
    assert not dominance_leq("0110", "0101")


def test_dominance_errors():
    with pytest.raises(LengthMismatch):
        dominance_leq("01", "011")
    with pytest.raises(OnesCountMismatch):
        dominance_leq("01", "11")


def test_partition_examples():
    assert sum(to_partition("1001010")) == 7
    assert to_partition("0011") == ()
    assert from_partition((), 2, 2) == "0011"


def test_from_partition_overflow():
    with pytest.raises(ShapeOverflow):
        from_partition((3,), 2, 2)


def test_transform_examples():
    assert transform("001", "star") == "011"
    assert transform("", "complement") == ""
    assert transform("10", "reverse") == "01"


def test_concat_examples():
    assert concat("01", "10") == "0110"
    assert concat("1", "0") == "10" and inversions("10") == 1
    assert concat("", "0110") == "0110"


def test_is_dyck_examples():
    assert is_dyck("001101000111")
    assert is_dyck("")
    assert not is_dyck("10")


def test_parse_errors_carry_index():
    with pytest.raises(WordParseError) as exc:
        parse_word("01a1")
    assert exc.value.index == 3
    assert parse_word("-") == ""
    assert parse_partition("[3,2,1]") == (3, 2, 1)
    assert format_partition(()) == "[]"


def test_long_words_supported():
    w = "10" * 40
    assert len(w) == 80 and inversions(w) == brute_inversions(w)


def test_partition_roundtrip_exhaustive():
    for n in range(15):
        for w in all_words(n):
            p = to_partition(w)
            assert sum(p) == inversions(w)
            assert from_partition(p, w.count("0"), w.count("1")) == w


def test_dominance_is_containment_exhaustive():
    for n in range(11):
        by_ones = {}
        for w in all_words(n):
            by_ones.setdefault(w.count("1"), []).append(w)
        for group in by_ones.values():
            for a in group:
                for b in group:
                    assert dominance_leq(a, b) == contained(to_partition(a), to_partition(b))


def test_concat_inversion_identity_exhaustive():
    pool = [w for n in range(7) for w in all_words(n)]
    for a in pool:
        for b in pool:
            assert inversions(a + b) == inversions(a) + inversions(b) + a.count("1") * b.count("0")


@given(words)
def test_star_is_involution(w):
    assert transform(transform(w, "star"), "star") == w
    for kind in ("reverse", "complement", "star"):
        assert len(transform(w, kind)) == len(w)
