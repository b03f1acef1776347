import pytest
from hypothesis import given
from hypothesis import strategies as st

from colpart.core import (
    AAB_TABLE,
    COLORS,
    MAX_SIZE,
    PRIMARY,
    RELAXED_TABLE,
    SECONDARY,
    TEN_COLORS,
    ColoredPart,
    MalformedIntegerError,
    NonPositiveSizeError,
    UnknownColorError,
    alpha,
    beta,
    chi,
    color_rank,
    combine,
    delta,
    format_part,
    format_parts,
    gg,
    halves,
    lex_gt,
    parse_part,
    parse_parts,
    tri_gt,
)

P = ColoredPart

secondaries = st.builds(P, st.integers(2, 200), st.sampled_from(SECONDARY))
ranked_parts = st.one_of(
    st.builds(P, st.integers(1, 60), st.sampled_from(PRIMARY)),
    st.builds(P, st.integers(2, 60), st.sampled_from(SECONDARY)),
)


def test_color_counts():
    assert len(PRIMARY) == 4 and len(SECONDARY) == 6 and len(COLORS) == 11
    for s in SECONDARY:
        p, q = s
        assert p in PRIMARY and q in PRIMARY and p < q


@pytest.mark.parametrize("color,rank", [("ab", 0), ("a", 3), ("d", 9), ("cd", 7), ("bc", 4)])
def test_color_rank(color, rank):
    assert color_rank(color) == rank


def test_quaternary_has_no_rank():
    with pytest.raises(ValueError, match="quaternary color has no rank"):
        color_rank("abcd")


def test_equal_size_chain():
    # size-1 secondaries are not constructible parts, but the relations take raw pairs
    ones = [(1, c) for c in ("ab", "ac", "ad", "a", "bc", "bd", "b", "cd", "c", "d")]
    for lo, hi in zip(ones, ones[1:]):
        assert lex_gt(hi, lo) and not lex_gt(lo, hi)
    assert TEN_COLORS == tuple(c for _, c in ones)


@pytest.mark.parametrize("x,y,expected", [
    ("1_ac", "1_ab", True), ("1_ab", "1_ab", False), ("2_ab", "1_d", True),
])
def test_lex_gt_examples(x, y, expected):
    def raw(t):
        k, c = t.split("_")
        return int(k), c

    assert lex_gt(raw(x), raw(y)) is expected


@pytest.mark.parametrize("x,y,expected", [
    ("4_a", "2_bc", True), ("3_a", "2_bc", False), ("2_cd", "2_ab", False),
])
def test_tri_gt_examples(x, y, expected):
    assert tri_gt(parse_part(x), parse_part(y)) is expected


@pytest.mark.parametrize("x,y,expected", [
    ("2_cd", "2_ab", True), ("3_ad", "2_bc", True), ("2_ad", "2_bc", False),
])
def test_gg_examples(x, y, expected):
    assert gg(parse_part(x), parse_part(y)) is expected


@pytest.mark.parametrize("fn", [lex_gt, tri_gt, gg])
def test_relations_reject_quaternary(fn):
    with pytest.raises(ValueError):
        fn(P(5, "abcd"), P(1, "a"))


@pytest.mark.parametrize("p,q,table,value", [
    ("cd", "ab", "relaxed", 0), ("ad", "bc", "relaxed", 1), ("ab", "d", "AAB", 2),
    ("cd", "ab", "AAB", 1), ("ad", "bc", "AAB", 2),
])
def test_delta_examples(p, q, table, value):
    assert delta(p, q, table) == value


def test_tables_differ_exactly_at_relaxed_pairs():
    diff = {k for k in AAB_TABLE if AAB_TABLE[k] != RELAXED_TABLE[k]}
    assert diff == {("cd", "ab"), ("ad", "bc")}
    assert all(AAB_TABLE[k] - RELAXED_TABLE[k] == 1 for k in diff)


@pytest.mark.parametrize("table,rel", [("AAB", tri_gt), ("relaxed", gg)])
def test_tables_match_formulas(table, rel):
    # hard-coded table against the chi formula, all 100 color pairs, differences -3..3
    for p in TEN_COLORS:
        for q in TEN_COLORS:
            for d in range(-3, 4):
                x, y = P(10 + d, p), P(10, q)
                assert rel(x, y) == (d >= delta(p, q, table)), (p, q, d)


def test_chi_is_integer():
    assert chi(True) == 1 and chi(False) == 0 and isinstance(chi(True), int)


@pytest.mark.parametrize("part,a,b", [("8_cd", "4_d", "4_c"), ("9_cd", "5_c", "4_d"), ("2_ab", "1_b", "1_a")])
def test_halves_examples(part, a, b):
    s = parse_part(part)
    assert (str(alpha(s)), str(beta(s))) == (a, b)


@pytest.mark.parametrize("bad", [P(3, "a"), P(8, "abcd")])
def test_halves_reject_non_secondary(bad):
    with pytest.raises(ValueError):
        halves(bad)


def test_secondary_of_size_one_is_unconstructible():
    with pytest.raises(ValueError):
        P(1, "ab")


@given(secondaries)
def test_halves_shift_relations(s):
    nxt = s + 1
    assert alpha(nxt) == beta(s) + 1
    assert beta(nxt) == alpha(s)


@given(secondaries)
def test_halves_recombine(s):
    a, b = halves(s)
    assert lex_gt(a, b)
    assert a.size + b.size == s.size
    assert "".join(sorted(a.color + b.color)) == s.color
    assert combine(a, b) == s


@pytest.mark.parametrize("x,y,out", [("4_d", "4_c", "8_cd"), ("1_b", "1_a", "2_ab"), ("5_a", "4_b", "9_ab")])
def test_combine_examples(x, y, out):
    assert str(combine(parse_part(x), parse_part(y))) == out


@pytest.mark.parametrize("x,y", [("6_a", "4_b"), ("4_c", "4_c"), ("4_c", "4_d"), ("8_cd", "1_a")])
def test_combine_rejects(x, y):
    with pytest.raises(ValueError, match="not a troublesome pair"):
        combine(parse_part(x), parse_part(y))


def test_ordering_primary_and_secondary_exhaustive():
    for p in PRIMARY:
        for q in SECONDARY:
            for l in range(2, 41):
                for k in range(2, 41):
                    lp, kq = P(l, p), P(k, q)
                    assert (not gg(lp, kq)) == gg(P(k + 1, q), P(l - 1, p))
                    assert gg(lp, alpha(kq)) == (not lex_gt(beta(P(k + 1, q)), P(l - 1, p)))


def test_secondary_delta_is_minimal_half_gap():
    for p in SECONDARY:
        for q in SECONDARY:
            best = min(k - l for k in range(2, 41) for l in range(2, 41)
                       if lex_gt(beta(P(k, p)), alpha(P(l, q))))
            assert best == delta(p, q), (p, q)


def test_secondary_shift_implications_exhaustive():
    for p in SECONDARY:
        for q in SECONDARY:
            for k in range(3, 41):
                for l in range(2, 41):
                    kp, lq = P(k, p), P(l, q)
                    if lex_gt(beta(kp), beta(lq)):
                        assert gg(kp + 1, lq)
                    if gg(kp, lq) and not lex_gt(beta(kp), alpha(lq)):
                        prev = kp - 1
                        assert gg(alpha(lq) + 1, alpha(prev))
                        assert lex_gt(alpha(prev), beta(prev))
                        assert lex_gt(beta(prev), beta(lq))


@given(ranked_parts, ranked_parts)
def test_relation_strength(x, y):
    # tri_gt implies gg implies lex_gt
    if tri_gt(x, y):
        assert gg(x, y)
    if gg(x, y):
        assert lex_gt(x, y)


@pytest.mark.parametrize("text,part", [("11_c", P(11, "c")), ("10_cd", P(10, "cd")), ("7_abcd", P(7, "abcd"))])
def test_parse_part(text, part):
    assert parse_part(text) == part
    assert format_part(part) == text


@pytest.mark.parametrize("text,exc,offset", [
    ("3_xy", UnknownColorError, 2),
    ("0_a", NonPositiveSizeError, 0),
    ("-2_a", NonPositiveSizeError, 0),
    ("x_a", MalformedIntegerError, 0),
    ("12", MalformedIntegerError, 0),
    ("4_a, 3_q", UnknownColorError, 7),
    ("4_a,1_ab", NonPositiveSizeError, 4),
])
def test_parse_errors(text, exc, offset):
    with pytest.raises(exc) as info:
        parse_parts(text)
    assert info.value.offset == offset


def test_parse_sequence_whitespace_and_empty():
    assert parse_parts(" 4_a , 3_b ") == (P(4, "a"), P(3, "b"))
    assert parse_parts("") == ()


@given(st.lists(ranked_parts, max_size=8))
def test_format_parse_round_trip(parts):
    assert parse_parts(format_parts(parts)) == tuple(parts)


def test_size_bound():
    P(MAX_SIZE, "a")
    with pytest.raises(OverflowError):
        P(MAX_SIZE + 1, "a")
