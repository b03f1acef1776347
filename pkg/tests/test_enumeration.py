import io

import pytest

from chains import FIRST_KIND_49, SECOND_KIND_49
from colpart.core import PRIMARY, TEN_COLORS, ColoredPart, format_parts, lex_gt, parse_parts
from colpart.enumeration import (
    DILATION,
    GAP_CAP,
    CountTable,
    check_phi_psi,
    check_quaternary_map,
    corollary_sweep,
    count_A,
    count_B,
    count_quaternary,
    dilate,
    first_kind,
    gen_E1,
    gen_O,
    gen_quaternary,
    is_first_kind,
    is_second_kind,
    second_kind_dilated,
    second_kind_rule,
    undilate,
    verify_corollary,
    verify_a_equals_b,
    verify_b_equals_quaternary,
)
from colpart.partitions import Family, is_forbidden_triple, validate

P = ColoredPart


def _brute_O(n):
    """Sets of distinct (size, primary color) parts summing to n, sorted by lex order."""
    atoms = [P(k, c) for k in range(1, n + 1) for c in PRIMARY]
    out = set()

    def rec(start, left, chosen):
        if left == 0:
            out.add(tuple(sorted(chosen, key=lambda p: (p[0], "abcd".index(p[1])), reverse=True)))
            return
        for i in range(start, len(atoms)):
            if atoms[i][0] <= left:
                rec(i + 1, left - atoms[i][0], chosen + [atoms[i]])

    rec(0, n, [])
    return out


@pytest.mark.parametrize("n", range(0, 9))
def test_gen_O_matches_brute_force(n):
    got = list(gen_O(n))
    assert len(got) == len(set(got))
    assert set(got) == _brute_O(n)


def test_small_counts():
    assert [len(list(gen_O(n))) for n in range(3)] == [1, 4, 10]
    assert {format_parts(p) for p in gen_E1(2)} == {f"2_{c}" for c in TEN_COLORS}
    assert list(gen_E1(0)) == [()]


def test_e1_by_filtering_all_sequences():
    # oracle: every decreasing-size sequence of colored parts, filtered by validate
    for n in range(0, 8):
        atoms = [P(k, c) for k in range(1, n + 1) for c in TEN_COLORS if len(c) == 1 or k >= 2]
        brute = set()

        def rec(seq, left):
            if left == 0:
                if validate(seq, Family.E1):
                    brute.add(tuple(seq))
                return
            for a in atoms:
                if a[0] <= left and (not seq or lex_gt(seq[-1], a)):
                    rec(seq + [a], left - a[0])

        rec([], n)
        assert set(gen_E1(n)) == brute


def test_quaternary_examples():
    assert [qd.format() for qd in gen_quaternary(0)] == [" | "]
    four = {qd.format() for qd in gen_quaternary(4)}
    assert "4_abcd | " in four
    five = {qd.format() for qd in gen_quaternary(5)}
    assert "5_abcd | " in five
    assert {f" | 5_{c}" for c in TEN_COLORS} <= five


def test_count_table_csv_and_restrict():
    t = count_A(2)
    assert t.total() == 10
    csv_text = t.to_csv()
    assert csv_text.splitlines()[0] == "u,v,w,t,n,count"
    assert len(csv_text.splitlines()) == 11
    buf = io.StringIO()
    t.to_csv(buf)
    assert buf.getvalue() == csv_text
    assert t.restrict("ab").total() == 3  # 2_a, 2_b, (1_b,1_a)
    assert CountTable.of([()]) == CountTable({(0, 0, 0, 0, 0): 1})


def test_theorem_sweeps_small():
    r = verify_a_equals_b(2)
    assert r.passed and r.totals == {0: 1, 1: 4, 2: 10}
    assert verify_b_equals_quaternary(12).passed
    for n in range(13):
        assert count_A(n) == count_B(n) == count_quaternary(n)


@pytest.mark.parametrize("mode", ["t0", "wt0"])
def test_specializations_small(mode):
    assert verify_a_equals_b(12, mode).passed


def test_bijection_checkers_small():
    for n in range(12):
        assert check_phi_psi(n)[1] is None
        assert check_quaternary_map(n)[1] is None


@pytest.mark.parametrize("part,value", [("1_a", 4), ("3_ad", 27), ("2_bc", 18), ("1_d", 11), ("2_ab", 12)])
def test_dilate(part, value):
    p = parse_parts(part)[0]
    assert dilate(p) == value
    assert undilate(value) == p


def test_dilate_rejects_quaternary():
    with pytest.raises(ValueError):
        dilate(P(5, "abcd"))


def test_dilation_is_injective_with_forbidden_residues():
    seen = {}
    for k in range(1, 40):
        for c in TEN_COLORS:
            if len(c) == 2 and k < 2:
                continue
            v = dilate(P(k, c))
            assert v not in seen
            seen[v] = (k, c)
    residues = {v % DILATION for v in seen}
    assert residues.isdisjoint({1, 5})
    assert not {2, 3, 6, 7, 9} & set(seen)


def test_corollary_49():
    r = verify_corollary(49)
    assert r.passed
    assert set(r.second_rule) == set(r.second_dilated)
    # the printed lists are subsets of the computed ones, each missing one entry
    assert set(r.first) - FIRST_KIND_49 == {(20, 11, 10, 8)}
    assert set(r.second_rule) - SECOND_KIND_49 == {(31, 18)}
    assert FIRST_KIND_49 <= set(r.first) and SECOND_KIND_49 <= set(r.second_rule)
    assert r.summary().splitlines()[0] == "n=49: 8 = 8"


def test_missing_entries_really_qualify():
    assert is_first_kind((20, 11, 10, 8)) and sum((20, 11, 10, 8)) == 49
    assert is_second_kind((31, 18)) and undilate(31) == P(3, "bd") and undilate(18) == P(2, "bc")
    assert validate((P(3, "bd"), P(2, "bc")), Family.E1)


def test_corollary_zero():
    r = verify_corollary(0)
    assert r.first == r.second_rule == r.second_dilated == [()]


@pytest.mark.parametrize("n", range(1, 121))
def test_corollary_small_sizes(n):
    assert verify_corollary(n).passed


def test_second_kind_rules():
    assert is_second_kind((27, 18, 4))
    assert not is_second_kind((39, 30, 16))  # gap 9 but 39 - 16 < 24
    assert is_second_kind((39, 30, 15))
    assert not is_second_kind((40, 31))      # gap 9 from residue 4
    assert not is_second_kind((20, 10))      # gap 10
    assert not is_second_kind((23, 12))      # gap 11
    assert is_second_kind((23, 11))          # gap 12 from residue 11
    assert not is_second_kind((24, 12))      # gap 12 from residue 0
    assert not is_second_kind((7,))


def test_triple_constraints_only_at_gap_nine():
    # the counting sweep relies on this
    for k in range(1, 20):
        for x, y, z in [(P(k + 2, "cd"), P(k + 2, "ab"), P(k, "c")),
                        (P(k + 2, "cd"), P(k + 2, "ab"), P(k, "d")),
                        (P(k + 2, "ad"), P(k + 1, "bc"), P(k, "a"))]:
            assert is_forbidden_triple(x, y, z) == (k != 1 or x[1] == "cd")
            assert dilate(x) - dilate(y) == 9
    assert GAP_CAP > 9


def test_corollary_sweep_matches_enumeration():
    sweep = corollary_sweep(150)
    assert sweep.passed
    for n in (0, 49, 100, 150):
        assert sweep.first[n] == len(first_kind(n))
        assert sweep.rule[n] == len(second_kind_rule(n))
        assert sweep.dilated[n] == len(second_kind_dilated(n))
