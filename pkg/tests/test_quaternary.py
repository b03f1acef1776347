import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chains import FROM_QUAT_STATES, PHI_OUTPUT, QUAT_TEXT, TO_QUAT_STATES
from colpart.core import ColoredPart, format_parts, parse_parts
from colpart.enumeration import gen_E1, gen_quaternary
from colpart.partitions import Family, stats, validate
from colpart.quaternary import (
    ONE_A,
    QuaternaryDecomposition,
    find_patterns,
    format_rows,
    from_quaternary,
    from_quaternary_chain,
    merge_pair,
    split_quat,
    to_quaternary,
    to_quaternary_bubbling,
)

P = ColoredPart
SMALL_N = 16
E1_SMALL = [p for n in range(SMALL_N + 1) for p in gen_E1(n)]

# hand-derived: patterns (13_ad,12_bc), (7_cd,7_ab), (3_ad,2_bc) with 0, 1, 2 parts to their left
OWN_EXAMPLE = "13_ad,12_bc,9_a,7_cd,7_ab,4_c,3_ad,2_bc,1_a"
OWN_IMAGE = "25_abcd,16_abcd,9_abcd | 5_a,2_c,1_a"


@pytest.mark.parametrize("quat,pair", [(22, "11_cd,11_ab"), (5, "3_ad,2_bc"), (4, "2_cd,2_ab"), (11, "6_ad,5_bc")])
def test_split_and_merge(quat, pair):
    q = P(quat, "abcd")
    assert format_parts(split_quat(q)) == pair
    assert merge_pair(*split_quat(q)) == q


@pytest.mark.parametrize("size", [2, 3])
def test_split_rejects_small(size):
    with pytest.raises(ValueError):
        split_quat(P(size, "abcd"))


def test_merge_rejects_non_pattern():
    with pytest.raises(ValueError):
        merge_pair(P(5, "ad"), P(5, "bc"))


def test_golden_forward():
    qd = to_quaternary(parse_parts(PHI_OUTPUT))
    assert qd.format() == QUAT_TEXT
    qd2, states = to_quaternary_bubbling(parse_parts(PHI_OUTPUT))
    assert qd2 == qd
    assert [format_rows(s) for s in states] == TO_QUAT_STATES


def test_golden_backward():
    qd = QuaternaryDecomposition.parse(QUAT_TEXT)
    nu, states = from_quaternary_chain(qd)
    assert format_parts(nu) == PHI_OUTPUT
    assert [format_rows(s) for s in states] == FROM_QUAT_STATES
    assert from_quaternary(qd) == nu


def test_own_example():
    nu = parse_parts(OWN_EXAMPLE)
    qd = to_quaternary(nu)
    assert qd.format() == OWN_IMAGE
    assert qd.size == sum(p.size for p in nu) == 58
    assert from_quaternary(qd) == nu


def test_no_patterns_is_identity():
    nu = parse_parts("9_c,7_ab,4_d,1_a")
    qd = to_quaternary(nu)
    assert qd.quats == () and qd.residual == nu
    assert from_quaternary(QuaternaryDecomposition((), nu)) == nu


def test_empty():
    assert to_quaternary(()) == QuaternaryDecomposition((), ())


def test_rejects_invalid_decomposition():
    with pytest.raises(ValueError, match="differ by less than 4"):
        from_quaternary(QuaternaryDecomposition.of([12, 10], ()))
    with pytest.raises(ValueError, match="below"):
        from_quaternary(QuaternaryDecomposition.of([5], parse_parts("3_a,1_b")))


def test_rejects_non_e1_input():
    with pytest.raises(ValueError):
        to_quaternary(parse_parts("7_cd,7_ab,5_c"))


def test_parse_and_json():
    qd = QuaternaryDecomposition.parse(QUAT_TEXT)
    assert qd.to_obj() == {"quats": [22, 11], "residual": {"parts": [
        {"size": 7, "color": "c"}, {"size": 4, "color": "d"}, {"size": 3, "color": "ab"}, {"size": 1, "color": "a"}]}}
    assert QuaternaryDecomposition.from_json(qd.to_json()) == qd
    with pytest.raises(ValueError):
        QuaternaryDecomposition.parse("22_abcd,11_abcd")
    with pytest.raises(ValueError):
        QuaternaryDecomposition.parse("22_ab | 1_a")


def test_patterns_never_overlap():
    for nu in E1_SMALL:
        starts = find_patterns(nu)
        assert all(b - a >= 2 for a, b in zip(starts, starts[1:]))


def test_image_validity_and_round_trip():
    for nu in E1_SMALL:
        qd = to_quaternary(nu)
        assert qd.problems() == []
        assert stats(qd.quats + qd.residual) == stats(nu)
        assert from_quaternary(qd) == nu
        assert to_quaternary_bubbling(nu)[0] == qd
        if qd.quats:
            s = len(qd.residual)
            assert qd.quats[-1].size >= 4 + 2 * s - (ONE_A in qd.residual)
            if qd.residual and qd.residual[-1] == ONE_A:
                assert qd.quats[-1].size >= 2 * s + 3
        assert validate(qd.residual, Family.E2)


def test_inverse_on_all_decompositions():
    for n in range(SMALL_N + 1):
        for qd in gen_quaternary(n):
            nu = from_quaternary(qd)
            assert validate(nu, Family.E1)
            assert to_quaternary(nu) == qd


@settings(max_examples=40, deadline=None)
@given(st.integers(17, 22).flatmap(lambda n: st.sampled_from(_e1_list(n))))
def test_round_trip_random_larger(nu):
    qd = to_quaternary(nu)
    assert qd.is_valid()
    assert from_quaternary(qd) == nu


_CACHE = {}


def _e1_list(n):
    if n not in _CACHE:
        _CACHE[n] = tuple(gen_E1(n))
    return _CACHE[n]
