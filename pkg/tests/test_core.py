import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sboxlab import (
    SBox,
    ddt,
    derivative,
    derivative_image_size,
    diff1,
    differential_uniformity,
    format_sbox,
    is_weakly_apn,
    is_weakly_delta_uniform,
    normalize,
    parse_sbox,
)
from helpers import (
    C1,
    C2,
    C3,
    C4,
    IDENTITY4,
    SERPENT_RAW,
    oracle_ddt,
    oracle_image_size,
    oracle_weakly_apn,
    random_permutation,
    random_table,
)

# frozen from the brute-force derivative oracle: C1[x^1] ^ C1[x] for all x
C1_DERIVATIVE_U1 = (1, 1, 15, 15, 11, 11, 9, 9, 11, 11, 12, 12, 12, 12, 7, 7)

tables_m4 = st.lists(st.integers(0, 15), min_size=16, max_size=16).map(tuple)


# ---------------------------------------------------------------------------
# parsing

def test_parse_decimal_csv():
    box = parse_sbox("0,1,2,13,4,15,14,7,8,3,5,9,10,6,12,11")
    assert box.m == 4
    assert box.table == C1
    assert box.bijective and box.normalized


def test_parse_hex_identity():
    box = parse_sbox("0123456789abcdef")
    assert box.m == 4
    assert box.table == IDENTITY4


def test_parse_rejects_bad_length():
    with pytest.raises(ValueError, match="length 3 is not a power-of-two"):
        parse_sbox("0,1,2")


def test_parse_reports_token_position():
    with pytest.raises(ValueError, match="position 2"):
        parse_sbox("0,1,zz,3")


def test_parse_reports_out_of_range_value():
    with pytest.raises(ValueError, match="entry 7 at position 3"):
        parse_sbox("0,1,2,7")  # length 4 means m=2, so 7 is out of range


def test_parse_rejects_short_hex():
    with pytest.raises(ValueError, match="16 digits"):
        parse_sbox("0123")


def test_parse_accepts_other_dimensions():
    assert parse_sbox("0,1,2,3").m == 2
    assert parse_sbox(",".join(str(x) for x in range(256))).m == 8


def test_parse_does_not_require_bijectivity():
    box = parse_sbox("0,0,1,2")
    assert not box.bijective


def test_format_round_trips():
    assert parse_sbox(format_sbox(SBox(4, C2))).table == C2


def test_sbox_validation():
    with pytest.raises(ValueError):
        SBox(4, (0,) * 15)
    with pytest.raises(ValueError):
        SBox(4, tuple(range(15)) + (16,))
    with pytest.raises(ValueError):
        SBox(9, tuple(range(512)))


# ---------------------------------------------------------------------------
# derivatives and the DDT

def test_identity_derivative_is_constant():
    assert derivative(SBox(4, IDENTITY4), 5) == (5,) * 16


def test_derivative_at_zero_input_equals_f_of_u():
    box = SBox(4, C2)
    for u in range(1, 16):
        assert derivative(box, u)[0] == box.table[u]


def test_c1_derivative_matches_frozen_oracle():
    assert derivative(SBox(4, C1), 1) == C1_DERIVATIVE_U1


def test_derivative_rejects_zero_direction():
    with pytest.raises(ValueError):
        derivative(SBox(4, C1), 0)
    with pytest.raises(ValueError):
        derivative(SBox(4, C1), 16)


def test_derivative_symmetry():
    rng = random.Random(11)
    for _ in range(25):
        box = SBox(4, random_table(rng, 4))
        u = rng.randrange(1, 16)
        d = derivative(box, u)
        assert all(d[x] == d[x ^ u] for x in range(16))


def test_identity_ddt_is_diagonal():
    counts = ddt(SBox(4, IDENTITY4)).counts
    for u in range(16):
        assert counts[u][u] == 16
        assert sum(counts[u]) == 16


def test_c4_is_4_uniform():
    assert differential_uniformity(SBox(4, C4)) == 4


def test_c1_uniformity_matches_oracle():
    # frozen from the brute-force DDT oracle: the maximum count is 6
    assert differential_uniformity(SBox(4, C1)) == 6


def test_identity_uniformity_is_full():
    assert differential_uniformity(SBox(4, IDENTITY4)) == 16


@given(tables_m4)
def test_ddt_structural_invariants(table):
    box = SBox(4, table)
    counts = ddt(box).counts
    assert counts[0] == (16,) + (0,) * 15
    for u in range(16):
        assert sum(counts[u]) == 16
        assert all(c % 2 == 0 for c in counts[u])
        assert ddt(box).row_image_size(u) == sum(1 for c in counts[u] if c)


def test_bijective_ddt_has_empty_zero_column():
    rng = random.Random(5)
    for _ in range(50):
        counts = ddt(SBox(4, random_permutation(rng, 4))).counts
        assert all(counts[u][0] == 0 for u in range(1, 16))


def test_ddt_matches_oracle_on_random_tables():
    rng = random.Random(17)
    for _ in range(25):
        table = random_table(rng, 4)
        assert [list(r) for r in ddt(SBox(4, table)).counts] == oracle_ddt(table)


# ---------------------------------------------------------------------------
# derivative images and weak uniformity

def test_identity_image_size_is_one():
    for u in range(1, 16):
        assert derivative_image_size(SBox(4, IDENTITY4), u) == 1


def test_bijective_image_size_at_most_half():
    rng = random.Random(23)
    for _ in range(50):
        box = SBox(4, random_permutation(rng, 4))
        for u in range(1, 16):
            assert derivative_image_size(box, u) <= 8


def test_c2_has_small_image_witness():
    # frozen from the image-size oracle: direction 8 has only 4 values
    box = SBox(4, C2)
    assert derivative_image_size(box, 8) == 4
    assert min(derivative_image_size(box, u) for u in range(1, 16)) == 4


def test_weak_uniformity_examples():
    assert is_weakly_delta_uniform(SBox(4, C1), 2) is True
    assert is_weakly_delta_uniform(SBox(4, C2), 2) is False
    assert is_weakly_delta_uniform(SBox(4, IDENTITY4), 2) is False


def test_weakly_apn_examples():
    assert is_weakly_apn(SBox(4, C1)) is True
    assert is_weakly_apn(SBox(4, C3)) is False
    assert is_weakly_apn(SBox(4, C4)) is False


def test_weak_uniformity_comparison_is_strict():
    # at delta=4 the bound is 2, so an image of exactly 2 values must fail
    box = SBox(2, (0, 1, 2, 3))
    assert derivative_image_size(box, 1) == 1
    assert not is_weakly_delta_uniform(box, 4)
    assert is_weakly_delta_uniform(box, 8)  # bound 1/2: size 1 passes


def test_weakly_apn_agrees_with_set_based_oracle():
    rng = random.Random(29)
    for _ in range(300):
        table = random_table(rng, 4)
        assert is_weakly_apn(SBox(4, table)) == oracle_weakly_apn(table)


def test_uniformity_implies_weak_uniformity():
    rng = random.Random(31)
    for _ in range(500):
        box = SBox(4, random_permutation(rng, 4))
        assert is_weakly_delta_uniform(box, differential_uniformity(box))


def test_image_size_matches_oracle():
    rng = random.Random(37)
    for _ in range(50):
        table = random_table(rng, 4)
        u = rng.randrange(1, 16)
        assert derivative_image_size(SBox(4, table), u) == oracle_image_size(table, u)


# ---------------------------------------------------------------------------
# diff1 and normalization

def test_identity_diff1_is_full():
    assert diff1(SBox(4, IDENTITY4)) == 16


def test_c1_diff1_matches_frozen_oracle():
    assert diff1(SBox(4, C1)) == 4


def test_strong_tables_have_zero_diff1(full_enumeration):
    for table in full_enumeration.strong_list[::2500]:
        assert diff1(SBox(4, table)) == 0


def test_normalize_examples():
    assert normalize(SBox(4, IDENTITY4)).table == IDENTITY4
    assert normalize(SBox(2, (3, 2, 1, 0))).table == (0, 1, 2, 3)
    expected_s0 = (0, 11, 12, 2, 9, 5, 6, 8, 13, 14, 7, 1, 4, 3, 10, 15)
    assert normalize(SBox(4, SERPENT_RAW["S0"])).table == expected_s0


@given(tables_m4)
def test_normalize_is_idempotent(table):
    box = normalize(SBox(4, table))
    assert box.normalized
    assert normalize(box) is box


def test_normalize_preserves_difference_measures():
    rng = random.Random(41)
    for _ in range(25):
        box = SBox(4, random_table(rng, 4))
        norm = normalize(box)
        assert ddt(box).counts == ddt(norm).counts
        assert differential_uniformity(box) == differential_uniformity(norm)
        assert diff1(box) == diff1(norm)
        for u in range(1, 16):
            assert (derivative_image_size(box, u)
                    == derivative_image_size(norm, u))


def test_normalize_preserves_spectral_measures():
    from sboxlab import degree_spectrum, walsh_spectrum

    rng = random.Random(43)
    for _ in range(10):
        box = SBox(4, random_permutation(rng, 4))
        shifted = SBox(4, tuple(v ^ 9 for v in box.table))
        norm = normalize(shifted)
        assert norm.table == box.table
        before = walsh_spectrum(shifted).w
        after = walsh_spectrum(norm).w
        for a in range(16):
            assert [abs(c) for c in before[a]] == [abs(c) for c in after[a]]
        assert degree_spectrum(shifted) == degree_spectrum(norm)
