import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import admissible_upper, jump_cases
from liftoracle.errors import GenusInconsistencyError, InputError, InvalidJumpsError
from liftoracle.ramification import (
    BProfile,
    JumpSequence,
    b_value,
    family_jumps,
    genus_generic,
    genus_special,
    kgb_vanishes,
    lower_to_upper,
    pi_profile,
    upper_to_lower,
    validate_obus_pries,
)


def genus_hilbert(lower, p):
    """Oracle: 2g - 2 = -2q + sum_{i >= 0} (|G_i| - 1), ramification groups listed one by one."""
    h = len(lower)
    q = p**h
    total = -2 * q
    for i in range(0, lower[-1] + 1):
        k = next(k for k, b in enumerate(lower) if i <= b)  # G_i has order p^(h-k)
        total += p ** (h - k) - 1
    assert total % 2 == 0
    return total // 2 + 1


def test_conversion_examples():
    assert upper_to_lower([9, 45, 225], 5) == [9, 189, 4689]
    assert lower_to_upper([1, 21, 521], 5) == ([2, 4, 20], [1, 5, 25])


@given(jump_cases(max_h=4))
def test_round_trip_lower_upper(case):
    p, h, m, upper, lower = case
    counts, back = lower_to_upper(lower, p)
    assert back == upper
    assert upper_to_lower(back, p) == lower
    js = JumpSequence.from_upper(upper, p)
    assert list(js.lower) == lower and list(js.orbit_counts) == counts


@given(jump_cases(max_h=4))
def test_genus_routes_agree_with_hilbert_sum(case):
    p, h, m, upper, lower = case
    js = JumpSequence.from_lower(lower, p)
    g = genus_special(lower, p)
    assert g == genus_generic(js.orbit_counts, p)
    if lower[-1] < 20000:
        assert g == genus_hilbert(lower, p)


def test_genus_examples():
    assert genus_special([9, 189, 4689], 5) == 11656
    assert genus_special([1, 21, 521], 5) == 1240
    assert genus_hilbert([1, 21, 521], 5) == 1240
    assert genus_generic([2, 4, 20], 5) == 1240


def test_genus_inconsistency_raises():
    # b0 = 0 is not a jump: 2g comes out negative
    with pytest.raises(GenusInconsistencyError):
        genus_special([0], 3)


def test_invalid_lower_jumps():
    with pytest.raises(InvalidJumpsError):
        lower_to_upper([9, 190], 5)
    with pytest.raises(InvalidJumpsError):
        lower_to_upper([9, 9], 5)
    with pytest.raises(InvalidJumpsError):
        JumpSequence.from_lower([5, 30], 5)
    with pytest.raises(InvalidJumpsError):
        lower_to_upper([], 5)


def test_family_jumps_matches_geometric_upper_sequence():
    for p in (3, 5, 7):
        for h in (1, 2, 3, 4):
            for w0 in (1, 2, 4, 8, 11):
                if w0 % p == 0:
                    continue
                assert family_jumps(p, h, w0) == upper_to_lower([w0 * p**k for k in range(h)], p)
    assert family_jumps(5, 3, 9) == [9, 189, 4689]
    with pytest.raises(InputError) as e:
        family_jumps(5, 3, 10)
    assert e.value.field == "family_w0"


def test_obus_pries_examples():
    assert validate_obus_pries([1, 5, 25], 5, 4).valid
    assert validate_obus_pries([9, 45, 225], 5, 2).valid
    bad = validate_obus_pries([10], 5, 2)
    assert not bad.valid and 3 in bad.clauses
    assert 2 in validate_obus_pries([2, 10], 5, 2).clauses
    assert 4 in validate_obus_pries([1, 6], 5, 4).clauses
    assert 3 in validate_obus_pries([1, 4], 5, 1).clauses
    assert 1 in validate_obus_pries([0], 5, 1).clauses
    # a jump above p*w_prev is fine when prime to p and congruent mod m
    assert validate_obus_pries([1, 9], 5, 4).valid
    assert not validate_obus_pries([1, 10], 5, 1).valid


@given(jump_cases(max_h=4))
def test_generated_sequences_are_admissible(case):
    p, h, m, upper, lower = case
    assert validate_obus_pries(upper, p, m).valid


@given(jump_cases(max_h=4, ms=(2, 3, 4)))
def test_kgb_equivalent_conditions(case):
    p, h, m, upper, lower = case
    st_ = kgb_vanishes(lower, m, p)
    assert st_.vanishes == ((lower[0] + 1) % m == 0)
    # under the congruence condition all three formulations coincide
    assert st_.vanishes == st_.upper_all_minus_one == st_.m_divides_orbit_counts


def test_kgb_examples():
    assert kgb_vanishes([9, 189, 4689], 2).vanishes
    assert not kgb_vanishes([1, 21, 521], 4, 5).vanishes


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("h", [1, 2, 3, 4])
def test_w0_one_pi_jumps_and_b_never_divisible(p, h):
    q = p**h
    lower = family_jumps(p, h, 1)
    prof = pi_profile(lower, p)
    assert prof.jumps == tuple(k * (p + 1) for k in range(1, (q - 1) // (p + 1) + 1))
    assert all(b_value(j, lower, p) % q for j in range(1, q))


@given(jump_cases(max_h=3))
def test_b_is_increasing_and_additive_on_digits(case):
    p, h, m, upper, lower = case
    prof = BProfile.build(JumpSequence.from_lower(lower, p))
    assert prof.increasing
    assert prof.B[0] == 0
    rnd = random.Random(len(prof.B))
    for _ in range(20):
        j = rnd.randrange(prof.q)
        digits = [(j // p**l) % p for l in range(h)]
        assert prof.B[j] == sum(a * prof.B[p**l] for l, a in enumerate(digits))


def test_admissible_generator_is_deterministic():
    assert admissible_upper(random.Random(1), 5, 3, 4) == admissible_upper(random.Random(1), 5, 3, 4)
