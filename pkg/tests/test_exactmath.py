import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from liftoracle.errors import DigitRangeError, DomainError, InputError, InvalidGroupError, NoTypeError
from liftoracle.exactmath import (
    GroupSpec,
    is_prime,
    make_group,
    multiplicative_order,
    padic_digits,
    resolve_a0,
    smallest_primitive_root,
    teichmuller_lift,
    type_of_index,
    validate_group,
)

PRIMES = [3, 5, 7, 11, 13]


@given(st.integers(0, 5000))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("p", list(sympy.primerange(3, 200)))
def test_primitive_root_matches_sympy(p):
    assert smallest_primitive_root(p) == sympy.primitive_root(p)


@given(st.integers(2, 400), st.integers(1, 10**6))
def test_multiplicative_order_matches_sympy(n, x):
    if sympy.gcd(x, n) != 1:
        with pytest.raises(DomainError):
            multiplicative_order(x, n)
    else:
        assert multiplicative_order(x, n) == sympy.n_order(x, n)


@given(st.sampled_from(PRIMES), st.integers(1, 6), st.data())
def test_digits_round_trip(p, h, data):
    j = data.draw(st.integers(0, p**h - 1))
    d = padic_digits(j, p, h)
    assert d.value == j and d.h == h
    assert all(0 <= a < p for a in d)
    most_significant_first = sympy.ntheory.digits(j, p)[1:]
    assert list(d) == list(reversed(most_significant_first)) + [0] * (h - len(most_significant_first))


def test_digits_examples():
    assert padic_digits(121, 5, 3).digits == (1, 4, 4)
    assert padic_digits(5, 5, 3).digits == (0, 1, 0)
    with pytest.raises(DigitRangeError):
        padic_digits(125, 5, 3)
    with pytest.raises(DigitRangeError):
        padic_digits(-1, 5, 3)


@given(st.sampled_from(PRIMES), st.integers(1, 5), st.data())
def test_type_is_first_digit_below_top(p, h, data):
    j = data.draw(st.integers(0, p**h - 2))
    s = type_of_index(j, p, h)
    # j = (p^(s-1) - 1) + a * p^(s-1) + higher, with a < p - 1
    assert (j % p ** (s - 1)) == p ** (s - 1) - 1
    assert (j // p ** (s - 1)) % p < p - 1


def test_type_examples():
    assert type_of_index(0, 5, 3) == 1
    assert type_of_index(4, 5, 3) == 2
    assert type_of_index(24, 5, 3) == 3
    with pytest.raises(NoTypeError):
        type_of_index(124, 5, 3)


@given(st.sampled_from(PRIMES), st.integers(1, 4), st.integers(1, 12))
def test_teichmuller_is_root_of_unity_lifting_residue(p, h, r):
    if r % p == 0:
        return
    t = teichmuller_lift(r, p, h)
    assert t % p == r % p
    assert pow(t, p - 1, p**h) == 1


def test_resolve_a0_dihedral_and_c4():
    assert resolve_a0(124, 5, 2) == [1]
    assert resolve_a0(57, 5, 4) == [1]
    assert resolve_a0(68, 5, 4) == [3]
    with pytest.raises(DomainError):
        resolve_a0(10, 5, 4)


def test_resolve_a0_outside_fp_returns_all_candidates():
    # m = 4 does not divide 7 - 1; -1 has order 2 so only a0 = 2 fits
    assert resolve_a0(6, 7, 4) == [2]
    # m = 8, p = 3: 2 has order 2 mod 3, so exponents with 8/gcd(8,a) = 2
    assert resolve_a0(2, 3, 8) == [4]


@given(st.sampled_from([(5, 4), (7, 3), (7, 6), (13, 4), (13, 3), (11, 5)]), st.integers(1, 3), st.data())
def test_from_a0_round_trip(pm, h, data):
    p, m = pm
    a0 = data.draw(st.integers(0, m - 1))
    spec = GroupSpec.from_a0(p, h, m, a0)
    diag = validate_group(spec)
    assert diag.alpha_pow_m_mod_q == 1 % spec.q
    assert diag.a0_consistent
    assert GroupSpec.from_alpha(p, h, m, spec.alpha).a0 == a0


def test_group_validation_errors():
    with pytest.raises(InvalidGroupError) as e:
        GroupSpec(p=4, h=1, m=2, alpha=3, a0=1)
    assert e.value.field == "p"
    with pytest.raises(InvalidGroupError) as e:
        GroupSpec(p=5, h=3, m=5, alpha=1, a0=0)
    assert e.value.field == "m"
    with pytest.raises(InvalidGroupError) as e:
        GroupSpec(p=5, h=3, m=4, alpha=125, a0=1)
    assert e.value.field == "alpha"
    with pytest.raises(InvalidGroupError) as e:
        validate_group(GroupSpec(p=5, h=3, m=4, alpha=2, a0=1))
    assert e.value.field == "alpha"


def test_faithfulness_reported():
    assert validate_group(GroupSpec.dihedral(5, 3)).faithful
    # alpha = 1 with m = 2: C_m acts trivially
    assert not validate_group(GroupSpec(p=5, h=3, m=2, alpha=1, a0=0)).faithful


def test_make_group_defaults():
    assert make_group(5, 3) == GroupSpec.dihedral(5, 3)
    assert make_group(5, 3, 1).alpha == 1
    assert make_group(5, 3, 4, alpha=68).a0 == 3
    with pytest.raises(InputError):
        make_group(5, 3, 4)
    with pytest.raises(InputError):
        make_group(7, 1, 9, alpha=2)  # 2 has order 3 mod 7, which fits both a0 = 3 and a0 = 6
