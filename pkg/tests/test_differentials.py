import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import jump_cases
from liftoracle import load_fixture
from liftoracle.differentials import (
    ModuleMultiset,
    decompose,
    decompose_table,
    differential_table,
    dimension_check,
    divisor_degree,
    simple_counts,
    u_to_v,
    v_to_u,
)
from liftoracle.errors import ConsistencyError, InputError
from liftoracle.exactmath import GroupSpec, make_group
from liftoracle.ramification import genus_special


def counts_by_enumeration(d, m):
    """x^nu dx for 0 <= nu <= d - 2 carries the character nu + 1 mod m."""
    out = [0] * m
    for nu in range(max(d - 1, 0)):
        out[(nu + 1) % m] += 1
    return out


@given(st.integers(-3, 500), st.integers(1, 12))
def test_simple_counts_match_enumeration(d, m):
    assert simple_counts(d, m) == counts_by_enumeration(d, m)


@given(st.integers(0, 500))
def test_simple_counts_two_characters(d):
    n0, n1 = simple_counts(d, 2)
    k = max(d - 1, 0)
    assert (n0, n1) == (k // 2, (k + 1) // 2)


def test_dtable_fixture_rows():
    fx = load_fixture("d125_w0_9_dtable")
    table = differential_table(fx["lower_jumps"], fx["p"], fx["m"])
    for row in fx["rows"]:
        r = table.rows[row["j"]]
        assert list(r.digits) == row["digits"]
        assert r.d == row["d"]
        assert list(r.n) == row["n"]
        diff = table.differences(row["j"])
        assert (None if diff is None else list(diff)) == row["diff"]


def test_divisor_degree_matches_table():
    lower = [9, 189, 4689]
    table = differential_table(lower, 5, 2)
    assert [divisor_degree(j, lower, 5) for j in range(125)] == table.degrees
    with pytest.raises(InputError):
        divisor_degree(0, lower, 5, h=2)


@given(jump_cases(max_h=3))
def test_table_invariants(case):
    p, h, m, upper, lower = case
    table = differential_table(lower, p, m)
    assert table.monotone
    assert table.rows[-1].d == 0
    assert table.dimension_sum == genus_special(lower, p)


@given(jump_cases(max_h=3))
def test_decomposition_telescopes_and_matches_genus(case):
    p, h, m, upper, lower = case
    table = differential_table(lower, p, m)
    ms = decompose_table(table)
    g = genus_special(lower, p)
    assert dimension_check(ms, g, table)
    assert all(mult > 0 for _, mult in ms.entries)
    # n_{j,a} counts the summands with socle a and dimension > j
    mult = ms.as_dict()
    for j in {0, 1, table.q // 2, table.q - 1}:
        for a in range(m):
            assert table.rows[j].n[a] == sum(k for (aa, b), k in mult.items() if aa == a and b > j)


def test_d125_module_fixture():
    fx = load_fixture("d125_w0_9_modules")
    ms = decompose(GroupSpec.dihedral(fx["p"], fx["h"]), fx["lower_jumps"])
    assert [{"socle": a, "dim": b, "mult": k} for (a, b), k in ms.entries] == fx["modules"]
    assert ms.total_dimension == fx["genus"] == 11656
    assert ms.size == 187


@pytest.mark.parametrize("alpha", [57, 68])
def test_c4_module_fixture(alpha):
    fx = load_fixture("c125_c4_modules")
    ms = decompose(make_group(5, 3, 4, alpha), fx["lower_jumps"])
    assert [{"socle": a, "dim": b, "mult": k} for (a, b), k in ms.entries] == fx["modules"]
    assert ms.total_dimension == fx["genus"]


@given(st.integers(1, 8), st.data())
def test_u_v_round_trip(m, data):
    a0 = data.draw(st.integers(0, m - 1))
    mu = data.draw(st.integers(0, m - 1))
    kappa = data.draw(st.integers(1, 400))
    lam, k = u_to_v(mu, kappa, m, a0)
    assert v_to_u(lam, k, m, a0) == (mu, kappa)
    assert (lam + a0 * (kappa - 1) - mu) % m == 0


def test_multiset_conversion_round_trip():
    ms = decompose(make_group(5, 3, 4, 57), [1, 21, 521])
    assert ms.to_v(1).to_u(1) == ms
    assert ms.to_v(1).mult(3, 119) == 1  # U(1,119) has top 1 - 118 = 3 mod 4
    assert str(ModuleMultiset.from_instances(2, 125, [(1, 121), (0, 5)])) == "{U(0,5), U(1,121)}"


def test_multiset_validation():
    with pytest.raises(ConsistencyError):
        ModuleMultiset.from_counts(2, 9, {(0, 1): -1})
    with pytest.raises(InputError):
        ModuleMultiset.from_counts(2, 9, {(2, 1): 1})
    with pytest.raises(InputError):
        ModuleMultiset.from_counts(2, 9, {(0, 10): 1})
    with pytest.raises(InputError):
        u_to_v(0, 0, 2, 1)


def test_decompose_rejects_wrong_length():
    with pytest.raises(InputError):
        decompose(GroupSpec.dihedral(5, 2), [9, 189, 4689])
