import pytest

from bruteforce import brute_coset, brute_dominant, levi_group, length
from parablocks.rootsys import RootSystem, make_parabolic, parabolic_from_excluded
from parablocks.weights import (
    DegenerateSingularity,
    NotIntegral,
    NotRegular,
    Weight,
    canonical_dominant,
    count_table,
    dominant_rep,
    enumerate_coset,
    in_Lambda_I_plus,
    is_phiI_regular,
    max_count,
    normalize_to_Lambda_I,
    parity,
    phi,
    singular_set,
)
from parablocks.rootsys import phi_indices

B6 = parabolic_from_excluded(RootSystem("B", 6), [2, 6])
B6_DOMINANT = Weight.of(2, 1, 1, 1, 0, 0)
B6_COSET = [
    Weight.of(1, 0, 2, 1, 0, -1),
    Weight.of(1, 0, 1, 0, -1, -2),
    Weight.of(0, -1, 2, 1, 0, -1),
    Weight.of(0, -1, 1, 0, -1, -2),
]


def test_weight_parsing_and_printing():
    assert Weight.parse("1/2, -3/2") == Weight((1, -3))
    assert str(Weight.of(2, "1/2", 0)) == "(2, 1/2, 0)"
    with pytest.raises(NotIntegral):
        Weight.of("1/3")


def test_levi_regularity():
    assert is_phiI_regular(make_parabolic(RootSystem("B", 3), [1, 3]), Weight.of(1, 0, 2))
    assert not is_phiI_regular(make_parabolic(RootSystem("B", 2), [1]), Weight.of(1, 1))
    assert not is_phiI_regular(make_parabolic(RootSystem("B", 2), [2]), Weight.of(1, 0))


def test_lambda_plus_membership():
    assert in_Lambda_I_plus(B6, Weight.of(1, 0, 2, 1, 0, -1))
    assert not in_Lambda_I_plus(B6, Weight.of(0, 1, 2, 1, 0, -1))
    # dropping alpha_3 from D_4 leaves the nonstandard I = {alpha_1, alpha_2, e3+e4};
    # every pairing with I is positive, so the weight is strictly I-dominant
    d4 = parabolic_from_excluded(RootSystem("D", 4), [3])
    assert d4.nonstandard
    assert in_Lambda_I_plus(d4, Weight.of(2, 1, 0, 1))
    assert not in_Lambda_I_plus(d4, Weight.of(2, 1, 0, -1))


@pytest.mark.parametrize(
    "family,values,expected",
    [("A", (2, 3, 1), (3, 2, 1)), ("B", (-1, 2), (2, 1)), ("D", (1, -1, 1, -1), (1, 1, 1, 1)), ("D", (1, -1, 1, 1), (1, 1, 1, -1))],
)
def test_dominant_representatives(family, values, expected):
    weight = Weight.of(*values)
    rs = RootSystem(family, len(values))
    dom, u = dominant_rep(rs, weight)
    assert dom == Weight.of(*expected)
    assert u.apply(weight.twice) == dom.twice
    assert dom.twice == brute_dominant(family, weight.twice)


def test_singular_sets():
    sd = singular_set(RootSystem("B", 6), B6_DOMINANT)
    assert sd.J == frozenset({2, 3, 5, 6})
    assert sd.m_bar == 3
    assert sd.sizes == (1, 3, 2)
    assert sd.values == (4, 2, 0)
    gl7 = singular_set(RootSystem("A", 7), Weight.of(3, 2, 2, 2, 1, 1, 1))
    assert gl7.J == frozenset({2, 3, 5, 6})
    regular = singular_set(RootSystem("B", 3), Weight.of(3, 2, 1))
    assert regular.J == frozenset()
    assert regular.m_bar == 4  # three singleton blocks and the empty zero block


def test_degenerate_d_weight_is_rejected():
    with pytest.raises(DegenerateSingularity):
        singular_set(RootSystem("D", 3), Weight.of(2, 1, 0))


def test_canonical_dominant():
    assert canonical_dominant(RootSystem("B", 2), [2]) == Weight.of(1, 0)
    assert canonical_dominant(RootSystem("B", 6), [2, 3, 5, 6]) == B6_DOMINANT
    for family in "ABCD":
        rs = RootSystem(family, 4)
        t = canonical_dominant(rs, []).twice
        assert len(set(t)) == 4
        if family != "A":
            assert all(x > 0 for x in t)


@pytest.mark.parametrize("family,n", [("B", 3), ("C", 3), ("D", 4), ("A", 4), ("D", 3)])
def test_canonical_dominant_has_the_requested_singular_set(family, n):
    rs = RootSystem(family, n)
    for mask in range(1 << rs.simple_count):
        J = frozenset(k + 1 for k in range(rs.simple_count) if mask >> k & 1)
        weight = canonical_dominant(rs, J)
        assert singular_set(rs, weight).J == J


def test_small_cosets_from_the_examples():
    b2 = make_parabolic(RootSystem("B", 2), [1])
    assert enumerate_coset(b2, Weight.of(1, 0)) == [Weight.of(1, 0), Weight.of(0, -1)]
    assert enumerate_coset(B6, B6_DOMINANT) == B6_COSET
    b12 = parabolic_from_excluded(RootSystem("B", 12), [2, 6, 12])
    assert len(enumerate_coset(b12, Weight.of(3, 2, 2, 2, 1, 1, 1, 1, 1, 0, 0, 0))) == 8


def test_d4_coset_and_its_twist():
    d4 = make_parabolic(RootSystem("D", 4), [1, 3])
    assert Weight.of(1, -1, 1, -1) in enumerate_coset(d4, Weight.of(1, 1, 1, 1))
    assert enumerate_coset(d4, Weight.of(1, 1, 1, -1)) == []


@pytest.mark.parametrize("family,n", [("A", 4), ("B", 3), ("C", 3), ("D", 4)])
def test_coset_enumeration_matches_the_whole_weyl_group(family, n):
    rs = RootSystem(family, n)
    for mask in range(1 << rs.simple_count):
        pd = make_parabolic(rs, [k + 1 for k in range(rs.simple_count) if mask >> k & 1])
        for jmask in range(0, 1 << rs.simple_count, 3):
            J = [k + 1 for k in range(rs.simple_count) if jmask >> k & 1]
            dominant = canonical_dominant(rs, J)
            assert [x.twice for x in enumerate_coset(pd, dominant)] == brute_coset(pd, dominant.twice)
            if family == "D":
                twisted = phi(dominant)
                assert [x.twice for x in enumerate_coset(pd, twisted)] == brute_coset(pd, twisted.twice)


def test_count_tables():
    sd = singular_set(RootSystem("B", 6), B6_DOMINANT)
    table = count_table(B6, sd, B6_COSET[0])
    # rows: segments; columns: values 2, 1, 0
    assert table.rows == ((0, 1, 1), (1, 2, 1), (0, 0, 0))
    assert table.row_sums == B6.sizes
    assert table.column_sums == sd.sizes


def test_max_count_caps():
    b = parabolic_from_excluded(RootSystem("B", 4), [2])
    assert max_count(b, b.m - 1, 0) == 0
    assert max_count(b, 0, 2) == 2
    d = parabolic_from_excluded(RootSystem("D", 5), [2])
    assert max_count(d, d.m - 1, 10) == 1
    a = parabolic_from_excluded(RootSystem("A", 4), [2])
    assert max_count(a, 0, 2) == 1


def test_parity():
    assert parity(Weight.of(1, 0, 2)) == 0
    assert parity(Weight.of(0, -1)) == 1
    assert parity(B6_COSET[3]) == 1


def test_phi():
    assert phi(Weight.of(1, 1, 1, -1)) == Weight.of(1, 1, 1, 1)
    x = Weight.of(3, -2, 1, -5)
    assert phi(phi(x)) == x
    assert phi_indices(RootSystem("D", 4), {1, 2, 3}) == frozenset({1, 2, 4})


def test_normalize_to_lambda_plus():
    x = Weight.of(1, 0, 2, 1, 0, -1)
    assert normalize_to_Lambda_I(B6, x) == (x, 0)
    assert normalize_to_Lambda_I(B6, Weight.of(0, 1, 2, 1, 0, -1)) == (x, 1)
    with pytest.raises(NotRegular):
        normalize_to_Lambda_I(B6, Weight.of(1, 1, 2, 1, 0, -1))


@pytest.mark.parametrize("family,n,I", [("B", 3, [2, 3]), ("C", 3, [2, 3]), ("D", 4, [2, 3, 4]), ("D", 4, [1, 2, 4])])
def test_normalization_parity_matches_levi_group_search(family, n, I):
    pd = make_parabolic(RootSystem(family, n), I)
    start = Weight.of(*[3 - k for k in range(n)])
    group = levi_group(pd)
    for u in group:
        moved = Weight(u.apply(start.twice))
        target, par = normalize_to_Lambda_I(pd, moved)
        # the unique Levi element carrying ``moved`` into the chamber
        hits = [x for x in group if x.apply(moved.twice) == target.twice]
        assert len(hits) == 1
        assert length(hits[0], pd.rs) % 2 == par
