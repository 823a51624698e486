import itertools

import pytest

from crystalkit.errors import (
    DimensionError,
    InvalidTypeError,
    PreconditionError,
)
from crystalkit.perfect_families import (
    PerfectCoordA,
    a_family_operators,
    bl_contains,
    bl_elements,
    build_psi_embedding,
    coord_width,
    head_set_contains,
    head_set_elements,
    head_set_violations,
    level_of_weight,
    minimal_elements,
    minimal_for,
    psi_inverse,
    psi_map,
)
from crystalkit.root_data import (
    AffineType,
    build_root_data,
    dominant_weights_of_level,
    fundamental,
    level,
    sigma,
    sigma_inv,
)

T2 = AffineType("A1", 2)
B3 = AffineType("B1", 3)
C2 = AffineType("C1", 2)
D4 = AffineType("D1", 4)
FLOOR_TYPES = [
    AffineType("A1", 2),
    AffineType("A2dual_odd", 3),
    AffineType("B1", 3),
    AffineType("A2dual_even", 2),
    AffineType("D2dual", 2),
    AffineType("C1", 2),
    AffineType("D1", 4),
]


def brute_bl(t, l):
    """Independent enumeration: filter all bounded tuples by the predicate."""
    width = coord_width(t)
    # families with s(b) = l need entries <= l; the <= 2l families need more
    bound = (2 * l if t.family in ("A2dual_even", "D2dual", "C1") else l) + 1
    out = []
    for c in itertools.product(range(bound), repeat=width):
        if sum(c) <= 2 * l and bl_contains(t, l, c):
            out.append(c)
    return sorted(out)


def test_bl_contains_examples():
    assert bl_contains(T2, 2, (1, 1, 0))
    assert bl_contains(C2, 1, (1, 0, 0, 1))  # s = 2 <= 2l, even
    assert not bl_contains(D4, 1, (0, 0, 0, 1, 1, 0, 0, 0))  # x_4 = xbar_4 = 1
    assert not bl_contains(T2, 2, (1, 0, 0))
    assert not bl_contains(C2, 1, (1, 0, 0, 0))  # odd sum
    with pytest.raises(DimensionError):
        bl_contains(T2, 2, (1, 1))


@pytest.mark.parametrize("t", FLOOR_TYPES, ids=lambda t: t.label())
@pytest.mark.parametrize("l", [1, 2])
def test_bl_enumeration_matches_predicate_filter(t, l):
    assert bl_elements(t, l) == brute_bl(t, l)


def test_bl_counts():
    assert len(bl_elements(T2, 2)) == 6  # stars and bars C(4,2)
    assert len(bl_elements(AffineType("A1", 3), 2)) == 10
    # C_2^(1): even sums 0,2,4 over 4 coordinates
    assert len(bl_elements(C2, 2)) == 1 + 10 + 35
    # D_4^(1): weak compositions of 1 into 8 parts, the pair constraint is vacuous
    assert len(bl_elements(D4, 1)) == 8


@pytest.mark.parametrize("t", FLOOR_TYPES, ids=lambda t: t.label())
def test_level_formula_matches_comark_pairing(t):
    rd = build_root_data(t)
    for l in (1, 2, 3):
        for lam in dominant_weights_of_level(rd, l):
            assert level_of_weight(t, lam) == level(rd, lam) == l


def test_level_of_weight_examples():
    assert level_of_weight(T2, (1, 0, 1)) == 2  # Lambda_0 + Lambda_2
    assert level_of_weight(B3, fundamental(build_root_data(B3), 3)) == 1
    assert level_of_weight(AffineType("A2dual_even", 2), (0, 1, 0)) == 2


def test_head_set_example_a():
    lam = (1, 0, 0)
    assert head_set_elements(T2, 2, lam) == [(1, 0, 1), (1, 1, 0), (2, 0, 0)]


def test_head_set_example_b1():
    lam = (0, 0, 0, 1)  # Lambda_3, a_3 = 1
    coords = (1, 0, 0, 1, 0, 0, 0)  # x = (1,0,0), x_0 = 1, xbar = (0,0,0)
    assert bl_contains(B3, 2, coords)
    assert head_set_contains(B3, 2, lam, coords)


def test_head_set_example_d1():
    lam = (0, 0, 0, 1, 0)  # Lambda_3, a_3 = 1 >= a_4 = 0
    coords = (0, 0, 1, 0, 0, 1, 0, 0)  # x_3 = 1, xbar_3 = 1
    assert head_set_contains(D4, 2, lam, coords)


def test_head_set_violation_names_inequality():
    lam = (1, 0, 0)
    bad = head_set_violations(T2, 2, lam, (0, 1, 1))
    assert bad == ["x_1 >= 1"]


def test_head_set_level_guard():
    with pytest.raises(PreconditionError):
        head_set_contains(T2, 1, (1, 0, 0), (1, 0, 0))  # k = l
    with pytest.raises(PreconditionError):
        head_set_contains(T2, 2, (1, 1, 0), (1, 1, 0))  # k = l


def test_psi_example_a():
    assert psi_map(T2, 2, (1, 0, 0), (1, 1, 0)) == (0, 1, 0)


def test_psi_example_b1_odd_spin():
    lam = (0, 0, 0, 1)
    assert psi_map(B3, 2, lam, (1, 0, 0, 1, 0, 0, 0)) == (1, 0, 0, 0, 0, 0, 0)
    # x_0 = 0 branch flips the bit the other way
    assert psi_map(B3, 2, lam, (0, 0, 1, 0, 1, 0, 0)) == (0, 0, 0, 1, 0, 0, 0)


def test_psi_example_d1():
    lam = (0, 0, 0, 1, 0)
    coords = (0, 0, 1, 0, 0, 1, 0, 0)
    assert psi_map(D4, 2, lam, coords) == (0, 0, 0, 0, 1, 0, 0, 0)


def test_psi_membership_guard():
    with pytest.raises(PreconditionError) as err:
        psi_map(T2, 2, (1, 0, 0), (0, 1, 1))
    assert "x_1 >= 1" in str(err.value)


def test_psi_inverse_is_componentwise_shift_for_family_a():
    lam = (1, 0, 0)
    for c in bl_elements(T2, 1):
        assert psi_inverse(T2, 2, lam, c) == (c[0] + 1, c[1], c[2])


@pytest.mark.parametrize("t", FLOOR_TYPES, ids=lambda t: t.label())
def test_psi_bijection_and_inverse_against_brute_force(t):
    rd = build_root_data(t)
    for (k, l) in ((1, 2), (1, 3)):
        for lam in dominant_weights_of_level(rd, k):
            dom = head_set_elements(t, l, lam)
            images = [psi_map(t, l, lam, c) for c in dom]
            codomain = bl_elements(t, l - k)
            assert sorted(images) == codomain
            # brute-force matching oracle: the unique preimage by search
            by_image = {}
            for c, y in zip(dom, images):
                by_image.setdefault(y, []).append(c)
            for y in codomain:
                assert len(by_image[y]) == 1
                assert psi_inverse(t, l, lam, y) == by_image[y][0]


def test_psi_sum_shift():
    # s(Psi(b)) drops by the coordinate weight of lambda, family by family
    for t in FLOOR_TYPES:
        rd = build_root_data(t)
        for lam in dominant_weights_of_level(rd, 1):
            dom = head_set_elements(t, 3, lam)
            drops = {sum(c) - sum(psi_map(t, 3, lam, c)) for c in dom}
            assert len(drops) == 1


def test_psi_parity_branches_spin_families():
    # a_n odd flips the x_0 bit, a_n even preserves it
    for t, odd_lam, even_lam in (
        (B3, (0, 0, 0, 1), (1, 0, 0, 0)),
        (AffineType("D2dual", 2), (0, 0, 1), (1, 0, 0)),
    ):
        n = t.n
        for c in head_set_elements(t, 2, odd_lam):
            assert psi_map(t, 2, odd_lam, c)[n] == 1 - c[n]
        for c in head_set_elements(t, 2, even_lam):
            assert psi_map(t, 2, even_lam, c)[n] == c[n]


def test_a_family_operator_examples():
    b = PerfectCoordA(T2, (1, 0, 0))
    eps, phi, up, down = a_family_operators(b, 1)
    assert (eps, phi) == (0, 1)
    assert down == PerfectCoordA(T2, (0, 1, 0))
    assert b.e(0) == PerfectCoordA(T2, (0, 0, 1))
    assert PerfectCoordA(T2, (1, 1, 0)).e(2) is None


def test_minimal_elements():
    assert minimal_for(T2, 1, (0, 0, 1)).coords == (0, 0, 1)
    rd = build_root_data(T2)
    elems = minimal_elements(T2, 2)
    assert len(elems) == 6 == len(dominant_weights_of_level(rd, 2))
    for b in elems:
        assert sigma(T2, b.phi_weight()) == b.eps_weight()
    with pytest.raises(PreconditionError):
        minimal_for(T2, 2, (1, 0, 0))
    with pytest.raises(InvalidTypeError):
        minimal_elements(C2, 1)


def test_build_psi_embedding_example():
    table = build_psi_embedding(T2, 1, 2, (1, 0, 0))
    pairs = table.stats["coord_pairing"]
    assert sorted(pairs.values()) == [(1, 0, 1), (1, 1, 0), (2, 0, 0)]
    lam = (1, 0, 0)
    for src, tgt in pairs.items():
        # eps of the image exceeds eps of the source by exactly lambda
        assert tuple(b - a for a, b in zip(src, tgt)) == lam
        assert psi_inverse(T2, 2, lam, src) == tgt
    assert table.is_injective()
    assert all(table.e_commutes.values())


@pytest.mark.parametrize("n,k,l", [(2, 1, 2), (2, 1, 3), (2, 2, 3), (3, 1, 2)])
def test_build_psi_embedding_grid(n, k, l):
    t = AffineType("A1", n)
    rd = build_root_data(t)
    for lam in dominant_weights_of_level(rd, k)[:3]:
        table = build_psi_embedding(t, k, l, lam)
        pairs = table.stats["coord_pairing"]
        assert sorted(pairs.values()) == head_set_elements(t, l, lam)
        for src, tgt in pairs.items():
            assert psi_inverse(t, l, lam, src) == tgt


def test_build_psi_embedding_seed_choice_does_not_matter():
    t = T2
    rd = build_root_data(t)
    tables = [
        build_psi_embedding(t, 1, 3, (0, 1, 0), xi=xi)
        for xi in dominant_weights_of_level(rd, 2)
    ]
    first = tables[0].stats["coord_pairing"]
    for table in tables[1:]:
        assert table.stats["coord_pairing"] == first


def test_build_psi_embedding_guards():
    with pytest.raises(PreconditionError):
        build_psi_embedding(T2, 2, 2, (1, 1, 0))  # k = l
    with pytest.raises(PreconditionError):
        build_psi_embedding(T2, 1, 2, (1, 1, 0))  # level mismatch
    with pytest.raises(InvalidTypeError):
        build_psi_embedding(C2, 1, 2, (1, 0, 0))


def test_sigma_inv_consistent_with_minimal_element_matching():
    # the per-family lambda' formula must agree with matching minimal elements:
    # sigma is defined by sigma(phi(b)) = eps(b) on B_l^min
    for l in (1, 2, 3):
        for b in minimal_elements(T2, l):
            assert sigma_inv(T2, b.eps_weight()) == b.phi_weight()
