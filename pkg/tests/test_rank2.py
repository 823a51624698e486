from collections import Counter

import pytest

from crystalkit.rank2 import (
    character_counter,
    module_dimension,
    positive_roots,
    weight_multiplicities,
)

A1 = ((2,),)
A2 = ((2, -1), (-1, 2))
B2 = ((2, -1), (-2, 2))
G2 = ((2, -1), (-3, 2))
A1A1 = ((2, 0), (0, 2))


def test_positive_root_counts():
    assert len(positive_roots(A1)) == 1
    assert len(positive_roots(A1A1)) == 2
    assert len(positive_roots(A2)) == 3
    assert len(positive_roots(B2)) == 4
    assert len(positive_roots(G2)) == 6


@pytest.mark.parametrize("m", range(6))
def test_a1_string_dimensions(m):
    assert module_dimension(A1, (m,)) == m + 1


def test_known_dimensions():
    assert module_dimension(A2, (1, 0)) == 3
    assert module_dimension(A2, (1, 1)) == 8
    assert module_dimension(A2, (2, 0)) == 6
    assert module_dimension(A2, (2, 1)) == 15
    assert module_dimension(B2, (1, 0)) == 5
    assert module_dimension(B2, (0, 1)) == 4
    assert module_dimension(B2, (1, 1)) == 16
    assert module_dimension(B2, (0, 2)) == 10
    assert module_dimension(G2, (1, 0)) == 14
    assert module_dimension(G2, (0, 1)) == 7
    assert module_dimension(A1A1, (2, 3)) == 12


def test_adjoint_multiplicity_of_zero_weight():
    # the adjoint of A2 has a 2-dimensional zero weight space
    mults = weight_multiplicities(A2, (1, 1))
    assert mults[(1, 1)] == 2  # offset alpha_1 + alpha_2 lands at weight 0


def test_character_of_vector_rep():
    assert character_counter(A2, (1, 0)) == Counter(
        {(1, 0): 1, (-1, 1): 1, (0, -1): 1}
    )


def test_character_total_is_dimension():
    c = character_counter(B2, (1, 1))
    assert sum(c.values()) == 16
