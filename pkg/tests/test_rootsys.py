import itertools

import pytest

from clusterpos.errors import IndexOutOfRange, NotAdapted, NotReduced, UnsupportedType
from clusterpos.rootsys import (
    adapted_longest_word,
    apply_word,
    build_root_system,
    is_adapted,
    longest_word,
    parabolic_longest_word,
    reflect,
    type_a_permutation,
    word_indexing,
    word_status,
    word_to_weight,
)

A3_WORD = (2, 1, 3, 2, 1, 3)
D4_WORD = (1, 2, 3, 1, 2, 3, 4, 3, 2, 1, 3, 4)


@pytest.mark.parametrize("family,rank,count", [
    ("A", 1, 1), ("A", 2, 3), ("A", 3, 6), ("A", 4, 10), ("D", 4, 12), ("D", 5, 20),
    ("E", 6, 36), ("E", 7, 63), ("E", 8, 120),
])
def test_positive_root_counts(family, rank, count):
    assert build_root_system(family, rank).longest_length == count


def test_d4_cartan_center_is_3():
    c = build_root_system("D", 4).cartan
    assert c[0][2] == c[1][2] == c[3][2] == -1
    off = [(i, j) for i in range(4) for j in range(4) if i != j and c[i][j]]
    assert sorted(off) == [(0, 2), (1, 2), (2, 0), (2, 1), (2, 3), (3, 2)]


def test_cartan_symmetric_for_all_supported():
    for fam, rank in [("A", 5), ("D", 6), ("E", 6), ("E", 8)]:
        c = build_root_system(fam, rank).cartan
        assert all(c[i][j] == c[j][i] for i in range(rank) for j in range(rank))


@pytest.mark.parametrize("family,rank", [("B", 3), ("D", 3), ("E", 9), ("A", 0)])
def test_unsupported(family, rank):
    with pytest.raises(UnsupportedType):
        build_root_system(family, rank)


def test_reflect_and_index_errors():
    d4 = build_root_system("D", 4)
    assert reflect(d4, 3, (0, 0, 1, 0)) == (1, 1, -1, 1)
    with pytest.raises(IndexOutOfRange):
        reflect(d4, 5, (0, 0, 1, 0))
    with pytest.raises(IndexOutOfRange):
        word_status(d4, (1, 0))


def test_w0_sends_varpi1_to_minus_varpi3_in_a3():
    a3 = build_root_system("A", 3)
    assert apply_word(a3, longest_word(a3), (1, 0, 0)) == (0, 0, -1)


def test_word_status_examples():
    assert word_status(build_root_system("A", 3), A3_WORD) == (6, True)
    assert word_status(build_root_system("D", 4), D4_WORD) == (12, True)
    assert word_status(build_root_system("A", 2), (1, 1)) == (0, False)
    assert word_status(build_root_system("A", 3), ()) == (0, True)


def test_length_counts_inversions_in_type_a():
    # oracle: inversions of the permutation model
    a4 = build_root_system("A", 4)
    for word in itertools.product(range(1, 5), repeat=4):
        perm = type_a_permutation(a4, word)
        inv = sum(1 for i in range(5) for j in range(i + 1, 5) if perm[i] > perm[j])
        assert word_status(a4, word)[0] == inv


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 4), ("D", 4), ("D", 5), ("E", 6), ("E", 7)])
def test_longest_word_is_reduced_and_maximal(family, rank):
    rs = build_root_system(family, rank)
    w = longest_word(rs)
    assert word_status(rs, w) == (rs.longest_length, True)


def test_parabolic_and_adapted_words():
    a3 = build_root_system("A", 3)
    assert parabolic_longest_word(a3, {2}) == (2,)
    w = adapted_longest_word(a3, {2})
    assert w[0] == 2 and word_status(a3, w) == (6, True)
    assert is_adapted(a3, A3_WORD, {2})
    d4 = build_root_system("D", 4)
    w = adapted_longest_word(d4, {1, 2, 3})
    assert len(parabolic_longest_word(d4, {1, 2, 3})) == 6
    assert set(w[:6]) <= {1, 2, 3} and word_status(d4, w[:6]) == (6, True)
    assert word_status(d4, w) == (12, True)
    assert is_adapted(d4, D4_WORD, {1, 2, 3})
    assert not is_adapted(a3, (1, 2, 1, 3, 2, 1), {2})


def test_a3_indexing_golden():
    ix = word_indexing(build_root_system("A", 3), A3_WORD, {2})
    assert ix.t_K == {1: -1, 2: 1, 3: -3}
    assert ix.last == {2: 4, 1: 5, 3: 6}
    assert set(ix.mutable) == {1, 2, 3}
    assert set(ix.I_K) == {-1, 1, -3}
    assert set(ix.e_K) == {2, 3}
    assert ix.k_minus == {1: -2, 2: -1, 3: -3, 4: 1, 5: 2, 6: 3}
    assert ix.k_plus[1] == 4 and ix.k_plus[4] is None


def test_d4_indexing_golden():
    ix = word_indexing(build_root_system("D", 4), D4_WORD, {1, 2, 3})
    assert set(ix.mutable) == set(range(1, 9))
    assert set(ix.I_K) == {-4, 4, 5, 6}
    assert set(ix.e_K) == {7, 8}
    # |I_K| = n, disjoint from e_K, and |I_K ∪ e_K| = 6
    assert len(ix.I_K) == 4 and not (ix.I_K & ix.e_K) and len(ix.kept) == 6


def test_indexing_errors():
    a3 = build_root_system("A", 3)
    with pytest.raises(NotReduced):
        word_indexing(a3, (1, 1, 2, 3, 2, 1))
    with pytest.raises(NotAdapted):
        word_indexing(a3, (1, 2, 1, 3, 2, 1), {2})


def test_word_to_weight_inverts_apply_word():
    d4 = build_root_system("D", 4)
    w = (3, 1, 2, 3, 4)
    mu = apply_word(d4, w, d4.fundamental_weight(4))
    found = word_to_weight(d4, 4, mu)
    assert apply_word(d4, found, d4.fundamental_weight(4)) == mu
    assert word_status(d4, found)[1]
    with pytest.raises(ValueError):
        word_to_weight(d4, 4, (1, 0, 0, 0))
