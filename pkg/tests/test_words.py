"""Number-theoretic and word-combinatorial layers, checked against brute force."""

import pytest

from nilstab.words import (
    LyndonBasisElement,
    bracketing,
    divisors,
    graded_basis,
    is_lyndon,
    lyndon_basis,
    lyndon_words,
    mobius,
    standard_factorization,
    witt_rank,
)


def mobius_oracle(n):
    """Independent Moebius via full trial factorization."""
    factors = []
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            factors.append(p)
            m //= p
        p += 1
    if m > 1:
        factors.append(m)
    if len(set(factors)) != len(factors):
        return 0
    return (-1) ** len(factors)


def brute_force_lyndon(r, n):
    """All rotation-minimal words of length n, by direct enumeration."""
    from itertools import product

    out = []
    for w in product(range(1, r + 1), repeat=n):
        if all(w < w[i:] + w[:i] for i in range(1, n)):
            out.append(w)
    return out


def test_mobius_small_values():
    assert mobius(1) == 1
    assert mobius(6) == 1
    assert mobius(12) == 0


def test_mobius_against_factorization_oracle():
    for n in range(1, 200):
        assert mobius(n) == mobius_oracle(n)


def test_mobius_divisor_sums_vanish():
    for n in range(2, 200):
        assert sum(mobius(d) for d in divisors(n)) == 0
    assert sum(mobius(d) for d in divisors(1)) == 1


def test_mobius_rejects_zero():
    with pytest.raises(ValueError):
        mobius(0)


def test_witt_rank_values():
    assert [witt_rank(2, n) for n in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    assert witt_rank(3, 2) == 3
    assert witt_rank(3, 3) == 8
    for r in range(1, 6):
        assert witt_rank(r, 1) == r


def test_witt_necklace_identity():
    # sum over divisors of d * witt(r, d) recovers r^n
    for r in range(1, 6):
        for n in range(1, 9):
            assert sum(d * witt_rank(r, d) for d in divisors(n)) == r**n


def test_witt_rank_rejects_bad_input():
    with pytest.raises(ValueError):
        witt_rank(0, 1)
    with pytest.raises(ValueError):
        witt_rank(1, 0)


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_lyndon_words_against_brute_force(r, n):
    words = lyndon_words(r, n)
    assert words == brute_force_lyndon(r, n)
    assert words == sorted(words)
    assert len(words) == witt_rank(r, n)


def test_lyndon_examples():
    assert lyndon_words(2, 1) == [(1,), (2,)]
    assert lyndon_words(2, 2) == [(1, 2)]
    assert lyndon_words(2, 4) == [(1, 1, 1, 2), (1, 1, 2, 2), (1, 2, 2, 2)]


def test_standard_factorization_is_smallest_suffix():
    for r in (2, 3):
        for n in range(2, 7):
            for w in lyndon_words(r, n):
                u, v = standard_factorization(w)
                assert u + v == w
                assert is_lyndon(u) and is_lyndon(v)
                assert u < v
                # v is the longest proper Lyndon suffix
                longer = [w[i:] for i in range(1, len(w) - len(v)) if is_lyndon(w[i:])]
                assert not longer


def test_bracketing_leaf_count():
    def leaves(tree):
        if isinstance(tree, int):
            return 1
        return leaves(tree[0]) + leaves(tree[1])

    for b in graded_basis(3, 5):
        assert leaves(b.tree) == b.degree


def test_basis_element_rejects_non_lyndon():
    with pytest.raises(ValueError):
        LyndonBasisElement((2, 1))
    with pytest.raises(ValueError):
        LyndonBasisElement((1, 1))


def test_basis_order_is_degree_then_lex():
    basis = graded_basis(2, 3)
    keys = [b.sort_key() for b in basis]
    assert keys == sorted(keys)
    assert [b.word for b in lyndon_basis(2, 3)] == [(1, 1, 2), (1, 2, 2)]
