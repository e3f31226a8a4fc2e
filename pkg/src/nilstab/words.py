"""Lyndon words on the alphabet {1..r} and the rank bookkeeping built on them.

A Lyndon word is strictly smaller than every proper rotation of itself.  The
standard factorization w = u.v (v the lexicographically smallest, equivalently
the longest Lyndon, proper suffix) turns each word into a binary bracket tree;
these trees index the monomial basis used everywhere else in the package.
Basis order is by degree, then lexicographic on words.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering


def mobius(n: int) -> int:
    """Moebius function: 0 on non-squarefree n, else (-1)^(number of primes)."""
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def witt_rank(r: int, n: int) -> int:
    """Rank of the degree-n layer of the free Lie ring on r generators."""
    if r < 1 or n < 1:
        raise ValueError("witt_rank needs r >= 1 and n >= 1")
    total = sum(mobius(d) * r ** (n // d) for d in divisors(n))
    if total % n != 0:
        raise AssertionError(f"Witt sum {total} not divisible by {n}")
    return total // n


def is_lyndon(word) -> bool:
    """True iff word is strictly smaller than all of its proper rotations."""
    n = len(word)
    if n == 0:
        return False
    for i in range(1, n):
        if word[i:] + word[:i] <= word:
            return False
    return True


def lyndon_words(r: int, n: int) -> list[tuple]:
    """All Lyndon words of length exactly n over {1..r}, lexicographic (Duval)."""
    if r < 1 or n < 1:
        raise ValueError("lyndon_words needs r >= 1 and n >= 1")
    out = []
    w = [0]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            out.append(tuple(w))
        # extend periodically to length n
        while len(w) < n:
            w.append(w[-m])
        # chop trailing maximal letters
        while w and w[-1] == r:
            w.pop()
    return out


def standard_factorization(word: tuple) -> tuple[tuple, tuple]:
    """Split word = u.v with v the lexicographically smallest proper suffix."""
    if len(word) < 2:
        raise ValueError("only words of length >= 2 factorize")
    best = 1
    for i in range(2, len(word)):
        if word[i:] < word[best:]:
            best = i
    return word[:best], word[best:]


@lru_cache(maxsize=None)
def bracketing(word: tuple):
    """Binary tree of the standard factorization: a letter, or a (left, right) pair."""
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (bracketing(u), bracketing(v))


@total_ordering
@dataclass(frozen=True)
class LyndonBasisElement:
    """A Lyndon word together with its standard bracketing."""

    word: tuple

    def __post_init__(self):
        if not is_lyndon(self.word):
            raise ValueError(f"{self.word} is not a Lyndon word")

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def tree(self):
        return bracketing(self.word)

    def sort_key(self) -> tuple:
        return (len(self.word), self.word)

    def __lt__(self, other) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"LyndonBasisElement({''.join(map(str, self.word))})"


@lru_cache(maxsize=None)
def lyndon_basis(r: int, n: int) -> tuple:
    """Degree-n basis elements over {1..r}, in lexicographic order."""
    return tuple(LyndonBasisElement(w) for w in lyndon_words(r, n))


@lru_cache(maxsize=None)
def graded_basis(r: int, c: int) -> tuple:
    """All basis elements of degree <= c, in (degree, word) order."""
    out = []
    for n in range(1, c + 1):
        out.extend(lyndon_basis(r, n))
    return tuple(out)
