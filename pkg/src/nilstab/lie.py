"""Free Lie ring on r generators, truncated at degree c, in the Lyndon basis.

Sign convention, used everywhere: the basis monomial of a Lyndon word w with
standard factorization (u, v) denotes the bracket [u, v], in that order.

Brackets are computed through the associative envelope: every basis monomial
expands to an integer noncommutative polynomial (its iterated commutator
XY - YX), products happen there, and the result is pulled back through the
triangular system given by the fact that the expansion of a Lyndon monomial
is its word plus lexicographically larger anagrams.  The same expansion is
the independent oracle for everything the bracket does.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .series import poly_add, poly_component, poly_mul, poly_scale, poly_sub
from .words import LyndonBasisElement, bracketing, is_lyndon


class LieSpanError(ValueError):
    """A polynomial component is not an integer combination of Lyndon monomials."""


@lru_cache(maxsize=None)
def envelope_polynomial(word: tuple) -> dict:
    """Associative expansion of the standard bracketing of a Lyndon word.

    Keys are words (tuples), values integers; homogeneous of degree len(word).
    """

    def expand(tree) -> dict:
        if isinstance(tree, int):
            return {(tree,): 1}
        left = expand(tree[0])
        right = expand(tree[1])
        deg = 10**9  # homogeneous: no truncation wanted
        return poly_sub(poly_mul(left, right, deg), poly_mul(right, left, deg))

    return expand(bracketing(word))


def lyndon_coordinates(component: dict) -> dict:
    """Coordinates of a homogeneous polynomial in the Lyndon monomial basis.

    Peels the lexicographically smallest remaining word; it must be Lyndon and
    its coefficient is the coordinate (expansion is unitriangular).  Raises
    LieSpanError if the input is not in the integer span.
    """
    residual = dict(component)
    coords: dict = {}
    while residual:
        w = min(residual)
        if not is_lyndon(w):
            raise LieSpanError(f"word {w} obstructs the Lyndon peel")
        e = residual[w]
        coords[w] = e
        residual = poly_sub(residual, poly_scale(envelope_polynomial(w), e))
    return coords


@dataclass(frozen=True)
class LieElement:
    """Graded integer combination of Lyndon bracket monomials, degrees <= class_bound."""

    rank: int
    class_bound: int
    terms: dict  # LyndonBasisElement -> nonzero int

    def __post_init__(self):
        for b, c in self.terms.items():
            if c == 0:
                raise ValueError("zero coefficient stored")
            if b.degree > self.class_bound:
                raise ValueError("degree beyond class bound")
            if any(x > self.rank for x in b.word):
                raise ValueError("letter out of range")

    @classmethod
    def zero(cls, rank: int, class_bound: int) -> "LieElement":
        return cls(rank, class_bound, {})

    @classmethod
    def generator(cls, rank: int, class_bound: int, i: int) -> "LieElement":
        if not 1 <= i <= rank:
            raise ValueError("generator index out of range")
        return cls(rank, class_bound, {LyndonBasisElement((i,)): 1})

    @classmethod
    def from_word_coords(cls, rank: int, class_bound: int, coords: dict) -> "LieElement":
        terms = {LyndonBasisElement(w): c for w, c in coords.items() if c}
        return cls(rank, class_bound, terms)

    def _check(self, other: "LieElement"):
        if (self.rank, self.class_bound) != (other.rank, other.class_bound):
            raise ValueError("rank/class mismatch")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        terms = dict(self.terms)
        for b, c in other.terms.items():
            s = terms.get(b, 0) + c
            if s:
                terms[b] = s
            else:
                del terms[b]
        return LieElement(self.rank, self.class_bound, terms)

    def __neg__(self) -> "LieElement":
        return LieElement(self.rank, self.class_bound, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, s: int) -> "LieElement":
        if s == 0:
            return LieElement.zero(self.rank, self.class_bound)
        return LieElement(self.rank, self.class_bound, {b: s * c for b, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {b.degree for b in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def envelope(self) -> dict:
        """Expansion in the free associative ring (degrees <= class_bound)."""
        out: dict = {}
        for b, c in self.terms.items():
            out = poly_add(out, poly_scale(envelope_polynomial(b.word), c))
        return out

    def coordinates(self, basis) -> tuple:
        """Coefficient vector with respect to an ordered basis of LyndonBasisElements."""
        return tuple(self.terms.get(b, 0) for b in basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieElement)
            and (self.rank, self.class_bound) == (other.rank, other.class_bound)
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "LieElement(0)"
        bits = []
        for b in sorted(self.terms, key=LyndonBasisElement.sort_key):
            c = self.terms[b]
            word = "".join(map(str, b.word))
            bits.append(f"{c:+d}*[{word}]")
        return f"LieElement({' '.join(bits)})"


def lie_from_polynomial(rank: int, class_bound: int, poly: dict) -> LieElement:
    """Pull an associative polynomial back to the Lyndon basis, degree by degree."""
    coords: dict = {}
    degrees = sorted({len(w) for w in poly})
    for n in degrees:
        if n == 0 or n > class_bound:
            continue
        coords.update(lyndon_coordinates(poly_component(poly, n)))
    return LieElement.from_word_coords(rank, class_bound, coords)


def lie_bracket(x: LieElement, y: LieElement) -> LieElement:
    """[x, y], rewritten to the Lyndon basis; degrees beyond the bound vanish."""
    x._check(y)
    c = x.class_bound
    ex, ey = x.envelope(), y.envelope()
    comm = poly_sub(poly_mul(ex, ey, c), poly_mul(ey, ex, c))
    return lie_from_polynomial(x.rank, c, comm)


def lie_apply_matrix(a, x: LieElement) -> LieElement:
    """Substitute letter i -> sum_j a[j][i] * letter j and rewrite to the basis.

    The substitution acts on the associative expansion (a ring endomorphism),
    which agrees with the bracket-tree substitution because expansion is a Lie
    map into the envelope.
    """
    r = x.rank
    if len(a) != r or any(len(row) != r for row in a):
        raise ValueError("matrix size does not match rank")
    letter_image = [{(j + 1,): a[j][i] for j in range(r) if a[j][i]} for i in range(r)]
    prefix_cache: dict = {(): {(): 1}}

    def substituted(word: tuple) -> dict:
        cached = prefix_cache.get(word)
        if cached is None:
            cached = poly_mul(substituted(word[:-1]), letter_image[word[-1] - 1], x.class_bound)
            prefix_cache[word] = cached
        return cached

    out: dict = {}
    for word, coeff in x.envelope().items():
        out = poly_add(out, poly_scale(substituted(word), coeff))
    return lie_from_polynomial(r, x.class_bound, out)


def lie_layer_matrix(a, r: int, n: int):
    """Matrix of the substitution action on the degree-n Lyndon basis.

    Column i is the image of the i-th basis monomial, in basis order.
    """
    from .words import lyndon_basis

    basis = lyndon_basis(r, n)
    cols = []
    for b in basis:
        x = LieElement(r, n, {b: 1})
        cols.append(lie_apply_matrix(a, x).coordinates(basis))
    return tuple(tuple(col[i] for col in cols) for i in range(len(basis)))


def graded_coordinates(x: LieElement) -> dict:
    """Map degree -> coefficient tuple over the degree's Lyndon basis."""
    from .words import lyndon_basis

    out = {}
    for n in sorted(x.degrees()):
        out[n] = x.coordinates(lyndon_basis(x.rank, n))
    return out


def witt_check(r: int, n: int) -> bool:
    """Desk-scale Witt theorem: basis size against the Moebius sum."""
    from .words import lyndon_words, witt_rank

    return len(lyndon_words(r, n)) == witt_rank(r, n)
