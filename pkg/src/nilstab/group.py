"""Exact arithmetic in the free nilpotent group of class c on r generators.

Elements are kept in collected normal form: an exponent for every Lyndon
basic commutator of degree <= c, multiplied out in (degree, word) order.
Products, inverses and commutators go through the Magnus embedding
x_i -> 1 + X_i into the truncated series ring; the collected form comes back
by peeling the series degree by degree.  Uniqueness of the collected form is
exactly injectivity of the embedding plus the peel.

Group commutator convention, used everywhere: [g, h] = g^-1 h^-1 g h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .lie import LieElement, LieSpanError, lyndon_coordinates
from .series import (
    TruncatedSeries,
    poly_component,
    poly_group_commutator,
    poly_mul,
    poly_unit_inverse,
    poly_unit_pow,
)
from .words import LyndonBasisElement, witt_rank


class NotAGroupElement(ValueError):
    """A truncated series that is not in the image of the Magnus embedding."""


@lru_cache(maxsize=None)
def _basic_series(r: int, c: int, word: tuple) -> dict:
    """Magnus series of the basic commutator of a Lyndon word, as a raw dict."""
    if len(word) == 1:
        return {(): 1, word: 1}
    from .words import standard_factorization

    u, v = standard_factorization(word)
    return poly_group_commutator(_basic_series(r, c, u), _basic_series(r, c, v), c)


@dataclass(frozen=True, eq=False, repr=False)
class GroupElement:
    rank: int
    class_bound: int
    exponents: dict  # LyndonBasisElement -> nonzero int
    _series: list = field(default_factory=list, compare=False)

    def __post_init__(self):
        if self.rank < 1 or self.class_bound < 1:
            raise ValueError("need rank >= 1 and class >= 1")
        for b, e in self.exponents.items():
            if e == 0:
                raise ValueError("zero exponent stored")
            if b.degree > self.class_bound:
                raise ValueError("degree beyond class bound")
            if any(x > self.rank for x in b.word):
                raise ValueError("letter out of range")

    @classmethod
    def identity(cls, rank: int, class_bound: int) -> "GroupElement":
        return cls(rank, class_bound, {})

    @classmethod
    def generator(cls, rank: int, class_bound: int, i: int) -> "GroupElement":
        if not 1 <= i <= rank:
            raise ValueError("generator index out of range")
        return cls(rank, class_bound, {LyndonBasisElement((i,)): 1})

    @classmethod
    def from_exponents(cls, rank: int, class_bound: int, exps: dict) -> "GroupElement":
        cleaned = {}
        for key, e in exps.items():
            if e == 0:
                continue
            b = key if isinstance(key, LyndonBasisElement) else LyndonBasisElement(tuple(key))
            cleaned[b] = e
        return cls(rank, class_bound, cleaned)

    def is_identity(self) -> bool:
        return not self.exponents

    def _check(self, other: "GroupElement"):
        if (self.rank, self.class_bound) != (other.rank, other.class_bound):
            raise ValueError("rank/class mismatch")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and (self.rank, self.class_bound) == (other.rank, other.class_bound)
            and self.exponents == other.exponents
        )

    def __hash__(self) -> int:
        items = tuple(sorted((b.word, e) for b, e in self.exponents.items()))
        return hash((self.rank, self.class_bound, items))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return mul(self, other)

    def inverse(self) -> "GroupElement":
        return inv(self)

    def __repr__(self) -> str:
        if self.rank <= len(_LETTERS):
            body = element_to_text(self)
        else:
            body = repr(sorted((b.word, e) for b, e in self.exponents.items()))
        return f"GroupElement({self.rank}, {self.class_bound}, {body!r})"


def magnus_embed(g: GroupElement) -> TruncatedSeries:
    """Product, in basis order, of each basic commutator's series to its exponent."""
    if g._series:
        return g._series[0]
    r, c = g.rank, g.class_bound
    acc = {(): 1}
    for b in sorted(g.exponents, key=LyndonBasisElement.sort_key):
        power = poly_unit_pow(_basic_series(r, c, b.word), g.exponents[b], c)
        acc = poly_mul(acc, power, c)
    result = TruncatedSeries(r, c, acc)
    g._series.append(result)
    return result


def _peel(r: int, c: int, coeffs: dict) -> dict:
    """Exponent dict of the collected form of a series, or raise NotAGroupElement."""
    if coeffs.get((), 0) != 1:
        raise NotAGroupElement("constant term is not 1")
    t = coeffs
    exps: dict = {}
    for n in range(1, c + 1):
        component = poly_component(t, n)
        if not component:
            continue
        try:
            coords = lyndon_coordinates(component)
        except LieSpanError as err:
            raise NotAGroupElement(
                f"degree-{n} residual is not in the Lie span: {err}"
            ) from err
        prefix = {(): 1}
        for word in sorted(coords):
            e = coords[word]
            exps[LyndonBasisElement(word)] = e
            prefix = poly_mul(prefix, poly_unit_pow(_basic_series(r, c, word), e, c), c)
        t = poly_mul(poly_unit_inverse(prefix, c), t, c)
    if t != {(): 1}:
        raise NotAGroupElement("nonzero residual after peeling all degrees")
    return exps


def magnus_peel(s: TruncatedSeries) -> GroupElement:
    """Inverse of magnus_embed on its image; errors on anything else."""
    exps = _peel(s.rank, s.class_bound, s.coefficients)
    g = GroupElement(s.rank, s.class_bound, exps)
    g._series.append(s)
    return g


def _from_series(r: int, c: int, coeffs: dict) -> GroupElement:
    g = GroupElement(r, c, _peel(r, c, coeffs))
    g._series.append(TruncatedSeries(r, c, coeffs))
    return g


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    g._check(h)
    c = g.class_bound
    prod = poly_mul(magnus_embed(g).coefficients, magnus_embed(h).coefficients, c)
    return _from_series(g.rank, c, prod)


def inv(g: GroupElement) -> GroupElement:
    c = g.class_bound
    return _from_series(g.rank, c, poly_unit_inverse(magnus_embed(g).coefficients, c))


def comm(g: GroupElement, h: GroupElement) -> GroupElement:
    """Group commutator g^-1 h^-1 g h."""
    g._check(h)
    c = g.class_bound
    series = poly_group_commutator(
        magnus_embed(g).coefficients, magnus_embed(h).coefficients, c
    )
    return _from_series(g.rank, c, series)


def truncate(g: GroupElement, new_class: int) -> GroupElement:
    """Image under the quotient to class new_class (drops higher-degree exponents)."""
    if not 1 <= new_class <= g.class_bound:
        raise ValueError("truncation class must satisfy 1 <= c' <= class_bound")
    exps = {b: e for b, e in g.exponents.items() if b.degree <= new_class}
    return GroupElement(g.rank, new_class, exps)


def lcs_degree(g: GroupElement):
    """Largest n with g in the n-th lower central subgroup; math.inf for the identity."""
    if g.is_identity():
        return math.inf
    return min(b.degree for b in g.exponents)


def leading_lie_part(g: GroupElement) -> LieElement:
    """Class of g in the graded layer of its lower-central-series degree."""
    n = lcs_degree(g)
    if n is math.inf:
        raise ValueError("the identity has no leading layer")
    terms = {b: e for b, e in g.exponents.items() if b.degree == n}
    return LieElement(g.rank, g.class_bound, terms)


def center_test(g: GroupElement) -> bool:
    """True iff g commutes with every generator."""
    for i in range(1, g.rank + 1):
        if not comm(g, GroupElement.generator(g.rank, g.class_bound, i)).is_identity():
            return False
    return True


def h1_rank(r: int, c: int) -> int:
    """First integral homology: the abelianization is free of rank r."""
    if r < 1 or c < 1:
        raise ValueError("need r >= 1 and c >= 1")
    return r


def h2_rank(r: int, c: int) -> int:
    """Second integral homology: free of the Witt rank in degree c + 1."""
    if r < 1 or c < 1:
        raise ValueError("need r >= 1 and c >= 1")
    return witt_rank(r, c + 1)


# --- text and JSON encodings -------------------------------------------------

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _word_to_text(word: tuple) -> str:
    return "".join(_LETTERS[x - 1] for x in word)


def _text_to_word(text: str) -> tuple:
    return tuple(_LETTERS.index(ch) + 1 for ch in text)


def element_to_text(g: GroupElement) -> str:
    """Collected form like 'a^2 * b^-1 * [ab]^3'; the identity prints as '1'."""
    if g.rank > len(_LETTERS):
        raise ValueError("text encoding supports rank <= 26")
    parts = []
    for b in sorted(g.exponents, key=LyndonBasisElement.sort_key):
        e = g.exponents[b]
        atom = _word_to_text(b.word) if b.degree == 1 else f"[{_word_to_text(b.word)}]"
        parts.append(atom if e == 1 else f"{atom}^{e}")
    return " * ".join(parts) if parts else "1"


def parse_element(text: str, rank: int, class_bound: int) -> GroupElement:
    """Parse the element syntax; whitespace-insensitive, '1' is the identity."""
    compact = "".join(text.split())
    if compact in ("", "1"):
        return GroupElement.identity(rank, class_bound)
    exps: dict = {}
    for token in compact.split("*"):
        if not token:
            raise ValueError("empty factor in element expression")
        if "^" in token:
            atom, _, power = token.partition("^")
            try:
                e = int(power)
            except ValueError:
                raise ValueError(f"bad exponent in {token!r}") from None
        else:
            atom, e = token, 1
        if atom.startswith("[") and atom.endswith("]"):
            atom = atom[1:-1]
        if not atom or any(ch not in _LETTERS for ch in atom):
            raise ValueError(f"bad word {atom!r}")
        word = _text_to_word(atom)
        if any(x > rank for x in word):
            raise ValueError(f"letter out of range for rank {rank} in {atom!r}")
        if len(word) > class_bound:
            raise ValueError(f"word {atom!r} is longer than the class bound")
        try:
            b = LyndonBasisElement(word)
        except ValueError:
            raise ValueError(f"{atom!r} is not a Lyndon word") from None
        exps[b] = exps.get(b, 0) + e
    return GroupElement.from_exponents(rank, class_bound, exps)


def element_to_json(g: GroupElement) -> dict:
    exponents = [
        [_word_to_text(b.word), e]
        for b, e in sorted(g.exponents.items(), key=lambda kv: kv[0].sort_key())
    ]
    return {"rank": g.rank, "class": g.class_bound, "exponents": exponents}


def element_from_json(obj: dict) -> GroupElement:
    rank, class_bound = int(obj["rank"]), int(obj["class"])
    exps: dict = {}
    for word_text, e in obj["exponents"]:
        exps[LyndonBasisElement(_text_to_word(word_text))] = int(e)
    return GroupElement.from_exponents(rank, class_bound, exps)
