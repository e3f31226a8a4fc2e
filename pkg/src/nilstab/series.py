"""Truncated noncommutative power series over the integers.

Series live in Z<<X_1..X_r>> modulo words of length > class_bound and are
stored sparsely as word-tuple -> nonzero coefficient.  The empty tuple is the
constant term.  These series carry the Magnus embedding of the free nilpotent
groups and the associative envelope of the free Lie ring.
"""

from __future__ import annotations

from dataclasses import dataclass


def poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w, 0) + c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def poly_neg(a: dict) -> dict:
    return {w: -c for w, c in a.items()}


def poly_sub(a: dict, b: dict) -> dict:
    return poly_add(a, poly_neg(b))


def poly_scale(a: dict, s: int) -> dict:
    if s == 0:
        return {}
    return {w: s * c for w, c in a.items()}


def poly_mul(a: dict, b: dict, max_deg: int) -> dict:
    # bucket by degree once so the pair loop never revisits out-of-range terms
    a_deg: dict = {}
    for w, c in a.items():
        d = len(w)
        if d <= max_deg:
            a_deg.setdefault(d, []).append((w, c))
    b_deg: dict = {}
    for w, c in b.items():
        d = len(w)
        if d <= max_deg:
            b_deg.setdefault(d, []).append((w, c))
    out: dict = {}
    get = out.get
    for da, terms_a in a_deg.items():
        room = max_deg - da
        for db, terms_b in b_deg.items():
            if db > room:
                continue
            for w1, c1 in terms_a:
                for w2, c2 in terms_b:
                    w = w1 + w2
                    s = get(w, 0) + c1 * c2
                    if s:
                        out[w] = s
                    else:
                        del out[w]
    return out


def poly_truncate(a: dict, max_deg: int) -> dict:
    return {w: c for w, c in a.items() if len(w) <= max_deg}


def poly_component(a: dict, n: int) -> dict:
    return {w: c for w, c in a.items() if len(w) == n}


def poly_unit_inverse(a: dict, max_deg: int) -> dict:
    """Inverse of a series with constant term 1, by the Neumann series."""
    if a.get((), 0) != 1:
        raise ValueError("series inverse needs constant term 1")
    x_neg = poly_neg({w: c for w, c in a.items() if w})
    out = {(): 1}
    term = {(): 1}
    for _ in range(max_deg):
        term = poly_mul(term, x_neg, max_deg)
        if not term:
            break
        out = poly_add(out, term)
    return out


def poly_unit_pow(a: dict, e: int, max_deg: int) -> dict:
    """Integer power of a series with constant term 1 (negative e allowed)."""
    if e < 0:
        a = poly_unit_inverse(a, max_deg)
        e = -e
    result = {(): 1}
    base = a
    while e:
        if e & 1:
            result = poly_mul(result, base, max_deg)
        e >>= 1
        if e:
            base = poly_mul(base, base, max_deg)
    return result


def poly_group_commutator(a: dict, b: dict, max_deg: int) -> dict:
    """a^-1 b^-1 a b for unit series."""
    ai = poly_unit_inverse(a, max_deg)
    bi = poly_unit_inverse(b, max_deg)
    return poly_mul(poly_mul(poly_mul(ai, bi, max_deg), a, max_deg), b, max_deg)


@dataclass(frozen=True)
class TruncatedSeries:
    """A truncated series tagged with its rank and degree cutoff."""

    rank: int
    class_bound: int
    coefficients: dict

    def __post_init__(self):
        for w, c in self.coefficients.items():
            if c == 0:
                raise ValueError("zero coefficient stored")
            if len(w) > self.class_bound:
                raise ValueError("word beyond class bound")
            if any(not 1 <= x <= self.rank for x in w):
                raise ValueError("letter out of range")

    @classmethod
    def one(cls, rank: int, class_bound: int) -> "TruncatedSeries":
        return cls(rank, class_bound, {(): 1})

    def _check(self, other: "TruncatedSeries"):
        if (self.rank, self.class_bound) != (other.rank, other.class_bound):
            raise ValueError("rank/class mismatch")

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.rank,
            self.class_bound,
            poly_mul(self.coefficients, other.coefficients, self.class_bound),
        )

    def inverse(self) -> "TruncatedSeries":
        return TruncatedSeries(
            self.rank,
            self.class_bound,
            poly_unit_inverse(self.coefficients, self.class_bound),
        )

    def __pow__(self, e: int) -> "TruncatedSeries":
        return TruncatedSeries(
            self.rank,
            self.class_bound,
            poly_unit_pow(self.coefficients, e, self.class_bound),
        )

    def component(self, n: int) -> dict:
        return poly_component(self.coefficients, n)

    def constant_term(self) -> int:
        return self.coefficients.get((), 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.rank == other.rank
            and self.class_bound == other.class_bound
            and self.coefficients == other.coefficients
        )
