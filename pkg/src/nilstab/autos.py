"""Endomorphisms and automorphisms of the free nilpotent groups.

An endomorphism is its list of generator images.  Applying one to an element
happens on the Magnus side: the ring substitution X_i -> embed(image_i) - 1
followed by the peel.  The projection to class c-1, the set-theoretic lift
back, and the mutually inverse maps between the kernel of the projection and
integer matrices (one column of top-degree coordinates per generator) realize
the automorphism tower step by step.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intlinalg
from .group import (
    GroupElement,
    element_from_json,
    element_to_json,
    inv,
    magnus_embed,
    mul,
    truncate,
)
from .series import poly_add, poly_mul, poly_scale
from .words import LyndonBasisElement, lyndon_basis, witt_rank


@dataclass(frozen=True)
class Endo:
    """Endomorphism of the rank-r class-c free nilpotent group, by generator images."""

    rank: int
    class_bound: int
    images: tuple  # r GroupElements

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise ValueError("need exactly one image per generator")
        for g in self.images:
            if (g.rank, g.class_bound) != (self.rank, self.class_bound):
                raise ValueError("image has mismatched rank/class")

    @classmethod
    def identity(cls, rank: int, class_bound: int) -> "Endo":
        gens = tuple(GroupElement.generator(rank, class_bound, i) for i in range(1, rank + 1))
        return cls(rank, class_bound, gens)

    def is_identity(self) -> bool:
        return self == Endo.identity(self.rank, self.class_bound)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Endo)
            and (self.rank, self.class_bound) == (other.rank, other.class_bound)
            and all(a == b for a, b in zip(self.images, other.images))
        )

    def __hash__(self):
        return hash((self.rank, self.class_bound, self.images))


def endo_from_images(images) -> Endo:
    images = tuple(images)
    if not images:
        raise ValueError("no generator images given")
    g0 = images[0]
    return Endo(g0.rank, g0.class_bound, images)


def apply_endo(e: Endo, g: GroupElement) -> GroupElement:
    """e(g), computed by ring substitution on the Magnus series of g."""
    if (e.rank, e.class_bound) != (g.rank, g.class_bound):
        raise ValueError("rank/class mismatch")
    c = e.class_bound
    letter_series = []
    for img in e.images:
        coeffs = dict(magnus_embed(img).coefficients)
        coeffs.pop((), None)  # X_i goes to embed(image) - 1
        letter_series.append(coeffs)
    prefix_cache: dict = {(): {(): 1}}

    def substituted(word: tuple) -> dict:
        cached = prefix_cache.get(word)
        if cached is None:
            cached = poly_mul(substituted(word[:-1]), letter_series[word[-1] - 1], c)
            prefix_cache[word] = cached
        return cached

    out: dict = {}
    for word, coeff in magnus_embed(g).coefficients.items():
        out = poly_add(out, poly_scale(substituted(word), coeff))
    from .group import _from_series

    return _from_series(e.rank, c, out)


def compose(e1: Endo, e2: Endo) -> Endo:
    """e1 after e2: generator i goes to e1(e2(x_i))."""
    if (e1.rank, e1.class_bound) != (e2.rank, e2.class_bound):
        raise ValueError("rank/class mismatch")
    return Endo(e1.rank, e1.class_bound, tuple(apply_endo(e1, img) for img in e2.images))


def abelianization_matrix(e: Endo):
    """Degree-1 exponents of the images; column i is the abelianized image of x_i."""
    r = e.rank
    cols = []
    for img in e.images:
        col = [0] * r
        for b, exp in img.exponents.items():
            if b.degree == 1:
                col[b.word[0] - 1] = exp
        cols.append(col)
    return tuple(tuple(cols[i][j] for i in range(r)) for j in range(r))


def is_automorphism(e: Endo) -> bool:
    return intlinalg.det(abelianization_matrix(e)) in (1, -1)


def endo_from_matrix(a, rank: int, class_bound: int) -> Endo:
    """The endomorphism sending x_i to the collected word with abelianization column i."""
    images = []
    for i in range(rank):
        exps = {
            LyndonBasisElement((j + 1,)): a[j][i] for j in range(rank) if a[j][i]
        }
        images.append(GroupElement(rank, class_bound, exps))
    return Endo(rank, class_bound, tuple(images))


def invert(e: Endo) -> Endo:
    """Two-sided inverse; starts from the abelianized inverse and corrects upward."""
    if not is_automorphism(e):
        raise ValueError("not invertible: abelianization determinant is not +-1")
    r, c = e.rank, e.class_bound
    a_inv = intlinalg.int_inverse(abelianization_matrix(e))
    f = endo_from_matrix(a_inv, r, c)
    h = compose(e, f)  # abelianization is now the identity
    identity = Endo.identity(r, c)
    for _ in range(c):
        if h == identity:
            break
        correction = []
        for i in range(r):
            x_i = GroupElement.generator(r, c, i + 1)
            defect = mul(inv(x_i), h.images[i])  # lies one degree deeper each pass
            correction.append(mul(x_i, inv(defect)))
        u = Endo(r, c, tuple(correction))
        f = compose(f, u)
        h = compose(h, u)
    if h != identity or compose(f, e) != identity:
        raise AssertionError("inverse correction failed to terminate")
    return f


def project(e: Endo) -> Endo:
    """Induced endomorphism of the class-(c-1) quotient."""
    if e.class_bound < 2:
        raise ValueError("cannot project below class 1")
    return Endo(
        e.rank,
        e.class_bound - 1,
        tuple(truncate(img, e.class_bound - 1) for img in e.images),
    )


def lift(phi: Endo) -> Endo:
    """Set-theoretic lift to one class higher: reread the same collected words."""
    if not is_automorphism(phi):
        raise ValueError("lift expects an automorphism")
    c = phi.class_bound + 1
    images = tuple(
        GroupElement(phi.rank, c, dict(img.exponents)) for img in phi.images
    )
    return Endo(phi.rank, c, images)


def lift_to_class(phi: Endo, class_bound: int) -> Endo:
    e = phi
    while e.class_bound < class_bound:
        e = lift(e)
    return e


@dataclass(frozen=True)
class HomMap:
    """Additive map from the abelianization to the top graded layer.

    matrix has witt_rank(rank, class_of_target) rows (degree-c Lyndon order)
    and rank columns (one per generator).
    """

    rank: int
    class_of_target: int
    matrix: tuple

    def __post_init__(self):
        rows = witt_rank(self.rank, self.class_of_target)
        if len(self.matrix) != rows or any(len(row) != self.rank for row in self.matrix):
            raise ValueError("HomMap matrix has wrong dimensions")

    @classmethod
    def zero(cls, rank: int, class_of_target: int) -> "HomMap":
        rows = witt_rank(rank, class_of_target)
        return cls(rank, class_of_target, intlinalg.zero_matrix(rows, rank))

    @classmethod
    def basis_element(cls, rank: int, class_of_target: int, row: int, col: int) -> "HomMap":
        rows = witt_rank(rank, class_of_target)
        mat = [[0] * rank for _ in range(rows)]
        mat[row][col] = 1
        return cls(rank, class_of_target, intlinalg.freeze(mat))

    def __add__(self, other: "HomMap") -> "HomMap":
        if (self.rank, self.class_of_target) != (other.rank, other.class_of_target):
            raise ValueError("HomMap mismatch")
        return HomMap(self.rank, self.class_of_target, intlinalg.mat_add(self.matrix, other.matrix))

    def __neg__(self) -> "HomMap":
        return HomMap(self.rank, self.class_of_target, intlinalg.mat_neg(self.matrix))

    def __sub__(self, other: "HomMap") -> "HomMap":
        return self + (-other)


def _central_from_column(rank: int, class_bound: int, column) -> GroupElement:
    basis = lyndon_basis(rank, class_bound)
    exps = {b: x for b, x in zip(basis, column) if x}
    return GroupElement(rank, class_bound, exps)


def flat(alpha: Endo) -> HomMap:
    """Column i is alpha(x_i) * x_i^-1, read off in the top-degree Lyndon basis."""
    r, c = alpha.rank, alpha.class_bound
    if c < 2:
        raise ValueError("flat needs class >= 2")
    if project(alpha) != Endo.identity(r, c - 1):
        raise ValueError("not in kernel: projection to class c-1 is not the identity")
    basis = lyndon_basis(r, c)
    cols = []
    for i in range(r):
        x_i = GroupElement.generator(r, c, i + 1)
        k = mul(alpha.images[i], inv(x_i))
        if any(b.degree != c for b in k.exponents):
            raise AssertionError("not central: kernel defect has low-degree support")
        cols.append(tuple(k.exponents.get(b, 0) for b in basis))
    matrix = tuple(tuple(cols[i][j] for i in range(r)) for j in range(len(basis)))
    return HomMap(r, c, matrix)


def sharp(beta: HomMap) -> Endo:
    """Generator x_i goes to (central element with coordinates column i) * x_i."""
    r, c = beta.rank, beta.class_of_target
    images = []
    for i in range(r):
        column = tuple(beta.matrix[j][i] for j in range(len(beta.matrix)))
        central = _central_from_column(r, c, column)
        images.append(mul(central, GroupElement.generator(r, c, i + 1)))
    return Endo(r, c, tuple(images))


def stabilize(e: Endo) -> Endo:
    """Extend to one more generator, fixing the new generator."""
    r, c = e.rank, e.class_bound
    images = [
        GroupElement(r + 1, c, dict(img.exponents)) for img in e.images
    ]
    images.append(GroupElement.generator(r + 1, c, r + 1))
    return Endo(r + 1, c, tuple(images))


def conjugate(e: Endo, alpha: Endo) -> Endo:
    """e alpha e^-1."""
    return compose(compose(e, alpha), invert(e))


def hom_gl_action(a, beta: HomMap) -> HomMap:
    """Action of a GL matrix on a HomMap: top-layer action of a, then a^-1 on sources."""
    from .lie import lie_layer_matrix

    layer = lie_layer_matrix(a, beta.rank, beta.class_of_target)
    a_inv = intlinalg.int_inverse(a)
    new_matrix = intlinalg.matmul(intlinalg.matmul(layer, beta.matrix), a_inv)
    return HomMap(beta.rank, beta.class_of_target, new_matrix)


def endo_to_json(e: Endo) -> dict:
    return {
        "rank": e.rank,
        "class": e.class_bound,
        "images": [element_to_json(img) for img in e.images],
    }


def endo_from_json(obj: dict) -> Endo:
    rank, class_bound = int(obj["rank"]), int(obj["class"])
    images = []
    for img in obj["images"]:
        g = element_from_json(img)
        if (g.rank, g.class_bound) != (rank, class_bound):
            raise ValueError("image rank/class disagrees with the endomorphism")
        images.append(g)
    return Endo(rank, class_bound, tuple(images))
