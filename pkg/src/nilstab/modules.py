"""Polynomial coefficient modules for the general linear groups over Z.

A ModuleSpec is a rank-independent expression tree over the constructors
constant, standard, inverse-transpose dual, direct sum, tensor, exterior
power, Hom, and the graded Lie layers.  Evaluating at a rank r produces a
based free abelian group with a multiplicative GL_r(Z)-action, a
stabilization matrix into the rank r+1 evaluation, and the equivariant
retraction back (costab); Hom needs the retraction on its source, which is
why every evaluation carries one.

Automorphisms of the free nilpotent groups act through their abelianization,
so restriction along that map is just evaluation at the abelianized matrix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

from . import intlinalg
from .intlinalg import Matrix, compound, int_inverse, kron, transpose
from .lie import lie_layer_matrix
from .words import lyndon_words


class ModuleSpec:
    """Base class for the constructor algebra; instances are immutable."""

    def __str__(self) -> str:  # canonical grammar form
        raise NotImplementedError


@dataclass(frozen=True)
class Const(ModuleSpec):
    rank: int = 1

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("constant module needs rank >= 0")

    def __str__(self):
        return "const" if self.rank == 1 else f"const(Z^{self.rank})"


@dataclass(frozen=True)
class Std(ModuleSpec):
    def __str__(self):
        return "std"


@dataclass(frozen=True)
class DualStd(ModuleSpec):
    def __str__(self):
        return "dual"


@dataclass(frozen=True)
class Sum(ModuleSpec):
    left: ModuleSpec
    right: ModuleSpec

    def __str__(self):
        return f"sum({self.left}, {self.right})"


@dataclass(frozen=True)
class Tensor(ModuleSpec):
    left: ModuleSpec
    right: ModuleSpec

    def __str__(self):
        return f"tensor({self.left}, {self.right})"


@dataclass(frozen=True)
class Ext(ModuleSpec):
    power: int
    inner: ModuleSpec

    def __post_init__(self):
        if self.power < 0:
            raise ValueError("exterior power needs t >= 0")

    def __str__(self):
        return f"ext({self.power}, {self.inner})"


@dataclass(frozen=True)
class Hom(ModuleSpec):
    source: ModuleSpec
    target: ModuleSpec

    def __str__(self):
        return f"hom({self.source}, {self.target})"


@dataclass(frozen=True)
class LieLayer(ModuleSpec):
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("Lie layer needs degree >= 1")

    def __str__(self):
        return f"lie({self.degree})"


def _block_embed(a: Matrix) -> Matrix:
    """diag(a, 1): the standard embedding of GL_r into GL_{r+1}."""
    r = len(a)
    out = [row + (0,) for row in a]
    out.append((0,) * r + (1,))
    return tuple(out)


class BasedModule:
    """Evaluation of a spec at a fixed rank: ordered basis, action, stab, costab."""

    def __init__(self, spec: ModuleSpec, rank_of_group: int):
        self.spec = spec
        self.rank_of_group = rank_of_group
        self.basis = _basis(spec, rank_of_group)
        self._action_cache: dict = {}

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def stab(self) -> Matrix:
        return _stab(self.spec, self.rank_of_group)

    @cached_property
    def costab(self) -> Matrix:
        return _costab(self.spec, self.rank_of_group)

    def action(self, a: Matrix) -> Matrix:
        a = intlinalg.freeze(a)
        if len(a) != self.rank_of_group or any(len(row) != self.rank_of_group for row in a):
            raise ValueError("matrix size does not match the group rank")
        cached = self._action_cache.get(a)
        if cached is None:
            a_inv = int_inverse(a)
            cached = _action(self.spec, self.rank_of_group, a, a_inv)
            self._action_cache[a] = cached
        return cached


@lru_cache(maxsize=None)
def eval_module(spec: ModuleSpec, r: int) -> BasedModule:
    if r < 1:
        raise ValueError("evaluation rank must be >= 1")
    return BasedModule(spec, r)


def _basis(spec: ModuleSpec, r: int) -> tuple:
    if isinstance(spec, Const):
        return tuple(("c", i) for i in range(spec.rank))
    if isinstance(spec, Std):
        return tuple(range(1, r + 1))
    if isinstance(spec, DualStd):
        return tuple(("*", i) for i in range(1, r + 1))
    if isinstance(spec, Sum):
        left = _basis(spec.left, r)
        right = _basis(spec.right, r)
        return tuple(("L", x) for x in left) + tuple(("R", x) for x in right)
    if isinstance(spec, Tensor):
        left = _basis(spec.left, r)
        right = _basis(spec.right, r)
        return tuple((x, y) for x in left for y in right)
    if isinstance(spec, Ext):
        inner = _basis(spec.inner, r)
        return tuple(combinations(inner, spec.power))
    if isinstance(spec, Hom):
        src = _basis(spec.source, r)
        tgt = _basis(spec.target, r)
        return tuple((row, col) for row in tgt for col in src)
    if isinstance(spec, LieLayer):
        return tuple(lyndon_words(r, spec.degree))
    raise TypeError(f"unknown spec {spec!r}")


def _action(spec: ModuleSpec, r: int, a: Matrix, a_inv: Matrix) -> Matrix:
    if isinstance(spec, Const):
        return intlinalg.identity(spec.rank)
    if isinstance(spec, Std):
        return a
    if isinstance(spec, DualStd):
        return transpose(a_inv)
    if isinstance(spec, Sum):
        left = _action(spec.left, r, a, a_inv)
        right = _action(spec.right, r, a, a_inv)
        return intlinalg.block_diag(
            left, right, len(_basis(spec.left, r)), len(_basis(spec.right, r))
        )
    if isinstance(spec, Tensor):
        return kron(_action(spec.left, r, a, a_inv), _action(spec.right, r, a, a_inv))
    if isinstance(spec, Ext):
        inner = _action(spec.inner, r, a, a_inv)
        n = len(_basis(spec.inner, r))
        return compound(inner, spec.power, n, n)
    if isinstance(spec, Hom):
        # f goes to T(a) f S(a)^-1; row-major vec turns that into T(a) (x) S(a^-1)^T
        tgt = _action(spec.target, r, a, a_inv)
        src_inv = _action(spec.source, r, a_inv, a)
        return kron(tgt, transpose(src_inv, len(_basis(spec.source, r))))
    if isinstance(spec, LieLayer):
        return lie_layer_matrix(a, r, spec.degree)
    raise TypeError(f"unknown spec {spec!r}")


def _inclusion(sub: tuple, full: tuple) -> Matrix:
    """Matrix of the inclusion of a labeled subset into a full basis."""
    index = {label: i for i, label in enumerate(full)}
    cols = [index[label] for label in sub]
    return tuple(
        tuple(1 if j < len(cols) and cols[j] == i else 0 for j in range(len(sub)))
        for i in range(len(full))
    )


def _stab(spec: ModuleSpec, r: int) -> Matrix:
    """Equivariant injection of the rank-r evaluation into the rank-(r+1) one."""
    if isinstance(spec, Const):
        return intlinalg.identity(spec.rank)
    if isinstance(spec, Std):
        return _inclusion(_basis(spec, r), _basis(spec, r + 1))
    if isinstance(spec, DualStd):
        # extend a functional by zero on the new basis vector
        return _inclusion(_basis(spec, r), _basis(spec, r + 1))
    if isinstance(spec, Sum):
        return intlinalg.block_diag(
            _stab(spec.left, r),
            _stab(spec.right, r),
            len(_basis(spec.left, r)),
            len(_basis(spec.right, r)),
        )
    if isinstance(spec, Tensor):
        return kron(_stab(spec.left, r), _stab(spec.right, r))
    if isinstance(spec, Ext):
        inner = _stab(spec.inner, r)
        return compound(
            inner, spec.power, len(_basis(spec.inner, r + 1)), len(_basis(spec.inner, r))
        )
    if isinstance(spec, Hom):
        src_cols = len(_basis(spec.source, r + 1))
        return kron(_stab(spec.target, r), transpose(_costab(spec.source, r), src_cols))
    if isinstance(spec, LieLayer):
        return _inclusion(_basis(spec, r), _basis(spec, r + 1))
    raise TypeError(f"unknown spec {spec!r}")


def _costab(spec: ModuleSpec, r: int) -> Matrix:
    """Equivariant retraction of the rank-(r+1) evaluation onto the rank-r one."""
    if isinstance(spec, Const):
        return intlinalg.identity(spec.rank)
    if isinstance(spec, (Std, DualStd, LieLayer)):
        return transpose(_stab(spec, r), len(_basis(spec, r)))
    if isinstance(spec, Sum):
        return intlinalg.block_diag(
            _costab(spec.left, r),
            _costab(spec.right, r),
            len(_basis(spec.left, r + 1)),
            len(_basis(spec.right, r + 1)),
        )
    if isinstance(spec, Tensor):
        return kron(_costab(spec.left, r), _costab(spec.right, r))
    if isinstance(spec, Ext):
        inner = _costab(spec.inner, r)
        return compound(
            inner, spec.power, len(_basis(spec.inner, r)), len(_basis(spec.inner, r + 1))
        )
    if isinstance(spec, Hom):
        src_cols = len(_basis(spec.source, r))
        return kron(_costab(spec.target, r), transpose(_stab(spec.source, r), src_cols))
    raise TypeError(f"unknown spec {spec!r}")


def restrict_action(spec: ModuleSpec, e) -> Matrix:
    """Action of an automorphism of the nilpotent group, through its abelianization."""
    from .autos import abelianization_matrix, is_automorphism

    if not is_automorphism(e):
        raise ValueError("restriction is defined for automorphisms only")
    return eval_module(spec, e.rank).action(abelianization_matrix(e))


def kernel_homology_module(c: int, t: int, coefficients: ModuleSpec) -> ModuleSpec:
    """Degree-t homology of the free abelian kernel of the class-(c+1) tower step.

    The kernel is the free abelian group of maps from the abelianization to the
    degree-(c+1) Lie layer, so its homology is the t-th exterior power tensored
    with the coefficients.
    """
    if c < 1 or t < 0:
        raise ValueError("need c >= 1 and t >= 0")
    return Tensor(Ext(t, Hom(Std(), LieLayer(c + 1))), coefficients)


def _label_text(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(_label_text(x) for x in label) + ")"
    return str(label)


def based_module_to_json(mod: BasedModule, matrices=()) -> dict:
    """JSON-ready export of an evaluated module: basis labels, stabilization,
    and the action on any requested matrices."""
    return {
        "spec": str(mod.spec),
        "rank_of_group": mod.rank_of_group,
        "basis": [_label_text(lbl) for lbl in mod.basis],
        "stab": [list(row) for row in mod.stab],
        "actions": [
            {
                "matrix": [list(row) for row in a],
                "action": [list(row) for row in mod.action(a)],
            }
            for a in matrices
        ],
    }


# --- spec grammar -------------------------------------------------------------

_TOKEN = re.compile(r"\(x\)|[a-z]+|\d+|Z(?:\^\d+)?|[(),]")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    compact = text.strip()
    while pos < len(compact):
        if compact[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(compact, pos)
        if not m:
            raise ValueError(f"bad character {compact[pos]!r} in module spec")
        tokens.append(m.group())
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def parse(self) -> ModuleSpec:
        spec = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens starting at {self.peek()!r}")
        return spec

    def expr(self) -> ModuleSpec:
        left = self.primary()
        while self.peek() == "(x)":
            self.take("(x)")
            left = Tensor(left, self.primary())
        return left

    def primary(self) -> ModuleSpec:
        name = self.take()
        if name == "const":
            if self.peek() != "(":
                return Const(1)
            self.take("(")
            z = self.take()
            if not re.fullmatch(r"Z(\^\d+)?", z):
                raise ValueError(f"const takes Z or Z^k, found {z!r}")
            self.take(")")
            return Const(int(z[2:]) if "^" in z else 1)
        if name == "std":
            return Std()
        if name == "dual":
            return DualStd()
        if name in ("sum", "tensor", "hom"):
            self.take("(")
            first = self.expr()
            self.take(",")
            second = self.expr()
            self.take(")")
            return {"sum": Sum, "tensor": Tensor, "hom": Hom}[name](first, second)
        if name == "ext":
            self.take("(")
            t = int(self.take())
            self.take(",")
            inner = self.expr()
            self.take(")")
            return Ext(t, inner)
        if name == "lie":
            self.take("(")
            n = int(self.take())
            self.take(")")
            return LieLayer(n)
        raise ValueError(f"unknown module constructor {name!r}")


def parse_module_spec(text: str) -> ModuleSpec:
    """Parse the textual spec grammar, e.g. 'ext(2, hom(std, lie(3))) (x) const(Z)'."""
    return _Parser(_tokenize(text)).parse()
