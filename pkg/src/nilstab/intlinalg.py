"""Exact integer linear algebra on unbounded integers.

Matrices are immutable tuples of row tuples.  Everything here is exact: no
floats, no overflow.  The Smith normal form uses a smallest-nonzero-pivot
rule with column-then-row elimination, so its output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

Matrix = tuple  # tuple of row tuples of int


def freeze(rows) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(nrows: int, ncols: int) -> Matrix:
    return tuple((0,) * ncols for _ in range(nrows))


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        if ncols is None:
            raise ValueError("transpose of empty matrix needs explicit ncols")
        return tuple(() for _ in range(ncols))
    return tuple(zip(*a))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b)) if b else []
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def matvec(a: Matrix, v) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def columns(a: Matrix, ncols: int | None = None) -> list:
    """Columns of a as tuples; ncols disambiguates the 0-row case."""
    if not a:
        return [() for _ in range(ncols)] if ncols else []
    return [tuple(row[j] for row in a) for j in range(len(a[0]))]


def kron(a: Matrix, b: Matrix) -> Matrix:
    out = []
    for ra in a:
        for rb in b:
            out.append(tuple(x * y for x in ra for y in rb))
    return tuple(out)


def block_diag(a: Matrix, b: Matrix, a_cols: int, b_cols: int) -> Matrix:
    out = [row + (0,) * b_cols for row in a]
    out += [(0,) * a_cols + row for row in b]
    return tuple(out)


def det(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = a
        return (
            a11 * (a22 * a33 - a23 * a32)
            - a12 * (a21 * a33 - a23 * a31)
            + a13 * (a21 * a32 - a22 * a31)
        )
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def minor(a: Matrix, rows, cols) -> int:
    return det(tuple(tuple(a[i][j] for j in cols) for i in rows))


def int_inverse(a: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix (adjugate over det = +-1)."""
    n = len(a)
    d = det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix is not invertible over the integers (det={d})")
    if n == 1:
        return ((d,),)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        rows = tuple(k for k in range(n) if k != i)
        for j in range(n):
            cols = tuple(k for k in range(n) if k != j)
            adj[j][i] = (-1) ** (i + j) * minor(a, rows, cols)
    return freeze([[x // d for x in row] for row in adj])


def compound(a: Matrix, t: int, nrows: int, ncols: int) -> Matrix:
    """t-th compound matrix (all t x t minors); multiplicative by Cauchy-Binet."""
    if t == 0:
        return ((1,),)
    row_sets = list(combinations(range(nrows), t))
    col_sets = list(combinations(range(ncols), t))
    return tuple(
        tuple(minor(a, rs, cs) for cs in col_sets) for rs in row_sets
    )


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(x, y, g) with x*a + y*b = g = gcd(a, b) >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


@dataclass(frozen=True)
class SNFResult:
    """U*A*V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0."""

    U: Matrix
    D: Matrix
    V: Matrix

    def diagonal(self) -> tuple:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)))

    def invariant_factors(self) -> tuple:
        return tuple(d for d in self.diagonal() if d != 0)


def snf(a: Matrix) -> SNFResult:
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    d = [list(row) for row in a]
    u = [list(row) for row in identity(nrows)]
    v = [list(row) for row in identity(ncols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def scale_row(i, s):
        d[i] = [s * x for x in d[i]]
        u[i] = [s * x for x in u[i]]

    rank = min(nrows, ncols)
    for k in range(rank):
        while True:
            # smallest nonzero |entry| in the trailing block
            pivot = None
            best = None
            for i in range(k, nrows):
                for j in range(k, ncols):
                    x = d[i][j]
                    if x != 0 and (best is None or abs(x) < best):
                        best = abs(x)
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(k, pivot[0])
            swap_cols(k, pivot[1])
            p = d[k][k]
            # columns first, then rows
            dirty = False
            for j in range(k + 1, ncols):
                if d[k][j] != 0:
                    add_col(j, k, -(d[k][j] // p))
                    if d[k][j] != 0:
                        dirty = True
            for i in range(k + 1, nrows):
                if d[i][k] != 0:
                    add_row(i, k, -(d[i][k] // p))
                    if d[i][k] != 0:
                        dirty = True
            if not dirty:
                break
        if d[k][k] == 0:
            break
    # sign normalization
    for k in range(rank):
        if d[k][k] < 0:
            scale_row(k, -1)
    # enforce the divisibility chain d_1 | d_2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(rank):
            if d[i][i] == 0:
                continue
            for j in range(i + 1, rank):
                if d[j][j] % d[i][i] == 0:
                    continue
                changed = True
                a_, b_ = d[i][i], d[j][j]
                add_row(i, j, 1)  # D[i][j] becomes b_
                x, y, g = xgcd(a_, b_)
                # unimodular column pair transform: det = (x*a_ + y*b_)/g = 1
                ci = [row[i] for row in d]
                cj = [row[j] for row in d]
                for r_ in range(nrows):
                    d[r_][i] = x * ci[r_] + y * cj[r_]
                    d[r_][j] = (a_ // g) * cj[r_] - (b_ // g) * ci[r_]
                vi = [row[i] for row in v]
                vj = [row[j] for row in v]
                for r_ in range(ncols):
                    v[r_][i] = x * vi[r_] + y * vj[r_]
                    v[r_][j] = (a_ // g) * vj[r_] - (b_ // g) * vi[r_]
                # clear the off-diagonal residue in row j
                if d[j][i] != 0:
                    add_row(j, i, -(d[j][i] // d[i][i]))
                if d[j][j] < 0:
                    scale_row(j, -1)
    return SNFResult(freeze(u), freeze(d), freeze(v))


@dataclass(frozen=True)
class FinAbPresentation:
    """Isomorphism type of a finitely generated abelian group.

    invariant_factors is the divisibility chain of the factors > 1, so
    equality of presentations is isomorphism of the groups.
    """

    free_rank: int
    invariant_factors: tuple

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


def _reduce_column(pivots: dict, col) -> None:
    """Fold one column into an echelon pivot table, preserving the lattice."""
    c = list(col)
    n = len(c)
    row = 0
    while row < n:
        if c[row] == 0:
            row += 1
            continue
        p = pivots.get(row)
        if p is None:
            pivots[row] = c
            return
        a, b = p[row], c[row]
        if b % a == 0:
            q = b // a
            c = [ci - q * pi for ci, pi in zip(c, p)]
        else:
            x, y, g = xgcd(a, b)
            newp = [x * pi + y * ci for pi, ci in zip(p, c)]
            newc = [(a // g) * ci - (b // g) * pi for pi, ci in zip(p, c)]
            pivots[row] = newp
            c = newc
        row += 1


def lattice_basis(cols, dim: int) -> list:
    """Echelon basis (as column tuples) of the lattice spanned by cols in Z^dim."""
    pivots: dict = {}
    seen = set()
    for col in cols:
        col = tuple(col)
        if len(col) != dim:
            raise ValueError("column has wrong dimension")
        if col in seen or not any(col):
            continue
        seen.add(col)
        _reduce_column(pivots, col)
    return [tuple(pivots[r]) for r in sorted(pivots)]


def lattice_contains(basis_cols, vec) -> bool:
    """Membership test against an echelon basis as produced by lattice_basis."""
    c = list(vec)
    by_pivot = {}
    for col in basis_cols:
        lead = next(i for i, x in enumerate(col) if x != 0)
        by_pivot[lead] = col
    for row in range(len(c)):
        if c[row] == 0:
            continue
        p = by_pivot.get(row)
        if p is None or c[row] % p[row] != 0:
            return False
        q = c[row] // p[row]
        c = [ci - q * pi for ci, pi in zip(c, p)]
    return True


def cokernel_presentation(cols, dim: int) -> FinAbPresentation:
    """Presentation of Z^dim modulo the lattice spanned by the given columns."""
    basis = lattice_basis(cols, dim)
    if not basis:
        return FinAbPresentation(dim, ())
    mat = tuple(tuple(col[i] for col in basis) for i in range(dim))
    res = snf(mat)
    nonzero = res.invariant_factors()
    return FinAbPresentation(dim - len(nonzero), tuple(d for d in nonzero if d > 1))
