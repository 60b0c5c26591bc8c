"""Exact dense linear algebra over Q(zeta_M).

Vectors are lists of Cyclo, matrices are lists of row vectors.  Everything is
fraction-exact Gaussian elimination with a deterministic pivot rule: columns
are scanned left to right and the first remaining row with a nonzero entry is
used, so echelon bases are reproducible across runs.
"""

from __future__ import annotations

from .cyclo import Cyclo, CycloField


def zero_vector(fld: CycloField, n: int) -> list[Cyclo]:
    return [fld.zero] * n


def unit_vector(fld: CycloField, n: int, i: int) -> list[Cyclo]:
    v = [fld.zero] * n
    v[i] = fld.one
    return v


def is_zero_vector(u) -> bool:
    return all(a.is_zero() for a in u)


class Subspace:
    """A subspace of k^n kept as a reduced row-echelon basis.

    Supports incremental spanning-set insertion, membership tests and residual
    reduction; the basis rows are monic at their pivot and fully reduced, so a
    subspace has a unique canonical basis.
    """

    def __init__(self, fld: CycloField, ambient_dim: int, vectors=None):
        self.field = fld
        self.ambient_dim = ambient_dim
        self.rows: list[list[Cyclo]] = []
        self.pivots: list[int] = []
        if vectors:
            for v in vectors:
                self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: list[Cyclo]) -> list[Cyclo]:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if not c.is_zero():
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return is_zero_vector(self.reduce(v))

    def coordinates(self, v) -> list[Cyclo] | None:
        """Coefficients of v over the echelon basis, or None if not a member."""
        v = list(v)
        coords = []
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            coords.append(c)
            if not c.is_zero():
                v = [a - c * b for a, b in zip(v, row)]
        if not is_zero_vector(v):
            return None
        return coords

    def add(self, v) -> bool:
        v = self.reduce(v)
        lead = next((i for i, a in enumerate(v) if not a.is_zero()), None)
        if lead is None:
            return False
        inv = v[lead].inverse()
        v = [a * inv for a in v]
        # keep existing rows fully reduced against the new pivot
        for i, row in enumerate(self.rows):
            c = row[lead]
            if not c.is_zero():
                self.rows[i] = [a - c * b for a, b in zip(row, v)]
        at = next((k for k, p in enumerate(self.pivots) if p > lead), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, lead)
        return True

    def extend(self, vectors) -> None:
        for v in vectors:
            self.add(v)

    def basis(self) -> list[list[Cyclo]]:
        return [list(r) for r in self.rows]


def rref(matrix: list[list[Cyclo]], fld: CycloField, width: int):
    sub = Subspace(fld, width)
    for row in matrix:
        sub.add(row)
    return sub


def rank(matrix, fld: CycloField, width: int) -> int:
    return rref(matrix, fld, width).dim


def kernel(matrix: list[list[Cyclo]], fld: CycloField, width: int) -> list[list[Cyclo]]:
    """Basis of {x : A x = 0} for the rows of A of the given width."""
    sub = rref(matrix, fld, width)
    pivots = set(sub.pivots)
    out = []
    for free in range(width):
        if free in pivots:
            continue
        x = zero_vector(fld, width)
        x[free] = fld.one
        for row, p in zip(sub.rows, sub.pivots):
            x[p] = -row[free]
        out.append(x)
    return out


def solve(matrix: list[list[Cyclo]], rhs: list[Cyclo], fld: CycloField, width: int):
    """One solution x of A x = rhs, or None."""
    aug = [row + [b] for row, b in zip(matrix, rhs)]
    sub = rref(aug, fld, width + 1)
    x = zero_vector(fld, width)
    for row, p in zip(sub.rows, sub.pivots):
        if p == width:
            return None
        x[p] = row[width]
    return x


def intersect(u: Subspace, w: Subspace) -> list[list[Cyclo]]:
    """Basis of the intersection of two subspaces of the same ambient space."""
    if u.dim == 0 or w.dim == 0:
        return []
    fld = u.field
    ub, wb = u.basis(), w.basis()
    # columns: coefficients over ub then wb; rows: ambient coordinates
    rows = []
    for i in range(u.ambient_dim):
        rows.append([b[i] for b in ub] + [-b[i] for b in wb])
    out = []
    for sol in kernel(rows, fld, len(ub) + len(wb)):
        vec = zero_vector(fld, u.ambient_dim)
        for c, b in zip(sol[: len(ub)], ub):
            if not c.is_zero():
                vec = [a + c * x for a, x in zip(vec, b)]
        if not is_zero_vector(vec):
            out.append(vec)
    return out


def mat_mul(a, b, fld: CycloField):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[fld.zero] * m for _ in range(n)]
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for t in range(k):
            c = arow[t]
            if c.is_zero():
                continue
            brow = b[t]
            for j in range(m):
                if not brow[j].is_zero():
                    orow[j] = orow[j] + c * brow[j]
    return out


def identity_matrix(fld: CycloField, n: int):
    return [unit_vector(fld, n, i) for i in range(n)]
