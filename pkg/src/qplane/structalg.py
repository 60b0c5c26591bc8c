"""Exact finite-dimensional associative algebras over Q(zeta_M).

An algebra is given by structure constants over a labeled basis; elements are
dense coefficient vectors.  On top of that sit the generic machines used as
the brute-force oracle for everything the closed-form theory predicts:

* Jacobson radical via the trace bilinear form of the left regular
  representation (Dickson's criterion, valid in characteristic zero),
* center and primitive central idempotents (blocks), split by iterated
  eigenspace refinement and lifted through the nilradical by Newton's
  iteration e <- 3e^2 - 2e^3,
* principal left modules A.e with Loewy series, socle and top analysis.

Products of basis elements may be supplied lazily through a callback; they
are cached.  An optional grading (a group-valued degree on the basis that is
additive under multiplication) lets the radical computation split into small
blocks, which matters for the larger class subalgebras.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cyclo import Cyclo, CycloField, factor_roots_in_field
from .linalg import Subspace, intersect, kernel, zero_vector


class AssociativityError(ArithmeticError):
    pass


class NonSplitError(ArithmeticError):
    """A needed eigenvalue or idempotent does not exist over Q(zeta_M)."""


SparseVec = tuple[tuple[int, Cyclo], ...]


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "StructAlgebra", coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != algebra.dim:
            raise ValueError("coefficient vector length does not match algebra dimension")
        self.algebra = algebra
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def support(self):
        return [i for i, c in enumerate(self.coeffs) if not c.is_zero()]

    def __add__(self, other):
        self._compat(other)
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._compat(other)
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Cyclo):
            return self.scale(other)
        self._compat(other)
        return self.algebra.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, Cyclo):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Cyclo):
        return AlgebraElement(self.algebra, [c * a for a in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = self.algebra.unit
        base = self
        for _ in range(n):
            out = out * base
        return out

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.algebra is self.algebra
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def _compat(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise ValueError("elements of different algebras")

    def __repr__(self):
        parts = [
            f"({c})*{self.algebra.basis_labels[i]}"
            for i, c in enumerate(self.coeffs)
            if not c.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


class StructAlgebra:
    """Associative algebra from structure constants, possibly lazily supplied."""

    def __init__(
        self,
        fld: CycloField,
        basis_labels: list,
        product_fn=None,
        table: dict | None = None,
        unit_coeffs=None,
        grading: list | None = None,
        grading_moduli: tuple | None = None,
        generators: list | None = None,
    ):
        self.field = fld
        self.basis_labels = list(basis_labels)
        self.dim = len(self.basis_labels)
        self._product_fn = product_fn
        self._table: dict[tuple[int, int], SparseVec] = dict(table or {})
        if unit_coeffs is None:
            raise ValueError("an algebra needs a unit")
        self.unit = AlgebraElement(self, unit_coeffs)
        self.grading = list(grading) if grading is not None else None
        self.grading_moduli = grading_moduli
        self.generators = list(generators) if generators is not None else None
        self._traces: list[Cyclo] | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_table(cls, fld, basis_labels, table, unit_coeffs, check=True, **kw):
        """Algebra from a fully materialized dim x dim table of sparse products."""
        alg = cls(fld, basis_labels, table=table, unit_coeffs=unit_coeffs, **kw)
        if check:
            alg.check_associativity()
        return alg

    # -- products ----------------------------------------------------------

    def basis_product(self, i: int, j: int) -> SparseVec:
        key = (i, j)
        got = self._table.get(key)
        if got is None:
            if self._product_fn is None:
                raise KeyError(f"missing structure constant {key}")
            got = tuple((k, c) for k, c in self._product_fn(i, j) if not c.is_zero())
            self._table[key] = got
        return got

    def multiply(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        acc: dict[int, Cyclo] = {}
        ucs, vcs = u.coeffs, v.coeffs
        for i, ci in enumerate(ucs):
            if ci.is_zero():
                continue
            for j, cj in enumerate(vcs):
                if cj.is_zero():
                    continue
                c = ci * cj
                for k, ck in self.basis_product(i, j):
                    prev = acc.get(k)
                    term = c * ck
                    acc[k] = term if prev is None else prev + term
        coeffs = [self.field.zero] * self.dim
        for k, c in acc.items():
            coeffs[k] = c
        return AlgebraElement(self, coeffs)

    # -- element builders ---------------------------------------------------

    def element(self, coeffs) -> AlgebraElement:
        return AlgebraElement(self, coeffs)

    def basis_element(self, i: int) -> AlgebraElement:
        coeffs = [self.field.zero] * self.dim
        coeffs[i] = self.field.one
        return AlgebraElement(self, coeffs)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, [self.field.zero] * self.dim)

    def scalar(self, c: Cyclo) -> AlgebraElement:
        return self.unit.scale(c)

    def basis_elements(self):
        return [self.basis_element(i) for i in range(self.dim)]

    # -- sanity checks -------------------------------------------------------

    def check_associativity(self, full_limit: int = 30, samples: int = 500, seed: int = 0):
        """(b_i b_j) b_k = b_i (b_j b_k), exhaustive on small algebras, sampled above."""
        for i in range(self.dim):
            b = self.basis_element(i)
            if self.unit * b != b or b * self.unit != b:
                raise AssociativityError(f"unit fails on basis element {self.basis_labels[i]}")
        if self.dim <= full_limit:
            triples = (
                (i, j, k)
                for i in range(self.dim)
                for j in range(self.dim)
                for k in range(self.dim)
            )
        else:
            rng = random.Random(seed)
            triples = (
                (rng.randrange(self.dim), rng.randrange(self.dim), rng.randrange(self.dim))
                for _ in range(samples)
            )
        for i, j, k in triples:
            bi, bj, bk = self.basis_element(i), self.basis_element(j), self.basis_element(k)
            if (bi * bj) * bk != bi * (bj * bk):
                raise AssociativityError(
                    f"associativity fails on triple ({self.basis_labels[i]}, "
                    f"{self.basis_labels[j]}, {self.basis_labels[k]})"
                )

    # -- traces and the radical ----------------------------------------------

    def trace_of_left_mult(self, u: AlgebraElement) -> Cyclo:
        if self._traces is None:
            traces = []
            for k in range(self.dim):
                t = self.field.zero
                for i in range(self.dim):
                    for idx, c in self.basis_product(k, i):
                        if idx == i:
                            t = t + c
                traces.append(t)
            self._traces = traces
        out = self.field.zero
        for k, c in enumerate(u.coeffs):
            if not c.is_zero():
                out = out + c * self._traces[k]
        return out

    def _trace_form_entry(self, i: int, j: int) -> Cyclo:
        # B(b_i, b_j) = trace(L_{b_i b_j})
        self.trace_of_left_mult(self.unit)  # ensure per-basis traces exist
        out = self.field.zero
        for k, c in self.basis_product(i, j):
            if not c.is_zero():
                out = out + c * self._traces[k]
        return out

    def radical(self) -> list[AlgebraElement]:
        """Basis of the Jacobson radical: the kernel of the trace form."""
        fld = self.field
        sub = Subspace(fld, self.dim)
        if self.grading is not None:
            groups: dict[object, list[int]] = {}
            for i, lab in enumerate(self.grading):
                groups.setdefault(lab, []).append(i)
            for lab, cols in groups.items():
                rows = self._pairing_rows(lab)
                mat = [[self._trace_form_entry(c, r) for c in cols] for r in rows]
                for sol in kernel(mat, fld, len(cols)):
                    vec = zero_vector(fld, self.dim)
                    for c, idx in zip(sol, cols):
                        vec[idx] = c
                    sub.add(vec)
        else:
            mat = [[self._trace_form_entry(i, j) for i in range(self.dim)] for j in range(self.dim)]
            for sol in kernel(mat, fld, self.dim):
                sub.add(sol)
        return [self.element(row) for row in sub.basis()]

    def _pairing_rows(self, lab) -> list[int]:
        """Indices j whose grade can pair with grade lab under the trace form.

        Grades add under multiplication and the trace kills every homogeneous
        component of nonzero grade, so b_j pairs against grade lab only when
        lab + grade_j = 0.  Grades are exponent tuples modulo grading_moduli.
        """
        if self.grading_moduli is None:
            return list(range(self.dim))
        inv = tuple((-x) % m for x, m in zip(lab, self.grading_moduli))
        return [j for j in range(self.dim) if self.grading[j] == inv]

    # -- two-sided structure ---------------------------------------------------

    def is_ideal(self, vectors: list[AlgebraElement]) -> bool:
        span = Subspace(self.field, self.dim, [list(v.coeffs) for v in vectors])
        for v in vectors:
            for i in range(self.dim):
                b = self.basis_element(i)
                if not span.contains(list((b * v).coeffs)):
                    return False
                if not span.contains(list((v * b).coeffs)):
                    return False
        return True

    def nilpotency_index(self, vectors: list[AlgebraElement]) -> int | None:
        """Least k with J^k = 0, or None if the span is not nilpotent."""
        current = vectors
        for k in range(1, self.dim + 2):
            if not current:
                return k
            nxt = Subspace(self.field, self.dim)
            for u in current:
                for v in vectors:
                    nxt.add(list((u * v).coeffs))
            current = [self.element(r) for r in nxt.basis()]
        return None

    def quotient(self, ideal_vectors: list[AlgebraElement]):
        """(A/J, project, lift) for a two-sided ideal J."""
        fld = self.field
        jsub = Subspace(fld, self.dim, [list(v.coeffs) for v in ideal_vectors])
        pivset = set(jsub.pivots)
        keep = [i for i in range(self.dim) if i not in pivset]

        def project(elem: AlgebraElement) -> list[Cyclo]:
            red = jsub.reduce(list(elem.coeffs))
            return [red[i] for i in keep]

        def lift_coeffs(coeffs) -> AlgebraElement:
            vec = zero_vector(fld, self.dim)
            for t, i in enumerate(keep):
                vec[i] = coeffs[t]
            return self.element(vec)

        labels = [self.basis_labels[i] for i in keep]

        def basis_rep(t: int) -> AlgebraElement:
            vec = zero_vector(fld, self.dim)
            vec[keep[t]] = fld.one
            return self.element(vec)

        def product_fn(i: int, j: int):
            prod = basis_rep(i) * basis_rep(j)
            return [(t, c) for t, c in enumerate(project(prod)) if not c.is_zero()]

        quot = StructAlgebra(
            fld,
            labels,
            product_fn=product_fn,
            unit_coeffs=project(self.unit),
            grading=[self.grading[i] for i in keep] if self.grading is not None else None,
            grading_moduli=self.grading_moduli,
        )
        return quot, project, lift_coeffs

    # -- center and blocks -------------------------------------------------------

    def center(self, within: list[list[Cyclo]] | None = None) -> list[AlgebraElement]:
        """Basis of the center, by iterated refinement against generator commutators."""
        fld = self.field
        if within is None:
            space = [list(self.basis_element(i).coeffs) for i in range(self.dim)]
        else:
            space = [list(v) for v in within]
        if self.generators is not None:
            constraints = list(self.generators)
        else:
            constraints = [self.basis_element(i) for i in range(self.dim)]
        for b in constraints:
            if not space:
                break
            images = []
            for v in space:
                ev = self.element(v)
                w = ev * b - b * ev
                images.append(list(w.coeffs))
            mat = [[images[t][row] for t in range(len(space))] for row in range(self.dim)]
            sols = kernel(mat, fld, len(space))
            new_space = []
            for sol in sols:
                vec = zero_vector(fld, self.dim)
                for c, v in zip(sol, space):
                    if not c.is_zero():
                        vec = [a + c * x for a, x in zip(vec, v)]
                new_space.append(vec)
            sub = Subspace(fld, self.dim, new_space)
            space = sub.basis()
        return [self.element(v) for v in space]

    def central_idempotents(self, within: list | None = None) -> list[AlgebraElement]:
        """The block idempotents: pairwise-orthogonal, central, primitive, summing to 1."""
        rad = self.radical()
        cen = self.center(within=within)
        return self._split_center(cen, rad)

    def _split_center(self, cen: list[AlgebraElement], rad: list[AlgebraElement]):
        fld = self.field
        zdim = len(cen)
        if zdim == 0:
            raise NonSplitError("trivial center")
        # center as a small commutative algebra in its own coordinates
        csub = Subspace(fld, self.dim, [list(v.coeffs) for v in cen])
        cbasis = [self.element(r) for r in csub.rows]

        def ccoords(elem: AlgebraElement) -> list[Cyclo]:
            coords = csub.coordinates(list(elem.coeffs))
            if coords is None:
                raise NonSplitError("center is not multiplicatively closed (internal error)")
            return coords

        # radical of the center = center ∩ rad(A)
        radsub = Subspace(fld, self.dim, [list(v.coeffs) for v in rad])
        zradsub = Subspace(fld, len(cbasis))
        for vec in intersect(csub, radsub):
            zradsub.add(csub.coordinates(vec))
        keep = [t for t in range(len(cbasis)) if t not in set(zradsub.pivots)]

        def zbar(elem: AlgebraElement) -> list[Cyclo]:
            red = zradsub.reduce(ccoords(elem))
            return [red[t] for t in keep]

        def zbar_lift(coords) -> AlgebraElement:
            out = self.zero()
            for c, t in zip(coords, keep):
                if not c.is_zero():
                    out = out + cbasis[t].scale(c)
            return out

        qdim = len(keep)
        # multiplication operators on the etale quotient of the center
        ops = []
        for t in range(qdim):
            gen = zbar_lift([fld.one if s == t else fld.zero for s in range(qdim)])
            cols = []
            for s in range(qdim):
                other = zbar_lift([fld.one if r == s else fld.zero for r in range(qdim)])
                cols.append(zbar(gen * other))
            ops.append([[cols[s][r] for s in range(qdim)] for r in range(qdim)])

        pieces = [Subspace(fld, qdim, [_unit_coords(fld, qdim, t) for t in range(qdim)])]
        for op in ops:
            refined = []
            for piece in pieces:
                if piece.dim <= 1:
                    refined.append(piece)
                    continue
                refined.extend(_eigen_refine(op, piece, fld))
            pieces = refined
        idems = []
        for piece in pieces:
            if piece.dim != 1:
                raise NonSplitError("center does not split into one-dimensional pieces over Q(zeta_M)")
            v = zbar_lift(piece.rows[0])
            vsq = zbar(v * v)
            vv = piece.rows[0]
            lead = next(i for i, c in enumerate(vv) if not c.is_zero())
            c = vsq[lead] / vv[lead]
            if c.is_zero():
                raise NonSplitError("nilpotent line in the etale center (internal error)")
            e0 = v.scale(c.inverse())
            idems.append(_newton_lift_idempotent(e0))
        for i, e in enumerate(idems):
            for f in idems[i + 1 :]:
                if not (e * f).is_zero() or not (f * e).is_zero():
                    raise NonSplitError("central idempotents are not orthogonal (internal error)")
        total = self.zero()
        for e in idems:
            total = total + e
        if total != self.unit:
            raise NonSplitError("central idempotents do not sum to 1 (internal error)")
        idems.sort(key=lambda e: tuple((c.den, c.num) for c in e.coeffs))
        return idems

    def block_dimension(self, idem: AlgebraElement) -> int:
        """dim(A e) for a central idempotent e, as the trace of left multiplication."""
        t = self.trace_of_left_mult(idem)
        r = t.as_rational()
        if r.denominator != 1:
            raise NonSplitError("non-integral block dimension (internal error)")
        return int(r)

    # -- modules -------------------------------------------------------------

    def principal_module(self, e: AlgebraElement) -> "LeftModule":
        if e * e != e:
            raise ValueError("principal_module needs an idempotent generator")
        sub = Subspace(self.field, self.dim)
        for i in range(self.dim):
            sub.add(list((self.basis_element(i) * e).coeffs))
        return LeftModule(self, sub)

    def regular_module(self) -> "LeftModule":
        return self.principal_module(self.unit)


def _unit_coords(fld, n, i):
    v = [fld.zero] * n
    v[i] = fld.one
    return v


def _eigen_refine(op, piece: Subspace, fld) -> list[Subspace]:
    """Split a subspace into eigenspaces of an operator acting on it."""
    basis = piece.basis()
    k = len(basis)
    # operator restricted to the piece, in piece coordinates
    restricted = []
    for v in basis:
        image = _apply(op, v, fld)
        coords = piece.coordinates(image)
        if coords is None:
            raise NonSplitError("refinement operator does not preserve the piece (internal error)")
        restricted.append(coords)
    tmat = [[restricted[c][r] for c in range(k)] for r in range(k)]
    minpoly = _matrix_min_poly(tmat, fld)
    roots = factor_roots_in_field(minpoly)
    if roots is None:
        raise NonSplitError("eigenvalues are not in Q(zeta_M)")
    out = []
    for val, _mult in roots:
        shifted = [[tmat[r][c] - (val if r == c else fld.zero) for c in range(k)] for r in range(k)]
        # generalized eigenspace: kernel of (T - val)^k
        power = shifted
        for _ in range(k - 1):
            power = _mat_mul_small(power, shifted, fld)
        vecs = kernel(power, fld, k)
        sub = Subspace(fld, piece.ambient_dim)
        for sol in vecs:
            amb = [fld.zero] * piece.ambient_dim
            for c, bvec in zip(sol, basis):
                if not c.is_zero():
                    amb = [a + c * x for a, x in zip(amb, bvec)]
            sub.add(amb)
        if sub.dim:
            out.append(sub)
    if sum(s.dim for s in out) != k:
        raise NonSplitError("eigenspaces do not fill the space over Q(zeta_M)")
    return out


def _apply(op, v, fld):
    n = len(v)
    out = [fld.zero] * n
    for r in range(n):
        s = fld.zero
        for c in range(n):
            if not op[r][c].is_zero() and not v[c].is_zero():
                s = s + op[r][c] * v[c]
        out[r] = s
    return out


def _mat_mul_small(a, b, fld):
    n = len(a)
    out = [[fld.zero] * n for _ in range(n)]
    for i in range(n):
        for t in range(n):
            c = a[i][t]
            if c.is_zero():
                continue
            for j in range(n):
                if not b[t][j].is_zero():
                    out[i][j] = out[i][j] + c * b[t][j]
    return out


def _matrix_min_poly(tmat, fld) -> list[Cyclo]:
    """Monic minimal polynomial (constant first) of a small matrix."""
    from .linalg import solve

    n = len(tmat)
    cur = [[fld.one if i == j else fld.zero for j in range(n)] for i in range(n)]
    flat = [sum(cur, [])]
    while True:
        cur = _mat_mul_small(cur, tmat, fld)
        vec = sum(cur, [])
        mat = [[flat[t][r] for t in range(len(flat))] for r in range(n * n)]
        sol = solve(mat, vec, fld, len(flat))
        if sol is not None:
            return [-c for c in sol] + [fld.one]
        flat.append(vec)


def _newton_lift_idempotent(e: AlgebraElement, max_iter: int = 64) -> AlgebraElement:
    for _ in range(max_iter):
        sq = e * e
        if sq == e:
            return e
        # e <- 3e^2 - 2e^3 fixes the semisimple part and kills nilpotent error
        e = sq.scale(e.algebra.field.rational(3)) - (sq * e).scale(e.algebra.field.rational(2))
    raise NonSplitError("idempotent lifting did not converge (internal error)")


@dataclass
class LoewyReport:
    layer_dims: list[int]
    layer_weights: list | None = None


class LeftModule:
    """A left module realized as a subspace of the regular representation."""

    def __init__(self, algebra: StructAlgebra, sub: Subspace):
        self.algebra = algebra
        self.sub = sub
        self.dim = sub.dim

    def basis_vectors(self) -> list[AlgebraElement]:
        return [self.algebra.element(r) for r in self.sub.rows]

    def coordinates(self, elem: AlgebraElement) -> list[Cyclo]:
        coords = self.sub.coordinates(list(elem.coeffs))
        if coords is None:
            raise ValueError("element does not lie in the module")
        return coords

    def action_matrix(self, u: AlgebraElement) -> list[list[Cyclo]]:
        cols = [self.coordinates(u * v) for v in self.basis_vectors()]
        return [[cols[c][r] for c in range(self.dim)] for r in range(self.dim)]

    def check_action_axiom(self, samples: int = 60, seed: int = 1):
        """rho(ab) = rho(a) rho(b) on (sampled) basis pairs."""
        rng = random.Random(seed)
        dim = self.algebra.dim
        pairs = (
            [(i, j) for i in range(dim) for j in range(dim)]
            if dim * dim <= samples
            else [(rng.randrange(dim), rng.randrange(dim)) for _ in range(samples)]
        )
        from .linalg import mat_mul

        for i, j in pairs:
            a, b = self.algebra.basis_element(i), self.algebra.basis_element(j)
            lhs = self.action_matrix(a * b)
            rhs = mat_mul(self.action_matrix(a), self.action_matrix(b), self.algebra.field)
            if lhs != rhs:
                raise AssociativityError(f"module action fails on basis pair ({i}, {j})")


def radical_series(module: LeftModule, rad: list[AlgebraElement]) -> list[Subspace]:
    """Subspaces M ⊃ JM ⊃ J^2 M ⊃ ... ⊃ 0 (last entry zero-dimensional)."""
    alg = module.algebra
    series = [module.sub]
    current = module.basis_vectors()
    while current:
        nxt = Subspace(alg.field, alg.dim)
        for j in rad:
            for v in current:
                nxt.add(list((j * v).coeffs))
        series.append(nxt)
        current = [alg.element(r) for r in nxt.rows]
        if nxt.dim == 0:
            break
    return series


def loewy_series(module: LeftModule, rad: list[AlgebraElement], weight_fn=None) -> LoewyReport:
    """Loewy layer dimensions (and weight censuses, when a census function is given)."""
    series = radical_series(module, rad)
    dims = [series[r].dim - series[r + 1].dim for r in range(len(series) - 1)]
    while dims and dims[-1] == 0:
        dims.pop()
    weights = None
    if weight_fn is not None:
        censuses = [weight_fn(s) for s in series]
        weights = []
        for r in range(len(dims)):
            layer = censuses[r].copy()
            for k, v in censuses[r + 1].items():
                layer[k] = layer.get(k, 0) - v
                if layer[k] == 0:
                    del layer[k]
            weights.append(layer)
    return LoewyReport(dims, weights)


def socle(module: LeftModule, rad: list[AlgebraElement]) -> Subspace:
    """{v in M : J v = 0}, as a subspace in ambient coordinates."""
    alg = module.algebra
    fld = alg.field
    space = module.sub
    for j in rad:
        if space.dim == 0:
            break
        basis = [alg.element(r) for r in space.rows]
        images = [list((j * v).coeffs) for v in basis]
        mat = [[images[t][row] for t in range(len(basis))] for row in range(alg.dim)]
        sols = kernel(mat, fld, len(basis))
        nxt = Subspace(fld, alg.dim)
        for sol in sols:
            vec = zero_vector(fld, alg.dim)
            for c, v in zip(sol, space.rows):
                if not c.is_zero():
                    vec = [a + c * x for a, x in zip(vec, v)]
            nxt.add(vec)
        space = nxt
    return space
