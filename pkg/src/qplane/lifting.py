"""Liftings of two-dimensional quantum linear spaces from a lifting datum.

A datum D = {G, a, b, eps1, eps2, chi1, chi2, gamma} is validated against the
defining conditions and turned into the algebra H(D) on the PBW basis
{g x^i y^j : g in G, 0 <= i < n1, 0 <= j < n2}.  Structure constants come
from a straightening rewriting system: group elements move left across x and
y, yx reduces through the q-commutation relation, and top powers of x and y
truncate through the eps-relations.  The module also exposes the central
class idempotents e_{lambda X}, the class subalgebras they cut out, the
antipode, the integral, and the braided-commutator identity checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import abelian
from .abelian import AbelianGroup, CharSubgroup, Character, GroupElement
from .cyclo import Cyclo, CycloField, field, multiplicative_order
from .structalg import AlgebraElement, StructAlgebra


class DatumError(ValueError):
    """A lifting-datum condition fails; `condition` is the defining equation number."""

    def __init__(self, condition: int, message: str):
        super().__init__(f"condition ({condition}): {message}")
        self.condition = condition


@dataclass(frozen=True)
class CaseTag:
    linked: bool
    potency: str  # nilpotent | seminilpotent | unipotent
    n1: int
    n2: int

    def __str__(self):
        return ("linked " if self.linked else "unlinked ") + self.potency


class LiftingDatum:
    def __init__(
        self,
        group: AbelianGroup,
        a: GroupElement,
        b: GroupElement,
        eps1: int,
        eps2: int,
        chi1: Character,
        chi2: Character,
        gamma=0,
    ):
        self.group = group
        self.a = a
        self.b = b
        self.eps1 = int(eps1)
        self.eps2 = int(eps2)
        self.chi1 = chi1
        self.chi2 = chi2
        if self.eps1 not in (0, 1) or self.eps2 not in (0, 1):
            raise ValueError("eps1 and eps2 must be 0 or 1")
        self.X = CharSubgroup(group, [chi1, chi2])
        # Conductor: every scalar the construction needs is a root of unity of
        # order dividing 2 |X| exp(G), so Q(zeta_M) splits everything.
        self.conductor = 2 * self.X.order * group.exponent
        self.field: CycloField = field(self.conductor)
        self.gamma = self._resolve_gamma(gamma)

    def _resolve_gamma(self, gamma) -> Cyclo:
        fld = self.field
        if isinstance(gamma, Cyclo):
            if gamma.field.m != fld.m:
                raise ValueError("gamma lives in the wrong cyclotomic field")
            return gamma
        if isinstance(gamma, (int, Fraction)):
            f = Fraction(gamma)
            return fld.rational(f.numerator, f.denominator)
        if isinstance(gamma, (list, tuple)):
            out = fld.zero
            for zeta_pow, rat in gamma:
                f = Fraction(rat)
                out = out + fld.zeta(zeta_pow).scale(f.numerator, f.denominator)
            return out
        raise ValueError(f"cannot interpret gamma value {gamma!r}")

    def swapped(self) -> "LiftingDatum":
        """The datum with the roles of (x, a, chi1, eps1) and (y, b, chi2, eps2) exchanged."""
        return LiftingDatum(
            self.group, self.b, self.a, self.eps2, self.eps1, self.chi2, self.chi1, self.gamma
        )

    def describe(self) -> dict:
        return {
            "group": list(self.group.factors),
            "a": list(self.a.exps),
            "b": list(self.b.exps),
            "chi1": list(self.chi1.exps),
            "chi2": list(self.chi2.exps),
            "eps1": self.eps1,
            "eps2": self.eps2,
        }


def validate(datum: LiftingDatum) -> CaseTag:
    """Check the datum conditions and return the case tag.

    The conditions, numbered as in the error messages and the CLI exit path:
      (9)  1 < n1 = |chi1(a)|
      (10) 1 < n2 = |chi2(b)|
      (11) chi1(b) chi2(a) = 1
      (12) chi_i^{n_i} = eps whenever eps_i = 1
      (13) gamma != 0 requires chi1 chi2 = eps and ab != 1
    """
    fld = datum.field
    q1 = abelian.evaluate(datum.chi1, datum.a, fld)
    n1 = multiplicative_order(q1)
    if n1 is None or n1 <= 1:
        raise DatumError(9, f"need 1 < n1 = |chi1(a)|, got chi1(a) of order {n1}")
    q2 = abelian.evaluate(datum.chi2, datum.b, fld)
    n2 = multiplicative_order(q2)
    if n2 is None or n2 <= 1:
        raise DatumError(10, f"need 1 < n2 = |chi2(b)|, got chi2(b) of order {n2}")
    pair = abelian.evaluate(datum.chi1, datum.b, fld) * abelian.evaluate(datum.chi2, datum.a, fld)
    if not pair.is_one():
        raise DatumError(11, "chi1(b) chi2(a) != 1")
    if datum.eps1 and not (datum.chi1 ** n1).is_trivial():
        raise DatumError(12, f"eps1 = 1 but chi1^{n1} != eps")
    if datum.eps2 and not (datum.chi2 ** n2).is_trivial():
        raise DatumError(12, f"eps2 = 1 but chi2^{n2} != eps")
    linked = not datum.gamma.is_zero()
    if linked:
        if not (datum.chi1 * datum.chi2).is_trivial():
            raise DatumError(13, "gamma != 0 but chi1 chi2 != eps")
        if (datum.a * datum.b).is_identity():
            raise DatumError(13, "gamma != 0 but ab = 1")
        # consequences recorded by the linked theory: q = chi2(a), n1 = n2,
        # chi(a) = chi(b) = q^{-1}
        q = abelian.evaluate(datum.chi2, datum.a, fld)
        if n1 != n2:
            raise DatumError(13, "linked datum with n1 != n2 (internal inconsistency)")
        chi_a = abelian.evaluate(datum.chi1, datum.a, fld)
        chi_b = abelian.evaluate(datum.chi1, datum.b, fld)
        if chi_a * q != fld.one or chi_b * q != fld.one:
            raise DatumError(13, "linked datum fails chi(a) = chi(b) = q^(-1)")
    if datum.eps1 == 0 and datum.eps2 == 0:
        potency = "nilpotent"
    elif datum.eps1 == 1 and datum.eps2 == 1:
        potency = "unipotent"
    else:
        potency = "seminilpotent"
    return CaseTag(linked=linked, potency=potency, n1=n1, n2=n2)


class LiftingAlgebra:
    """H(D) realized as a structure-constant algebra on the PBW basis."""

    def __init__(self, datum: LiftingDatum, tag: CaseTag):
        self.datum = datum
        self.tag = tag
        self.field = datum.field
        self.group = datum.group
        self.n1, self.n2 = tag.n1, tag.n2
        fld = self.field
        self.q = abelian.evaluate(datum.chi2, datum.a, fld)
        self._qhat = self.q.inverse()
        self.gamma = datum.gamma
        elems = self.group.elements()
        self._gindex = {g.exps: t for t, g in enumerate(elems)}
        self._gelems = elems
        self.pbw = [
            (g.exps, i, j) for g in elems for i in range(self.n1) for j in range(self.n2)
        ]
        self._index = {key: t for t, key in enumerate(self.pbw)}
        self._ab = (datum.a * datum.b).exps
        self._a_n1 = (datum.a ** self.n1).exps
        self._b_n2 = (datum.b ** self.n2).exps
        self._pow_x_cache: dict[tuple[int, int], dict] = {}
        grading = [
            ((datum.chi1 ** i) * (datum.chi2 ** j)).exps for (_g, i, j) in self.pbw
        ]
        unit = [fld.zero] * len(self.pbw)
        unit[self._index[(self.group.identity().exps, 0, 0)]] = fld.one
        self.algebra = StructAlgebra(
            fld,
            list(self.pbw),
            product_fn=self._basis_product,
            unit_coeffs=unit,
            grading=grading,
            grading_moduli=self.group.factors,
        )
        self.algebra.generators = self.algebra_generators()

    # -- evaluations --------------------------------------------------------

    def chi1_val(self, exps) -> Cyclo:
        return abelian.evaluate(self.datum.chi1, self.group.element(exps), self.field)

    def chi2_val(self, exps) -> Cyclo:
        return abelian.evaluate(self.datum.chi2, self.group.element(exps), self.field)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    # -- distinguished elements ----------------------------------------------

    def monomial(self, g_exps, i: int = 0, j: int = 0) -> AlgebraElement:
        return self.algebra.basis_element(self._index[(tuple(g_exps), i, j)])

    def group_element(self, g: GroupElement) -> AlgebraElement:
        return self.monomial(g.exps)

    def x(self) -> AlgebraElement:
        return self.monomial(self.group.identity().exps, 1, 0)

    def y(self) -> AlgebraElement:
        return self.monomial(self.group.identity().exps, 0, 1)

    def algebra_generators(self) -> list[AlgebraElement]:
        gens = [self.x(), self.y()]
        for t in range(len(self.group.factors)):
            gens.append(self.group_element(self.group.generator(t)))
        return gens

    # -- straightening ---------------------------------------------------------

    def _pow_times_x(self, i: int, j: int) -> dict:
        """PBW expansion of x^i y^j x as {(g_exps, a, b): Cyclo}."""
        key = (i, j)
        got = self._pow_x_cache.get(key)
        if got is not None:
            return got
        fld = self.field
        ident = self.group.identity().exps
        out: dict[tuple, Cyclo] = {}
        if j == 0:
            if i + 1 < self.n1:
                out[(ident, i + 1, 0)] = fld.one
            elif self.datum.eps1:
                out[(self._a_n1, 0, 0)] = fld.one
                out[(ident, 0, 0)] = -fld.one
        else:
            # x^i y^j x = qhat * (x^i y^(j-1) x) y - qhat*gamma*(x^i y^(j-1))(ab - 1)
            rec = self._pow_times_x(i, j - 1)
            for (d, al, be), c in rec.items():
                cq = self._qhat * c
                if be + 1 < self.n2:
                    _acc(out, (d, al, be + 1), cq)
                elif self.datum.eps2:
                    bted = tuple(
                        (u + v) % m for u, v, m in zip(d, self._b_n2, self.group.factors)
                    )
                    _acc(out, (bted, al, 0), cq)
                    _acc(out, (d, al, 0), -cq)
            if not self.gamma.is_zero():
                coeff = self._qhat * self.gamma
                move = (self.chi1_val(self._ab) ** i) * (self.chi2_val(self._ab) ** (j - 1))
                _acc(out, (self._ab, i, j - 1), -(coeff * move.inverse()))
                _acc(out, (ident, i, j - 1), coeff)
        out = {k: v for k, v in out.items() if not v.is_zero()}
        self._pow_x_cache[key] = out
        return out

    def _term_times_x(self, terms: dict) -> dict:
        out: dict[tuple, Cyclo] = {}
        for (g, i, j), c in terms.items():
            for (d, al, be), c2 in self._pow_times_x(i, j).items():
                gd = tuple((u + v) % m for u, v, m in zip(g, d, self.group.factors))
                _acc(out, (gd, al, be), c * c2)
        return {k: v for k, v in out.items() if not v.is_zero()}

    def _term_times_y(self, terms: dict) -> dict:
        out: dict[tuple, Cyclo] = {}
        for (g, i, j), c in terms.items():
            if j + 1 < self.n2:
                _acc(out, (g, i, j + 1), c)
            elif self.datum.eps2:
                gb = tuple((u + v) % m for u, v, m in zip(g, self._b_n2, self.group.factors))
                _acc(out, (gb, i, 0), c)
                _acc(out, (g, i, 0), -c)
        return {k: v for k, v in out.items() if not v.is_zero()}

    def _basis_product(self, t1: int, t2: int):
        (g, i, j), (h, k, l) = self.pbw[t1], self.pbw[t2]
        # move h to the left across x^i y^j
        scalar = (self.chi1_val(h) ** i) * (self.chi2_val(h) ** j)
        gh = tuple((u + v) % m for u, v, m in zip(g, h, self.group.factors))
        terms = {(gh, i, j): scalar.inverse()}
        for _ in range(k):
            terms = self._term_times_x(terms)
        for _ in range(l):
            terms = self._term_times_y(terms)
        return [(self._index[key], c) for key, c in terms.items()]

    # -- elements from linear data ----------------------------------------------

    def idempotent(self, lam: Character) -> AlgebraElement:
        """e_lambda inside H (the group-algebra idempotent)."""
        fld = self.field
        coeffs = [fld.zero] * self.dim
        n = self.group.order
        for g in self._gelems:
            val = abelian.evaluate(lam, g.inverse(), fld).scale(1, n)
            coeffs[self._index[(g.exps, 0, 0)]] = val
        return self.algebra.element(coeffs)

    def coset_idempotent(self, lam: Character) -> AlgebraElement:
        out = self.algebra.zero()
        for chi in self.datum.X.elements:
            out = out + self.idempotent(lam * chi)
        return out


def build(datum: LiftingDatum) -> LiftingAlgebra:
    """Validate and construct H(D); associativity is checked per structalg policy."""
    tag = validate(datum)
    H = LiftingAlgebra(datum, tag)
    H.algebra.check_associativity()
    return H


# -- antipode and integral ------------------------------------------------------


def antipode(H: LiftingAlgebra, u: AlgebraElement) -> AlgebraElement:
    """S(g x^i y^j) = S(y)^j S(x)^i g^{-1} with S(x) = -a^{-1} x, S(y) = -b^{-1} y."""
    fld = H.field
    sx = H.monomial(H.datum.a.inverse().exps, 1, 0).scale(fld.rational(-1))
    sy = H.monomial(H.datum.b.inverse().exps, 0, 1).scale(fld.rational(-1))
    out = H.algebra.zero()
    for t, c in enumerate(u.coeffs):
        if c.is_zero():
            continue
        g, i, j = H.pbw[t]
        term = H.monomial(H.group.element(g).inverse().exps)
        acc = H.algebra.unit
        for _ in range(j):
            acc = acc * sy
        for _ in range(i):
            acc = acc * sx
        out = out + (acc * term).scale(c)
    return out


def antipode_squared_conjugator(H: LiftingAlgebra) -> GroupElement | None:
    """A group element g with S^2(u) = g^{-1} u g for every basis u, if one exists."""
    basis = [H.algebra.basis_element(t) for t in range(H.dim)]
    s2 = [antipode(H, antipode(H, u)) for u in basis]
    for g in H.group.elements():
        ge = H.group_element(g)
        gi = H.group_element(g.inverse())
        if all(gi * u * ge == v for u, v in zip(basis, s2)):
            return g
    return None


def integral(H: LiftingAlgebra) -> AlgebraElement:
    """I = e x^(n1-1) y^(n2-1) with e the average of the group elements."""
    fld = H.field
    coeffs = [fld.zero] * H.dim
    for g in H._gelems:
        coeffs[H._index[(g.exps, H.n1 - 1, H.n2 - 1)]] = fld.rational(1, H.group.order)
    return H.algebra.element(coeffs)


def check_integral(H: LiftingAlgebra) -> list[str]:
    """Failures among the unimodularity identities x I = I y = y I = I x = 0, g I = I g = I."""
    I = integral(H)
    bad = []
    x, y = H.x(), H.y()
    if not (x * I).is_zero():
        bad.append("x*I != 0")
    if not (I * y).is_zero():
        bad.append("I*y != 0")
    if not (y * I).is_zero():
        bad.append("y*I != 0")
    if not (I * x).is_zero():
        bad.append("I*x != 0")
    for t in range(len(H.group.factors)):
        g = H.group_element(H.group.generator(t))
        if g * I != I:
            bad.append(f"g{t}*I != I")
        if I * g != I:
            bad.append(f"I*g{t} != I")
    return bad


# -- braided commutator identities ---------------------------------------------


def check_braided_commutators(H: LiftingAlgebra, s_max: int | None = None) -> list[tuple[int, str]]:
    """Exact check of the power commutator rules; returns failing (s, side) pairs.

    For 1 <= s <= s_max:
      x y^s - q^s y^s x            = gamma (s)_q y^(s-1) (q^(s-1) ab - 1)
      y x^s - q^(-s) x^s y         = -gamma q^(-s) (s)_q x^(s-1) (q^(-(s-1)) ab - 1)
    with q = chi2(a).  The mirror identity carries the minus sign that the
    iterated commutator forces (checked here rather than trusted).
    """
    if s_max is None:
        s_max = max(H.n1, H.n2) - 1
    fld = H.field
    q = H.q
    x, y = H.x(), H.y()
    ab = H.monomial(H._ab)
    one = H.algebra.unit
    failures = []
    from .cyclo import q_int

    for s in range(1, s_max + 1):
        ys = y ** s
        lhs = x * ys - (ys * x).scale(q ** s)
        rhs = ((y ** (s - 1)) * (ab.scale(q ** (s - 1)) - one)).scale(H.gamma * q_int(s, q))
        if lhs != rhs:
            failures.append((s, "x,y^s"))
        xs = x ** s
        lhs2 = y * xs - (xs * y).scale(q ** (-s))
        coeff = -(H.gamma * (q ** (-s)) * q_int(s, q))
        rhs2 = ((x ** (s - 1)) * (ab.scale(q ** (-(s - 1))) - one)).scale(coeff)
        if lhs2 != rhs2:
            failures.append((s, "y,x^s"))
    return failures


# -- class subalgebras -----------------------------------------------------------


class ClassSubalgebra:
    """He_{lambda X} on the basis {e_{lambda chi} xbar^{j1} ybar^{j2}}."""

    def __init__(self, parent: LiftingAlgebra, lam: Character):
        self.parent = parent
        self.lam = lam
        self.X = parent.datum.X
        self.field = parent.field
        fld = self.field
        n1, n2 = parent.n1, parent.n2
        self.chars = [lam * chi for chi in self.X.elements]
        self.basis = [
            (mu, i, j) for mu in self.chars for i in range(n1) for j in range(n2)
        ]
        self._index = {(mu.exps, i, j): t for t, (mu, i, j) in enumerate(self.basis)}
        self._ident_pbw = parent.group.identity().exps
        unit = [fld.zero] * len(self.basis)
        for mu in self.chars:
            unit[self._index[(mu.exps, 0, 0)]] = fld.one
        grading = [
            ((parent.datum.chi1 ** i) * (parent.datum.chi2 ** j)).exps
            for (_mu, i, j) in self.basis
        ]
        self.algebra = StructAlgebra(
            fld,
            [(mu.exps, i, j) for (mu, i, j) in self.basis],
            product_fn=self._basis_product,
            unit_coeffs=unit,
            grading=grading,
            grading_moduli=parent.group.factors,
        )
        self.algebra.generators = [self.xbar(), self.ybar()] + [
            self.gbar(parent.group.generator(t)) for t in range(len(parent.group.factors))
        ]
        self.idempotent_in_parent = parent.coset_idempotent(lam)
        xs = self.x_power_scalar()
        ys = self.y_power_scalar()
        self.x_nilpotent = xs.is_zero()
        self.y_nilpotent = ys.is_zero()

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def __repr__(self):
        return f"ClassSubalgebra(lambda={self.lam}, dim={self.dim})"

    # -- products: e_mu x^i y^j collapse group parts to character values ---------

    def _basis_product(self, t1: int, t2: int):
        mu, i, j = self.basis[t1]
        nu, k, l = self.basis[t2]
        parent = self.parent
        shift = (parent.datum.chi1 ** i) * (parent.datum.chi2 ** j)
        if (nu * shift).exps != mu.exps:
            return []
        h1 = parent._index[(self._ident_pbw, i, j)]
        h2 = parent._index[(self._ident_pbw, k, l)]
        out = []
        for idx, c in parent.algebra.basis_product(h1, h2):
            d, al, be = parent.pbw[idx]
            val = abelian.evaluate(mu, parent.group.element(d), self.field)
            out.append((self._index[(mu.exps, al, be)], c * val))
        return out

    # -- distinguished elements ----------------------------------------------------

    def unit(self) -> AlgebraElement:
        return self.algebra.unit

    def xbar(self) -> AlgebraElement:
        fld = self.field
        coeffs = [fld.zero] * len(self.basis)
        for mu in self.chars:
            coeffs[self._index[(mu.exps, 1, 0)]] = fld.one
        return self.algebra.element(coeffs)

    def ybar(self) -> AlgebraElement:
        fld = self.field
        coeffs = [fld.zero] * len(self.basis)
        for mu in self.chars:
            coeffs[self._index[(mu.exps, 0, 1)]] = fld.one
        return self.algebra.element(coeffs)

    def gbar(self, g: GroupElement) -> AlgebraElement:
        fld = self.field
        coeffs = [fld.zero] * len(self.basis)
        for mu in self.chars:
            coeffs[self._index[(mu.exps, 0, 0)]] = abelian.evaluate(mu, g, fld)
        return self.algebra.element(coeffs)

    def char_idempotent(self, mu: Character) -> AlgebraElement:
        """The image of e_mu for mu in the coset lambda X."""
        fld = self.field
        coeffs = [fld.zero] * len(self.basis)
        coeffs[self._index[(mu.exps, 0, 0)]] = fld.one
        return self.algebra.element(coeffs)

    def weight_trivial_indices(self) -> list[int]:
        """Basis indices of conjugation weight eps (where central elements live)."""
        eps = self.parent.group.trivial_character().exps
        return [t for t, lab in enumerate(self.algebra.grading) if lab == eps]

    # -- scalars -------------------------------------------------------------------

    def x_power_scalar(self) -> Cyclo:
        """The scalar c with xbar^{n1} = c * unit."""
        p = self.xbar() ** self.parent.n1
        return self._as_scalar(p, "xbar^n1")

    def y_power_scalar(self) -> Cyclo:
        p = self.ybar() ** self.parent.n2
        return self._as_scalar(p, "ybar^n2")

    def _as_scalar(self, elem: AlgebraElement, what: str) -> Cyclo:
        unit = self.algebra.unit
        lead = next((t for t, c in enumerate(unit.coeffs) if not c.is_zero()))
        c = elem.coeffs[lead]
        if elem != unit.scale(c):
            raise ArithmeticError(f"{what} is not a scalar in the class subalgebra")
        return c

    def potency(self) -> str:
        if self.x_nilpotent and self.y_nilpotent:
            return "nilpotent"
        if not self.x_nilpotent and not self.y_nilpotent:
            return "unipotent"
        return "seminilpotent"

    # -- moving between H and the subalgebra -----------------------------------------

    def embed(self, elem: AlgebraElement) -> AlgebraElement:
        """The element of H corresponding to a class subalgebra element."""
        parent = self.parent
        fld = self.field
        coeffs = [fld.zero] * parent.dim
        n = parent.group.order
        for t, c in enumerate(elem.coeffs):
            if c.is_zero():
                continue
            mu, i, j = self.basis[t]
            for g in parent._gelems:
                val = abelian.evaluate(mu, g.inverse(), fld).scale(1, n)
                idx = parent._index[(g.exps, i, j)]
                coeffs[idx] = coeffs[idx] + c * val
        return parent.algebra.element(coeffs)

    def extract(self, elem: AlgebraElement) -> AlgebraElement:
        """Coordinates of an H-element lying in He_{lambda X} (character pairing)."""
        parent = self.parent
        fld = self.field
        out = [fld.zero] * len(self.basis)
        for t, c in enumerate(elem.coeffs):
            if c.is_zero():
                continue
            g, i, j = parent.pbw[t]
            gel = parent.group.element(g)
            for mu in self.chars:
                key = (mu.exps, i, j)
                out[self._index[key]] = out[self._index[key]] + c * abelian.evaluate(mu, gel, fld)
        return self.algebra.element(out)

    def weight_census(self, sub) -> dict:
        """Multiset of left G-weights of a G-stable subspace in subalgebra coordinates.

        Left multiplication by g is diagonal on the basis: g e_mu x^i y^j =
        mu(g) e_mu x^i y^j, so the weight of a basis line is its mu and a
        G-stable subspace splits along the mu-blocks of the coordinates.  Each
        reduced echelon row then lies in a single block, which we assert.
        """
        from collections import Counter

        census = Counter()
        for row, p in zip(sub.rows, sub.pivots):
            mu = self.basis[p][0]
            for t, c in enumerate(row):
                if not c.is_zero() and self.basis[t][0].exps != mu.exps:
                    raise ArithmeticError("subspace is not G-stable; weight census undefined")
            census[mu.exps] += 1
        return census


def _acc(d: dict, key, val):
    cur = d.get(key)
    d[key] = val if cur is None else cur + val


def class_decomposition(H: LiftingAlgebra) -> list[ClassSubalgebra]:
    """One class subalgebra per coset lambda X, in transversal order."""
    return [ClassSubalgebra(H, lam) for lam in H.datum.X.transversal]
