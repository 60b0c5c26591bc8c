"""Exact arithmetic in a fixed cyclotomic field Q(zeta_M).

An element is a dense vector of rationals representing a residue in
Q[x]/(Phi_M(x)), where Phi_M is the M-th cyclotomic polynomial.  The vector
is kept in canonical form (fully reduced mod Phi_M, common denominator,
gcd-normalized), so equality is componentwise and zero-testing is trivial.

Internally a Cyclo stores one positive integer denominator and a tuple of
integer numerators; all ring operations run on raw integers, which keeps
dense linear algebra over the field fast enough for the algebra engines
built on top of this module.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce


def cyclotomic_polynomial(m: int) -> list[int]:
    """Integer coefficient list (constant first) of the m-th cyclotomic polynomial."""
    # Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact polynomial division.
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d:
            continue
        phi_d = cyclotomic_polynomial(d)
        poly = _int_poly_div(poly, phi_d)
    return poly


def _int_poly_div(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials, den monic up to sign.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        q = c // lead
        out[k] = q
        if q:
            for i, dc in enumerate(den):
                num[k + i] -= q * dc
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return out


_FIELD_CACHE: dict[int, "CycloField"] = {}


def field(m: int) -> "CycloField":
    """The cyclotomic field Q(zeta_m), cached per conductor."""
    if m not in _FIELD_CACHE:
        _FIELD_CACHE[m] = CycloField(m)
    return _FIELD_CACHE[m]


class CycloField:
    """Q(zeta_M) with precomputed reduction data for fast multiplication."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("conductor must be a positive integer")
        self.m = m
        phi = cyclotomic_polynomial(m)
        self.phi = phi
        self.degree = len(phi) - 1
        d = self.degree
        # red[t] = integer coefficient vector of x^(d+t) mod Phi_M, t = 0..d-2.
        red = []
        if d > 0:
            row = [-c for c in phi[:d]]
            red.append(tuple(row))
            for _ in range(d - 2):
                top = row[d - 1]
                row = [0] + row[: d - 1]
                if top:
                    row = [a + top * b for a, b in zip(row, red[0])]
                red.append(tuple(row))
        self._red = red
        self.zero = Cyclo(self, 1, (0,) * d, _normalized=True)
        one = [0] * d
        one[0] = 1
        self.one = Cyclo(self, 1, tuple(one), _normalized=True)
        # Canonical forms of zeta^k for k = 0..M-1; used for discrete logs.
        self._monomials: list[Cyclo] | None = None

    def __repr__(self):
        return f"CycloField(M={self.m})"

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.m == self.m

    def __hash__(self):
        return hash(("CycloField", self.m))

    # -- constructors ----------------------------------------------------

    def rational(self, p, q: int = 1) -> "Cyclo":
        fr = Fraction(p, q)
        nums = [0] * self.degree
        nums[0] = fr.numerator
        return Cyclo(self, fr.denominator, tuple(nums))

    def from_coeffs(self, coeffs) -> "Cyclo":
        """Element with the given rational coefficients over 1, zeta, ..., zeta^(d-1)."""
        fracs = [Fraction(c) for c in coeffs]
        if len(fracs) > self.degree:
            raise ValueError("coefficient vector longer than field degree")
        fracs += [Fraction(0)] * (self.degree - len(fracs))
        den = reduce(math.lcm, (f.denominator for f in fracs), 1)
        nums = tuple(f.numerator * (den // f.denominator) for f in fracs)
        return Cyclo(self, den, nums)

    def zeta(self, k: int = 1) -> "Cyclo":
        """The root of unity zeta_M^k in canonical form."""
        return self.monomials()[k % self.m]

    def monomials(self) -> list["Cyclo"]:
        if self._monomials is None:
            d = self.degree
            mono = []
            cur = [0] * d
            cur[0] = 1
            for k in range(self.m):
                mono.append(Cyclo(self, 1, tuple(cur)))
                top = cur[d - 1] if d > 0 else 0
                cur = [0] + cur[: d - 1]
                if top:
                    cur = [a + top * b for a, b in zip(cur, self._red[0])]
            self._monomials = mono
        return self._monomials

    def reduce_int_vector(self, vec: list[int]) -> tuple[int, ...]:
        """Reduce an integer coefficient vector of length <= 2d-1 mod Phi_M."""
        d = self.degree
        out = list(vec[:d]) + [0] * (d - len(vec))
        for t in range(len(vec) - 1, d - 1, -1):
            c = vec[t]
            if c:
                row = self._red[t - d]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)


class Cyclo:
    """An element of Q(zeta_M), immutable and in canonical reduced form."""

    __slots__ = ("field", "den", "num")

    def __init__(self, fld: CycloField, den: int, num: tuple[int, ...], _normalized=False):
        if not _normalized:
            if den < 0:
                den, num = -den, tuple(-a for a in num)
            g = den
            for a in num:
                g = math.gcd(g, a)
                if g == 1:
                    break
            if g > 1:
                den //= g
                num = tuple(a // g for a in num)
        self.field = fld
        self.den = den
        self.num = num

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def coeffs(self) -> list[Fraction]:
        return [Fraction(a, self.den) for a in self.num]

    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.num) if a]

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Cyclo"):
        if self.field is not other.field and self.field != other.field:
            raise ValueError("elements of different cyclotomic fields")

    def __add__(self, other):
        if not isinstance(other, Cyclo):
            return NotImplemented
        self._check(other)
        d1, d2 = self.den, other.den
        if d1 == d2:
            return Cyclo(self.field, d1, tuple(a + b for a, b in zip(self.num, other.num)))
        g = math.gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        return Cyclo(
            self.field,
            d1 * m1,
            tuple(a * m1 + b * m2 for a, b in zip(self.num, other.num)),
        )

    def __sub__(self, other):
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Cyclo(self.field, self.den, tuple(-a for a in self.num), _normalized=True)

    def __mul__(self, other):
        if not isinstance(other, Cyclo):
            return NotImplemented
        self._check(other)
        a, b = self, other
        if a.is_rational() or (not b.is_rational() and len(b.support()) < len(a.support())):
            a, b = b, a
        if b.is_rational():
            p = b.num[0]
            if p == 0:
                return self.field.zero
            return Cyclo(self.field, a.den * b.den, tuple(p * c for c in a.num))
        d = self.field.degree
        conv = [0] * (2 * d - 1)
        bn = b.num
        for i, c in enumerate(a.num):
            if c:
                for j, e in enumerate(bn):
                    if e:
                        conv[i + j] += c * e
        return Cyclo(self.field, a.den * b.den, self.field.reduce_int_vector(conv))

    def scale(self, p, q: int = 1) -> "Cyclo":
        fr = Fraction(p, q)
        return Cyclo(self.field, self.den * fr.denominator, tuple(fr.numerator * a for a in self.num))

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            r = self.as_rational()
            return self.field.rational(r.denominator, r.numerator)
        # Extended Euclid of self against Phi_M over Q[x]; rare, so Fractions are fine.
        fld = self.field
        phi = [Fraction(c) for c in fld.phi]
        a = [Fraction(n, self.den) for n in self.num]
        r0, r1 = phi, _frac_trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, _frac_trim(r)
            s0, s1 = s1, _frac_trim(_frac_poly_sub(s0, _frac_poly_mul(q, s1)))
        if not r1 or r1[0] == 0:
            raise ArithmeticError("element not invertible mod Phi_M")
        c = r1[0]
        inv = [s / c for s in s1]
        return fld.from_coeffs(inv[: fld.degree])

    def __truediv__(self, other):
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self.field.m == other.field.m and self.den == other.den and self.num == other.num

    def __hash__(self):
        return hash((self.field.m, self.den, self.num))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, a in enumerate(self.num):
            if not a:
                continue
            c = Fraction(a, self.den)
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"z^{i}")
            else:
                parts.append(f"({c})*z^{i}")
        return " + ".join(parts)


def _frac_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _frac_poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, e in enumerate(b):
                out[i + j] += c * e
    return out


def _frac_poly_sub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _frac_poly_divmod(a, b):
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + db] / lead
        q[k] = c
        if c:
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    return q, a[:db] if db else [Fraction(0)]


# -- q-integer calculus ------------------------------------------------------


def q_int(s: int, q: Cyclo) -> Cyclo:
    """(s)_q = 1 + q + ... + q^(s-1); (0)_q = 0."""
    out = q.field.zero
    p = q.field.one
    for _ in range(s):
        out = out + p
        p = p * q
    return out


def q_factorial(s: int, q: Cyclo) -> Cyclo:
    out = q.field.one
    for t in range(1, s + 1):
        out = out * q_int(t, q)
    return out


def q_binomial(s: int, i: int, q: Cyclo) -> Cyclo:
    """Gaussian binomial, by the q-Pascal recursion (polynomial in q)."""
    if not 0 <= i <= s:
        raise ValueError("q_binomial needs 0 <= i <= s")
    fld = q.field
    row = [fld.one]
    for t in range(1, s + 1):
        qp = fld.one
        new = [fld.one]
        for k in range(1, t):
            qp = qp * q
            new.append(row[k - 1] + qp * row[k])
        new.append(fld.one)
        row = new
    return row[i]


# -- root-of-unity utilities -------------------------------------------------


def root_of_unity(fld: CycloField, k: int) -> Cyclo:
    """zeta_M^k (k taken mod M)."""
    return fld.zeta(k)


def discrete_log(x: Cyclo) -> int | None:
    """j with x = zeta_M^j, or None if x is not a power of zeta_M."""
    for j, mono in enumerate(x.field.monomials()):
        if x == mono:
            return j
    return None


def multiplicative_order(x: Cyclo) -> int | None:
    """Least t >= 1 with x^t = 1, or None when x is not a root of unity."""
    if x.is_zero():
        raise ValueError("multiplicative order of zero")
    # All roots of unity in Q(zeta_M) have order dividing lcm(2, M).
    bound = math.lcm(2, x.field.m)
    for t in sorted(_divisors(bound)):
        if (x ** t).is_one():
            return t
    return None


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return out


def monomial_split(x: Cyclo) -> tuple[Fraction, int] | None:
    """(r, j) with x = r * zeta_M^j and r rational, or None."""
    if x.is_zero():
        return None
    if x.is_rational():
        return x.as_rational(), 0
    for j in range(1, x.field.m):
        y = x * x.field.zeta(-j)
        if y.is_rational():
            return y.as_rational(), j
    return None


class RootNotInFieldError(ArithmeticError):
    """An n-th root does not lie in Q(zeta_M): the conductor was chosen too small."""


def nth_roots(kappa: Cyclo, n: int) -> list[Cyclo]:
    """All n solutions of rho^n = kappa in Q(zeta_M), deterministically ordered.

    For root-of-unity kappa the roots are powers of zeta_M and are sorted by
    exponent.  Other radicands are resolved by a rational-part extraction or,
    failing that, exact factorization of t^n - kappa over the field; a missing
    root raises RootNotInFieldError.
    """
    if kappa.is_zero():
        raise ValueError("nth_roots of zero")
    fld = kappa.field
    m = fld.m
    if m % n == 0:
        j = discrete_log(kappa)
        if j is not None:
            g = math.gcd(n, m)
            if j % g:
                raise RootNotInFieldError(f"zeta^{j} has no {n}-th root in Q(zeta_{m})")
            step = m // g
            j0 = (j // g) * pow(n // g, -1, m // g) % (m // g)
            exps = sorted((j0 + t * step) % m for t in range(g))
            if len(exps) != n:
                raise RootNotInFieldError(f"only {len(exps)} of {n} roots lie in Q(zeta_{m})")
            return [fld.zeta(e) for e in exps]
    root = _one_nth_root(kappa, n)
    if m % n:
        raise RootNotInFieldError(f"mu_{n} is not contained in Q(zeta_{m})")
    roots = sorted((root * fld.zeta(t * (m // n)) for t in range(n)), key=lambda r: (r.den, r.num))
    return roots


def _one_nth_root(kappa: Cyclo, n: int) -> Cyclo:
    fld = kappa.field
    split = monomial_split(kappa)
    if split is not None:
        r, j = split
        # Fold a negative rational part into the monomial when -1 = zeta^(M/2).
        if r < 0 and n % 2 == 0 and fld.m % 2 == 0:
            r, j = -r, (j + fld.m // 2) % fld.m
        rt = _rational_nth_root(r, n)
        if rt is not None:
            g = math.gcd(n, fld.m)
            if j % g == 0:
                j0 = (j // g) * pow(n // g, -1, fld.m // g) % (fld.m // g)
                return fld.zeta(j0).scale(rt.numerator, rt.denominator)
    return _root_via_sympy(kappa, n)


def _rational_nth_root(r: Fraction, n: int) -> Fraction | None:
    sign = 1
    if r < 0:
        if n % 2 == 0:
            return None
        sign = -1
        r = -r
    p = _int_nth_root(r.numerator, n)
    q = _int_nth_root(r.denominator, n)
    if p is None or q is None:
        return None
    return Fraction(sign * p, q)


def _int_nth_root(a: int, n: int) -> int | None:
    if a == 0:
        return 0
    r = round(a ** (1.0 / n))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** n == a:
            return c
    return None


_SYMPY_FIELDS: dict[int, tuple] = {}


def _sympy_field(fld: CycloField):
    """(alpha, K): an abstract root of Phi_M and the sympy field Q(alpha).

    alpha |-> zeta_M is a field isomorphism, so equations solved over Q(alpha)
    transport back to our canonical representation coefficient-wise.
    """
    import sympy

    if fld.m not in _SYMPY_FIELDS:
        x = sympy.Symbol("_zeta")
        phi = sympy.Poly(list(reversed(fld.phi)), x)
        alpha = sympy.CRootOf(phi, 0)
        _SYMPY_FIELDS[fld.m] = (alpha, sympy.QQ.algebraic_field(alpha))
    return _SYMPY_FIELDS[fld.m]


def _to_sympy(c: Cyclo, alpha):
    import sympy

    return sympy.Add(*[sympy.Rational(a, c.den) * alpha ** i for i, a in enumerate(c.num) if a])


def _from_sympy_in_field(value, fld: CycloField, alpha) -> Cyclo:
    import sympy

    value = sympy.expand(value)
    out = fld.zero
    if value == 0:
        return out
    for (e,), c in sympy.Poly(value, alpha).terms():
        c = sympy.Rational(c)
        out = out + fld.zeta(e).scale(c.p, c.q)
    return out


def _root_via_sympy(kappa: Cyclo, n: int) -> Cyclo:
    """Exact root of t^n = kappa via factorization over Q(zeta_M)."""
    import sympy

    fld = kappa.field
    alpha, K = _sympy_field(fld)
    t = sympy.symbols("t")
    poly = sympy.Poly(t ** n - _to_sympy(kappa, alpha), t, domain=K)
    for fac, _mult in poly.factor_list()[1]:
        if fac.degree() == 1:
            c1, c0 = fac.all_coeffs()
            root = _from_sympy_in_field(-c0 / c1, fld, alpha)
            if (root ** n) == kappa:
                return root
    raise RootNotInFieldError(f"t^{n} - ({kappa}) has no root in Q(zeta_{fld.m})")


_SUBFIELD_CACHE: dict[tuple[int, int], tuple] = {}


def _subfield_basis(fld: CycloField, mp: int):
    """(rational Subspace of Q(zeta_mp) inside Q(zeta_M), its monomial images)."""
    key = (fld.m, mp)
    if key not in _SUBFIELD_CACHE:
        from .linalg import Subspace

        rat = field(1)
        small = field(mp)
        monos = [fld.zeta(k * (fld.m // mp)) for k in range(small.degree)]
        vecs = [[rat.rational(f.numerator, f.denominator) for f in mono.coeffs()] for mono in monos]
        sub = Subspace(rat, fld.degree)
        independent = all(sub.add(list(v)) for v in vecs)
        _SUBFIELD_CACHE[key] = (sub if independent else None, monos, vecs)
    return _SUBFIELD_CACHE[key]


def _descend_to_subfield(c: Cyclo, mp: int) -> Cyclo | None:
    """The element of Q(zeta_mp) equal to c, or None when c is not in the subfield."""
    fld = c.field
    if mp == fld.m:
        return c
    sub, _monos, vecs = _subfield_basis(fld, mp)
    if sub is None:
        return None
    from .linalg import solve

    rat = field(1)
    target = [rat.rational(f.numerator, f.denominator) for f in c.coeffs()]
    mat = [[vecs[k][r] for k in range(len(vecs))] for r in range(fld.degree)]
    sol = solve(mat, target, rat, len(vecs))
    if sol is None:
        return None
    small = field(mp)
    return small.from_coeffs([s.as_rational() for s in sol])


def _ascend_from_subfield(c: Cyclo, fld: CycloField) -> Cyclo:
    small = c.field
    out = fld.zero
    for k, f in enumerate(c.coeffs()):
        if f:
            out = out + fld.zeta(k * (fld.m // small.m)).scale(f.numerator, f.denominator)
    return out


def _minimal_coefficient_field(coeffs: list[Cyclo]) -> tuple[int, list[Cyclo]]:
    """Smallest conductor M' | M with all coefficients in Q(zeta_M'), and the
    descended coefficients."""
    fld = coeffs[0].field
    for mp in sorted(_divisors(fld.m)):
        down = []
        for c in coeffs:
            dc = _descend_to_subfield(c, mp)
            if dc is None:
                break
            down.append(dc)
        else:
            return mp, down
    return fld.m, coeffs


def factor_roots_in_field(coeffs: list[Cyclo]) -> list[tuple[Cyclo, int]] | None:
    """Roots (with multiplicity) of a monic polynomial over Q(zeta_M).

    Returns None when the polynomial does not split into linear factors over
    the field.  Coefficients are constant-first and include the leading 1.
    Factoring runs over the smallest cyclotomic subfield containing the
    coefficients (conductors are usually padded well beyond what a given
    polynomial needs), and only genuinely unsplit factors are retried upstairs.
    """
    fld = coeffs[0].field
    mp, down = _minimal_coefficient_field(coeffs)
    roots: list[tuple[Cyclo, int]] = []
    total = 0
    pending: list[tuple[list[Cyclo], int]] = []
    for fac_coeffs, mult in _sympy_factor_list(down):
        if len(fac_coeffs) == 2:
            root = (-fac_coeffs[0]) / fac_coeffs[1]
            roots.append((_ascend_from_subfield(root, fld) if mp != fld.m else root, mult))
            total += mult
        else:
            pending.append((fac_coeffs, mult))
    if pending and mp != fld.m:
        # a factor irreducible over the small field may still split over Q(zeta_M)
        for fac_coeffs, mult in pending:
            up = [_ascend_from_subfield(c, fld) for c in fac_coeffs]
            for fac2, mult2 in _sympy_factor_list(up):
                if len(fac2) != 2:
                    return None
                root = (-fac2[0]) / fac2[1]
                roots.append((root, mult * mult2))
                total += mult * mult2
    elif pending:
        return None
    if total != len(coeffs) - 1:
        return None
    roots.sort(key=lambda rm: (rm[0].den, rm[0].num))
    return roots


def _sympy_factor_list(coeffs: list[Cyclo]) -> list[tuple[list[Cyclo], int]]:
    """Irreducible factors (as coefficient lists, constant first) over the
    coefficients' own cyclotomic field."""
    import sympy

    fld = coeffs[0].field
    t = sympy.symbols("t")
    if fld.degree == 1:  # plain rationals
        expr = sympy.Add(
            *[sympy.Rational(c.num[0], c.den) * t ** i for i, c in enumerate(coeffs)]
        )
        poly = sympy.Poly(expr, t, domain="QQ")
        out = []
        for fac, mult in poly.factor_list()[1]:
            fac_coeffs = [
                fld.rational(sympy.Rational(c).p, sympy.Rational(c).q)
                for c in reversed(fac.all_coeffs())
            ]
            out.append((fac_coeffs, mult))
        return out
    alpha, K = _sympy_field(fld)
    expr = sympy.Add(*[_to_sympy(c, alpha) * t ** i for i, c in enumerate(coeffs)])
    poly = sympy.Poly(expr, t, domain=K)
    out = []
    for fac, mult in poly.factor_list()[1]:
        fac_coeffs = [
            _from_sympy_in_field(sympy.expand(c), fld, alpha) for c in reversed(fac.all_coeffs())
        ]
        out.append((fac_coeffs, mult))
    return out
