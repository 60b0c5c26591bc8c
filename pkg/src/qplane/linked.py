"""The linked case: EFK normal form, Casimir element, standard cyclic modules,
and the complete classification of linked class subalgebras.

The normal form follows the constructive proof deterministically: theta is the
canonical primitive N-th root generating chi(G) with theta^m = q, g0 the least
group element mapping to it, and the square-root branches are fixed by taking
mu with mu^(2m) = alpha/beta of least exponent and sqrt(alpha*beta) := alpha *
mu^(-m), which makes both scalar identities hold on the nose instead of up to
sign.  Every relation produced is then verified by exact multiplication; a
failure is an internal error, never silently accepted.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from . import abelian
from .cyclo import Cyclo, multiplicative_order, nth_roots, q_binomial, q_factorial, q_int
from .lifting import ClassSubalgebra
from .reports import (
    BlockInfo,
    ClassReport,
    ProjectiveInfo,
    QuiverDescription,
    SimpleInfo,
    chi_label,
    scalar_label,
)
from .structalg import AlgebraElement, NonSplitError


class RelationError(ArithmeticError):
    """An EFK relation fails after construction: internal error."""


@dataclass
class EFKPresentation:
    sub: ClassSubalgebra
    E: AlgebraElement
    F: AlgebraElement
    K: AlgebraElement
    K_inv: AlgebraElement
    theta: Cyclo
    kappa: Cyclo
    eta: Cyclo
    q: Cyclo
    n: int
    m: int
    N: int
    En_scalar: Cyclo
    Fn_scalar: Cyclo
    # records of the construction choices
    g0: object = None
    h1: object = None
    h2: object = None
    alpha: Cyclo | None = None
    beta: Cyclo | None = None
    mu: Cyclo | None = None
    mirrored: bool = False

    @property
    def algebra(self):
        return self.sub.algebra

    def roots(self) -> list[Cyclo]:
        """R_{kappa,N} in canonical exponent order."""
        return nth_roots(self.kappa, self.N)

    def e_nilpotent(self) -> bool:
        return self.En_scalar.is_zero()

    def f_nilpotent(self) -> bool:
        return self.Fn_scalar.is_zero()


def efk_normal_form(sub: ClassSubalgebra) -> EFKPresentation:
    """Generators E, F, K of the class subalgebra with the six defining relations."""
    parent = sub.parent
    if parent.gamma.is_zero():
        raise ValueError("EFK normal form needs a linked lifting")
    fld = sub.field
    d = parent.datum
    chi = d.chi1
    q = parent.q
    n = parent.n1
    N = d.X.order
    if N % n:
        raise RelationError("|X| is not a multiple of n")
    m = N // n
    zN = fld.zeta(fld.m // N)
    theta = None
    for t in range(1, N + 1):
        if math.gcd(t, N) == 1 and (zN ** (t * m)) == q:
            theta = zN ** t
            break
    if theta is None:
        raise RelationError("no primitive N-th root theta with theta^m = q")
    g0 = next(
        (g for g in parent.group.elements() if abelian.evaluate(chi, g, fld) == theta), None
    )
    if g0 is None:
        raise RelationError("no group element with chi(g0) = theta")
    h1 = d.a.inverse() * (g0 ** m).inverse()
    h2 = d.b * (g0 ** m)
    for h in (h1, h2):
        if chi.pairing_exponent(h) != 0:
            raise RelationError("h1, h2 do not land in X-perp")
    alpha = abelian.evaluate(sub.lam, h1, fld)
    beta = abelian.evaluate(sub.lam, h2, fld)
    # mu^(2m) = alpha/beta; then sqrt(alpha beta) := alpha mu^(-m) satisfies
    # sqrt * mu^m = alpha and sqrt * mu^(-m) = beta exactly.
    mu = nth_roots(alpha / beta, 2 * m)[0]
    eta = parent.gamma * alpha * (mu ** m).inverse()
    K = sub.gbar(g0).scale(mu)
    E = sub.gbar(d.a.inverse()) * sub.xbar()
    F = sub.ybar()
    kappa = sub._as_scalar(K ** N, "K^N")
    if kappa.is_zero():
        raise RelationError("kappa = 0")
    K_inv = (K ** (N - 1)).scale(kappa.inverse())
    En = sub._as_scalar(E ** n, "E^n")
    Fn = sub._as_scalar(F ** n, "F^n")
    pres = EFKPresentation(
        sub, E, F, K, K_inv, theta, kappa, eta, q, n, m, N, En, Fn,
        g0=g0, h1=h1, h2=h2, alpha=alpha, beta=beta, mu=mu,
    )
    verify_relations(pres)
    # cross-check the power scalars against the closed forms
    a_inv_n = abelian.evaluate(sub.lam, (d.a ** n).inverse(), fld)
    ref = (a_inv_n - fld.one).scale(d.eps1)
    if En != ref and En != -ref:
        raise RelationError("E^n does not match +-eps1 lambda(a^-n - 1)")
    b_n = abelian.evaluate(sub.lam, d.b ** n, fld)
    if Fn != (b_n - fld.one).scale(d.eps2):
        raise RelationError("F^n does not match eps2 lambda(b^n - 1)")
    return pres


def verify_relations(p: EFKPresentation):
    """All six relations of the presentation, by exact multiplication."""
    A = p.algebra
    one = A.unit
    if multiplicative_order(p.theta) != p.N:
        raise RelationError("theta does not have order N")
    if (p.K * p.K_inv) != one:
        raise RelationError("K K^-1 != 1")
    if (p.E ** p.n) != one.scale(p.En_scalar):
        raise RelationError("E^n is not the recorded scalar")
    if (p.F ** p.n) != one.scale(p.Fn_scalar):
        raise RelationError("F^n is not the recorded scalar")
    if (p.K ** p.N) != one.scale(p.kappa):
        raise RelationError("K^N != kappa")
    km = p.K ** p.m
    kmi = p.K_inv ** p.m
    if p.E * p.F - p.F * p.E != (kmi - km).scale(p.eta):
        raise RelationError("EF - FE != eta (K^-m - K^m)")
    if p.K * p.E != (p.E * p.K).scale(p.theta):
        raise RelationError("KE != theta EK")
    if p.K * p.F != (p.F * p.K).scale(p.theta.inverse()):
        raise RelationError("KF != theta^-1 FK")


def mirror(p: EFKPresentation) -> EFKPresentation:
    """Swap E and F (and K with K^-1); used for the seminilpotent orientation.

    The mirrored tuple satisfies the same relation scheme with kappa^-1 in
    place of kappa; eta, theta and q are unchanged, and the Casimir element is
    literally the same element of the algebra.
    """
    out = EFKPresentation(
        p.sub,
        p.F,
        p.E,
        p.K_inv,
        p.K,
        p.theta,
        p.kappa.inverse(),
        p.eta,
        p.q,
        p.n,
        p.m,
        p.N,
        p.Fn_scalar,
        p.En_scalar,
        g0=p.g0,
        h1=p.h1,
        h2=p.h2,
        alpha=p.alpha,
        beta=p.beta,
        mu=p.mu,
        mirrored=not p.mirrored,
    )
    verify_relations(out)
    return out


# -- Casimir ---------------------------------------------------------------------


@dataclass
class CasimirData:
    C: AlgebraElement
    eta_prime: Cyclo
    D: AlgebraElement  # K^-m + q K^m
    minpoly: list[Cyclo]  # monic, constant first, degree n
    roots: list[tuple[Cyclo, int]]  # (root value, multiplicity), deterministic order

    def root_values(self) -> list[Cyclo]:
        return [r for r, _m in self.roots]


def d_value(p: EFKPresentation, nu: Cyclo) -> Cyclo:
    """phi_nu(D) = nu^-m + q nu^m, the evaluation of D at K-weight nu."""
    return nu.inverse() ** p.m + p.q * nu ** p.m


def casimir(p: EFKPresentation) -> CasimirData:
    """The central element C, its minimal polynomial and exact root structure."""
    A = p.algebra
    fld = p.sub.field
    one = A.unit
    eta_prime = p.eta / (p.q - fld.one)
    km = p.K ** p.m
    kmi = p.K_inv ** p.m
    C = p.E * p.F - (km + kmi.scale(p.q)).scale(eta_prime)
    other = p.F * p.E - (kmi + km.scale(p.q)).scale(eta_prime)
    if C != other:
        raise RelationError("the two Casimir expressions disagree")
    for gen in [p.E, p.F, p.K]:
        if C * gen != gen * C:
            raise RelationError("Casimir fails to commute with a generator")
    D = kmi + km.scale(p.q)
    # minimal polynomial: prod_i (t + eta' D(theta^i rho0)) - E^n F^n
    rho0 = p.roots()[0]
    coeffs = [fld.one]
    for i in range(p.n):
        c0 = eta_prime * d_value(p, (p.theta ** i) * rho0)
        new = [fld.zero] * (len(coeffs) + 1)
        for k, cc in enumerate(coeffs):
            new[k] = new[k] + cc * c0
            new[k + 1] = new[k + 1] + cc
        coeffs = new
    coeffs[0] = coeffs[0] - p.En_scalar * p.Fn_scalar
    # f(C) = 0 by Horner over the algebra
    acc = A.zero()
    for cc in reversed(coeffs):
        acc = acc * C + one.scale(cc)
    if not acc.is_zero():
        raise RelationError("f_lambda(C) != 0")
    roots = _casimir_roots(p, eta_prime, coeffs)
    return CasimirData(C, eta_prime, D, coeffs, roots)


def _casimir_roots(p: EFKPresentation, eta_prime: Cyclo, coeffs) -> list[tuple[Cyclo, int]]:
    if (p.En_scalar * p.Fn_scalar).is_zero():
        # pure product case: roots are -eta' D(mu) over mu in R_{kappa,n},
        # paired by D(mu1) = D(mu2) <=> mu1 mu2 = q^-1
        values: list[tuple[Cyclo, int]] = []
        seen: set = set()
        for mu in nth_roots(p.kappa, p.n):
            val = -(eta_prime * (mu.inverse() + p.q * mu))
            if val in seen:
                continue
            seen.add(val)
            # D(mu1) = D(mu2) iff mu1 mu2 = q^-1; the partner pairs only when
            # it is itself an n-th root of kappa (forces kappa^2 = 1)
            partner = p.q.inverse() * mu.inverse()
            mult = 2 if partner != mu and partner ** p.n == p.kappa else 1
            values.append((val, mult))
        if sum(m for _v, m in values) != p.n:
            raise RelationError("root multiplicities do not sum to n")
        return values
    from .cyclo import factor_roots_in_field

    roots = factor_roots_in_field(coeffs)
    if roots is None:
        raise NonSplitError(
            "the Casimir minimal polynomial does not split over Q(zeta_M); "
            "the class subalgebra blocks are not defined over this field"
        )
    return roots


def casimir_minimality_certificate(p: EFKPresentation, cas: CasimirData) -> bool:
    """1, C, ..., C^(n-1) linearly independent (rank test)."""
    from .linalg import Subspace

    A = p.algebra
    sub = Subspace(p.sub.field, A.dim)
    power = A.unit
    for _ in range(p.n):
        if not sub.add(list(power.coeffs)):
            return False
        power = power * cas.C
    return True


# -- roots, sigma and standard modules ----------------------------------------------


@dataclass(frozen=True)
class RootData:
    rho: Cyclo
    e: int
    e_prime: int
    exceptional: bool


def root_data(p: EFKPresentation, rho: Cyclo) -> RootData:
    """e with rho^(2m) = q^e (needs kappa^2 = 1), e', and the exceptional flag."""
    if rho ** p.N != p.kappa:
        raise ValueError("rho is not in R_{kappa,N}")
    target = rho ** (2 * p.m)
    e = None
    for k in range(p.n):
        if p.q ** k == target:
            e = k
            break
    if e is None:
        raise ValueError("rho^(2m) is not a power of q (kappa^2 != 1)")
    e_prime = (-e) % p.n
    return RootData(rho, e, e_prime, e == p.n - 1)


def sigma_apply(p: EFKPresentation, rho: Cyclo) -> Cyclo:
    rd = root_data(p, rho)
    if rd.exceptional:
        return rho
    return (p.theta ** (-(rd.e + 1))) * rho


def sigma_orbits(p: EFKPresentation) -> list[list[Cyclo]]:
    """Orbits of R_{kappa,N} under sigma, each listed in application order."""
    roots = p.roots()
    seen: set = set()
    orbits = []
    for rho in roots:
        if rho in seen:
            continue
        orbit = [rho]
        seen.add(rho)
        cur = sigma_apply(p, rho)
        while cur != rho:
            orbit.append(cur)
            seen.add(cur)
            cur = sigma_apply(p, cur)
        if len(orbit) not in (1, 2 * p.m):
            raise RelationError(f"sigma orbit of unexpected size {len(orbit)}")
        orbits.append(orbit)
    return orbits


@dataclass
class StandardModule:
    side: str  # "Z" or "Z'"
    rho: Cyclo
    dim: int
    mat_e: list
    mat_f: list
    mat_k: list
    weights: list[Cyclo]  # K-weight of the i-th standard basis vector
    radical_start: int | None  # index generating the unique proper submodule


def standard_module(p: EFKPresentation, rho: Cyclo, side: str = "Z") -> StandardModule:
    """Z(rho) or Z'(rho) with explicit action matrices, validated against the relations."""
    if rho ** p.N != p.kappa:
        raise ValueError("rho^N != kappa")
    fld = p.sub.field
    n = p.n
    zero, one = fld.zero, fld.one
    mat_e = [[zero] * n for _ in range(n)]
    mat_f = [[zero] * n for _ in range(n)]
    mat_k = [[zero] * n for _ in range(n)]
    if side == "Z":
        weights = [(p.theta ** (-i)) * rho for i in range(n)]
        for i in range(n):
            mat_k[i][i] = weights[i]
        for i in range(n - 1):
            mat_f[i + 1][i] = one  # F w_i = w_{i+1}
        mat_f[0][n - 1] = p.Fn_scalar
        for s in range(1, n):
            # E w_s = eta (s)_q (rho^-m - q^-(s-1) rho^m) w_{s-1},  from [E, F^s]
            coeff = p.eta * q_int(s, p.q) * (
                rho.inverse() ** p.m - (p.q ** (-(s - 1))) * rho ** p.m
            )
            mat_e[s - 1][s] = coeff
    elif side == "Z'":
        weights = [(p.theta ** i) * rho for i in range(n)]
        for i in range(n):
            mat_k[i][i] = weights[i]
        for i in range(n - 1):
            mat_e[i + 1][i] = one  # E v_i = v_{i+1}
        mat_e[0][n - 1] = p.En_scalar
        for s in range(1, n):
            # F v_s = eta (s)_q (rho^m - q^-(s-1) rho^-m) v_{s-1}, from [F, E^s]
            coeff = p.eta * q_int(s, p.q) * (
                rho ** p.m - (p.q ** (-(s - 1))) * rho.inverse() ** p.m
            )
            mat_f[s - 1][s] = coeff
    else:
        raise ValueError("side must be 'Z' or \"Z'\"")
    _check_standard_relations(p, mat_e, mat_f, mat_k)
    radical_start = None
    if p.e_nilpotent() and p.f_nilpotent() and (p.kappa ** 2).is_one():
        rd = root_data(p, rho)
        marker = rd.e if side == "Z" else rd.e_prime
        if marker < n - 1:
            radical_start = marker + 1
    return StandardModule(side, rho, n, mat_e, mat_f, mat_k, weights, radical_start)


def _check_standard_relations(p: EFKPresentation, mat_e, mat_f, mat_k):
    from .linalg import identity_matrix, mat_mul

    fld = p.sub.field
    n = p.n

    def smul(mat, c):
        return [[c * x for x in row] for row in mat]

    def msub(a, b):
        return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

    def mpow(mat, k):
        out = identity_matrix(fld, n)
        for _ in range(k):
            out = mat_mul(out, mat, fld)
        return out

    ident = identity_matrix(fld, n)
    km = mpow(mat_k, p.m)
    kn = mpow(mat_k, p.N)
    if kn != smul(ident, p.kappa):
        raise RelationError("standard module: K^N != kappa")
    kmi = [[fld.zero] * n for _ in range(n)]
    for i in range(n):
        kmi[i][i] = km[i][i].inverse()
    ef = mat_mul(mat_e, mat_f, fld)
    fe = mat_mul(mat_f, mat_e, fld)
    if msub(ef, fe) != smul(msub(kmi, km), p.eta):
        raise RelationError("standard module: EF - FE relation fails")
    ke = mat_mul(mat_k, mat_e, fld)
    ek = mat_mul(mat_e, mat_k, fld)
    if ke != smul(ek, p.theta):
        raise RelationError("standard module: KE relation fails")
    kf = mat_mul(mat_k, mat_f, fld)
    fk = mat_mul(mat_f, mat_k, fld)
    if kf != smul(fk, p.theta.inverse()):
        raise RelationError("standard module: KF relation fails")
    if mpow(mat_e, n) != smul(ident, p.En_scalar):
        raise RelationError("standard module: E^n relation fails")
    if mpow(mat_f, n) != smul(ident, p.Fn_scalar):
        raise RelationError("standard module: F^n relation fails")


# -- idempotents -------------------------------------------------------------------


def k_idempotent(p: EFKPresentation, zeta: Cyclo) -> AlgebraElement:
    """e_zeta: the K-eigenvalue idempotent, Lagrange interpolation in K."""
    A = p.algebra
    fld = p.sub.field
    out = A.unit
    for xi in p.roots():
        if xi == zeta:
            continue
        out = (out * (p.K - A.unit.scale(xi))).scale((zeta - xi).inverse())
    if out * out != out:
        raise RelationError("K-idempotent failed")
    return out


def casimir_block_idempotent(p: EFKPresentation, cas: CasimirData, rho: Cyclo) -> AlgebraElement:
    """eps_rho: value 1 at the Casimir eigenvalue of rho, 0 at the others.

    Lagrange interpolation in C over the distinct roots of the minimal
    polynomial, Newton-corrected when the root is multiple.
    """
    target = -(cas.eta_prime * d_value(p, rho))
    A = p.algebra
    out = A.unit
    for val, _mult in cas.roots:
        if val == target:
            continue
        out = (out * (cas.C - A.unit.scale(val))).scale((target - val).inverse())
    from .structalg import _newton_lift_idempotent

    out = _newton_lift_idempotent(out)
    for gen in [p.E, p.F, p.K]:
        if out * gen != gen * out:
            raise RelationError("block idempotent is not central")
    return out


def pim_idempotent(p: EFKPresentation, cas: CasimirData, rho: Cyclo, zeta: Cyclo) -> AlgebraElement:
    e = casimir_block_idempotent(p, cas, rho) * k_idempotent(p, zeta)
    if e * e != e:
        raise RelationError("eps_rho e_zeta is not idempotent")
    return e


def exceptional_projector(p: EFKPresentation, rho: Cyclo):
    """(f, c) with f = e_rho E^(n-1) F^(n-1) and f^2 = c f, c != 0; c^-1 f is idempotent."""
    rd = root_data(p, rho)
    if not rd.exceptional:
        raise ValueError("exceptional projector requested at a nonexceptional root")
    f = k_idempotent(p, rho) * (p.E ** (p.n - 1)) * (p.F ** (p.n - 1))
    fsq = f * f
    lead = next((t for t, c in enumerate(f.coeffs) if not c.is_zero()), None)
    if lead is None:
        raise RelationError("exceptional projector vanished")
    c = fsq.coeffs[lead] / f.coeffs[lead]
    if fsq != f.scale(c):
        raise RelationError("f^2 is not a scalar multiple of f")
    if c.is_zero():
        raise RelationError("f^2 = 0 at an exceptional root")
    return f, c


def exceptional_scalar_formula(p: EFKPresentation, rho: Cyclo) -> Cyclo:
    """c = eta^(n-1) (n-1)_q! prod_{j=1}^{n-1} (rho^-m - q^(j-n+1) rho^m).

    The eta power matches the Kac coefficient H_{n-1}^{n-1,n-1}, whose i
    K-factors each carry one eta.
    """
    out = (p.eta ** (p.n - 1)) * q_factorial(p.n - 1, p.q)
    for j in range(1, p.n):
        out = out * (rho.inverse() ** p.m - (p.q ** (j - p.n + 1)) * rho ** p.m)
    return out


# -- Kac identity ---------------------------------------------------------------------


def kac_identity_check(p: EFKPresentation, s: int, r: int) -> bool:
    """[E^s, F^r] = sum_i eta^i F^(r-i) H_i^{s,r} E^(s-i), exactly.

    H_i^{s,r} = (r)_q (r-1)_q ... (r-i+1)_q binom(s,i)_q prod_{j=1..i}
    (K^-m - q^(i+j-r-s) K^m); each K-factor carries one eta (the printed form
    of the identity absorbs them when eta = 1).
    """
    if not (1 <= s < p.n and 1 <= r < p.n):
        raise ValueError("kac identity needs 1 <= s, r < n")
    A = p.algebra
    fld = p.sub.field
    one = A.unit
    km = p.K ** p.m
    kmi = p.K_inv ** p.m
    lhs = (p.E ** s) * (p.F ** r) - (p.F ** r) * (p.E ** s)
    rhs = A.zero()
    for i in range(1, min(r, s) + 1):
        coeff = q_binomial(s, i, p.q)
        for t in range(i):
            coeff = coeff * q_int(r - t, p.q)
        h = one
        for j in range(1, i + 1):
            h = h * (kmi - km.scale(p.q ** (i + j - r - s)))
        rhs = rhs + ((p.F ** (r - i)) * h * (p.E ** (s - i))).scale(coeff * p.eta ** i)
    return lhs == rhs


def check_kac_all(p: EFKPresentation) -> list[tuple[int, int]]:
    return [
        (s, r)
        for s in range(1, p.n)
        for r in range(1, p.n)
        if not kac_identity_check(p, s, r)
    ]


# -- classification -------------------------------------------------------------------


def classify(sub: ClassSubalgebra) -> ClassReport:
    """Dispatch one linked class subalgebra by the potency of E and F there."""
    p = efk_normal_form(sub)
    e_nil, f_nil = p.e_nilpotent(), p.f_nilpotent()
    if not e_nil and not f_nil:
        return classify_unipotent_linked(p)
    if e_nil and f_nil:
        return classify_nilpotent_linked(p)
    if not e_nil and f_nil:
        p = mirror(p)
    return classify_seminilpotent_linked(p)


def classify_unipotent_linked(p: EFKPresentation) -> ClassReport:
    """E^n F^n != 0: the class subalgebra is M_n(k[C]); blocks are the primary
    components of k[t]/(f_lambda)."""
    if (p.En_scalar * p.Fn_scalar).is_zero():
        raise ValueError("unipotent linked classifier needs E^n F^n != 0")
    if p.N != p.n:
        raise RelationError("unipotent linked case forces N = n")
    cas = casimir(p)
    n = p.n
    simples, projectives, blocks = [], [], []
    for val, mult in cas.roots:
        label = f"C={scalar_label(val)}"
        simples.append(SimpleInfo(label, n))
        projectives.append(
            ProjectiveInfo(label, n * mult, n, [[(label, 1)] for _ in range(mult)])
        )
        blocks.append(
            BlockInfo(
                label=label,
                dim=n * n * mult,
                rep_type="semisimple" if mult == 1 else "finite",
                simples=[label],
                radical_dim=n * n * (mult - 1),
                idempotent=f"Lagrange in C at {scalar_label(val)}",
                quiver=None,
            )
        )
    report = ClassReport(
        label=chi_label(p.sub.lam.exps),
        dim=p.sub.dim,
        case="linked unipotent",
        simples=simples,
        projectives=projectives,
        blocks=blocks,
        radical_dim=sum(b.radical_dim for b in blocks),
        notes={
            "kappa": scalar_label(p.kappa),
            "eta": scalar_label(p.eta),
            "minpoly_roots": [(scalar_label(v), mlt) for v, mlt in cas.roots],
            "matrix_ring_over": "k[C]",
        },
    )
    report.check_dimension_bookkeeping()
    return report


def classify_seminilpotent_linked(p: EFKPresentation) -> ClassReport:
    """F^n != 0, E^n = 0 (after mirroring): matrix rings over k or k[v]/(v^2)."""
    if not p.e_nilpotent() or p.f_nilpotent():
        raise ValueError("seminilpotent linked classifier needs E^n = 0 != F^n")
    if p.N != p.n or p.m != 1:
        raise RelationError("seminilpotent linked case forces N = n")
    cas = casimir(p)
    n = p.n
    kappa2_one = (p.kappa ** 2).is_one()
    if kappa2_one:
        s_count = sum(1 for _v, mlt in cas.roots if mlt == 1)
        expect = 1 if n % 2 else (0 if p.kappa.is_one() else 2)
        if s_count != expect:
            raise RelationError(
                f"simple-root count {s_count} contradicts the kappa clause ({expect})"
            )
    else:
        if any(mlt != 1 for _v, mlt in cas.roots):
            raise RelationError("kappa^2 != 1 must give n distinct roots")
    # label each C-eigenvalue class by its least K-root
    value_to_roots: dict = {}
    for rho in p.roots():
        val = -(cas.eta_prime * d_value(p, rho))
        value_to_roots.setdefault(val, []).append(rho)
    simples, projectives, blocks = [], [], []
    for val, mult in cas.roots:
        rho_label = scalar_label(value_to_roots[val][0])
        label = f"Z({rho_label})"
        simples.append(SimpleInfo(label, n))
        if mult == 1:
            projectives.append(ProjectiveInfo(label, n, n, [[(label, 1)]]))
            blocks.append(
                BlockInfo(
                    label=label,
                    dim=n * n,
                    rep_type="semisimple",
                    simples=[label],
                    radical_dim=0,
                    idempotent=f"Lagrange in C at {scalar_label(val)}",
                    quiver=QuiverDescription([label], []),
                )
            )
        else:
            projectives.append(
                ProjectiveInfo(label, 2 * n, n, [[(label, 1)], [(label, 1)]])
            )
            loop = QuiverDescription([label], [(label, label, 1, "v")], ["v^2"])
            blocks.append(
                BlockInfo(
                    label=label,
                    dim=2 * n * n,
                    rep_type="finite",
                    simples=[label],
                    radical_dim=n * n,
                    idempotent=f"Lagrange in C at {scalar_label(val)} (Newton-lifted)",
                    quiver=loop,
                )
            )
    report = ClassReport(
        label=chi_label(p.sub.lam.exps),
        dim=p.sub.dim,
        case="linked seminilpotent",
        simples=simples,
        projectives=projectives,
        blocks=blocks,
        radical_dim=sum(b.radical_dim for b in blocks),
        notes={
            "kappa": scalar_label(p.kappa),
            "eta": scalar_label(p.eta),
            "mirrored": p.mirrored,
            "decomposition": _seminilpotent_shape(p, cas, n),
        },
    )
    report.check_dimension_bookkeeping()
    return report


def _seminilpotent_shape(p: EFKPresentation, cas: CasimirData, n: int) -> str:
    plain = sum(1 for _v, m in cas.roots if m == 1)
    doubled = sum(1 for _v, m in cas.roots if m == 2)
    parts = []
    if plain:
        parts.append(f"M_{n}(k)^{plain}")
    if doubled:
        parts.append(f"M_{n}(k[v]/(v^2))^{doubled}")
    return " + ".join(parts)


def classify_nilpotent_linked(p: EFKPresentation) -> ClassReport:
    """E^n = 0 = F^n: the small-quantum-group-like case."""
    if not p.e_nilpotent() or not p.f_nilpotent():
        raise ValueError("nilpotent linked classifier needs E^n = 0 = F^n")
    n, N, m = p.n, p.N, p.m
    roots = p.roots()
    kappa2_one = (p.kappa ** 2).is_one()
    if not kappa2_one:
        simples = [SimpleInfo(f"Z({scalar_label(r)})", n) for r in roots]
        projectives = [
            ProjectiveInfo(s.label, n, n, [[(s.label, 1)]]) for s in simples
        ]
        blocks = [
            BlockInfo(
                label=s.label,
                dim=n * n,
                rep_type="semisimple",
                simples=[s.label],
                radical_dim=0,
                idempotent="central projection onto the M_n summand",
                quiver=QuiverDescription([s.label], []),
            )
            for s in simples
        ]
        report = ClassReport(
            label=chi_label(p.sub.lam.exps),
            dim=p.sub.dim,
            case="linked nilpotent",
            simples=simples,
            projectives=projectives,
            blocks=blocks,
            radical_dim=0,
            notes={"kappa": scalar_label(p.kappa), "semisimple": True},
        )
        report.check_dimension_bookkeeping()
        return report

    data = {rho: root_data(p, rho) for rho in roots}
    census: Counter = Counter()
    for rd in data.values():
        census[rd.e + 1] += 1
    _check_dimension_census(p, census)
    orbits = sigma_orbits(p)
    simples, projectives, blocks = [], [], []
    orbit_labels = []
    for orbit in orbits:
        labels = [f"L({scalar_label(r)})" for r in orbit]
        orbit_labels.append(labels)
        if len(orbit) == 1:
            rho = orbit[0]
            label = labels[0]
            simples.append(SimpleInfo(label, n))
            projectives.append(ProjectiveInfo(label, n, n, [[(label, 1)]]))
            blocks.append(
                BlockInfo(
                    label=label,
                    dim=n * n,
                    rep_type="semisimple",
                    simples=[label],
                    radical_dim=0,
                    idempotent="c^-1 e_rho E^(n-1) F^(n-1)",
                    quiver=QuiverDescription([label], []),
                )
            )
            continue
        dims = [data[rho].e + 1 for rho in orbit]
        for t, rho in enumerate(orbit):
            label = labels[t]
            simples.append(SimpleInfo(label, dims[t]))
            prev_label = labels[(t - 1) % len(orbit)]
            next_label = labels[(t + 1) % len(orbit)]
            loewy = [
                [(label, 1)],
                sorted(Counter([next_label, prev_label]).items()),
                [(label, 1)],
            ]
            projectives.append(ProjectiveInfo(label, 2 * n, dims[t], loewy))
        block_dim = sum(2 * n * d for d in dims)
        blocks.append(
            BlockInfo(
                label=labels[0],
                dim=block_dim,
                rep_type="tame",
                simples=labels,
                radical_dim=block_dim - sum(d * d for d in dims),
                idempotent="eps_rho (Lagrange in C, Newton-lifted)",
                quiver=quiver_with_relations(p, orbit),
            )
        )
    report = ClassReport(
        label=chi_label(p.sub.lam.exps),
        dim=p.sub.dim,
        case="linked nilpotent",
        simples=simples,
        projectives=projectives,
        blocks=blocks,
        radical_dim=p.sub.dim - sum(s.dim * s.dim for s in simples),
        notes={
            "kappa": scalar_label(p.kappa),
            "eta": scalar_label(p.eta),
            "theta": scalar_label(p.theta),
            "m": m,
            "N": N,
            "dimension_census": dict(sorted(census.items())),
            "sigma_orbits": orbit_labels,
            "exceptional": [
                f"L({scalar_label(r)})" for r, rd in data.items() if rd.exceptional
            ],
        },
    )
    report.check_dimension_bookkeeping()
    return report


def _check_dimension_census(p: EFKPresentation, census: Counter):
    """The simple-dimension census against the parity clause for kappa = +-1."""
    n, m = p.n, p.m
    expected: Counter = Counter()
    if n % 2:
        for d in range(1, n + 1):
            expected[d] = m
    elif p.kappa.is_one():
        for d in range(1, n + 1, 2):
            expected[d] = 2 * m
    else:
        for d in range(2, n + 1, 2):
            expected[d] = 2 * m
    if census != expected:
        raise RelationError(
            f"simple dimension census {dict(census)} contradicts the clause {dict(expected)}"
        )


def quiver_with_relations(p: EFKPresentation, orbit: list[Cyclo]) -> QuiverDescription:
    """The cyclic double quiver of a nonexceptional sigma-orbit, with relations."""
    if len(orbit) == 1:
        raise ValueError("exceptional orbit has no quiver (simple block)")
    labels = [f"L({scalar_label(r)})" for r in orbit]
    k = len(labels)
    arrows = []
    for i in range(k):
        arrows.append((labels[i], labels[(i + 1) % k], 1, "a"))
        arrows.append((labels[(i + 1) % k], labels[i], 1, "b"))
    relations = [f"a{i}b{i} - b{(i + 1) % k}a{(i + 1) % k}" for i in range(k)]
    relations.append("all other paths of length >= 2")
    quiver = QuiverDescription(labels, arrows, relations)
    quiver.validate()
    return quiver
