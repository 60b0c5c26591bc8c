import pytest

from qplane.cyclo import multiplicative_order
from qplane.linked import (
    casimir,
    casimir_block_idempotent,
    casimir_minimality_certificate,
    check_kac_all,
    classify,
    efk_normal_form,
    exceptional_projector,
    exceptional_scalar_formula,
    kac_identity_check,
    mirror,
    pim_idempotent,
    quiver_with_relations,
    root_data,
    sigma_apply,
    sigma_orbits,
    standard_module,
    verify_relations,
)
from qplane.structalg import NonSplitError, loewy_series, socle
from tests.conftest import built, classes


def efk(name: str, index: int = 0):
    return efk_normal_form(classes(name)[index])


def test_efk_datum_a_construction_choices():
    p = efk("A")
    H = built("A")
    fld = H.field
    assert (p.n, p.m, p.N) == (3, 1, 3)
    assert p.theta == p.q  # m = 1
    assert p.g0.exps == (2,)
    assert p.h1.is_identity() and p.h2.is_identity()
    assert p.alpha.is_one() and p.beta.is_one() and p.mu.is_one()
    assert p.kappa.is_one()
    assert p.eta == fld.one  # eta = gamma = 1
    assert p.sub.dim == p.N * p.n * p.n == 27
    assert p.En_scalar.is_zero() and p.Fn_scalar.is_zero()


def test_efk_relations_verified_everywhere():
    for name in ("A", "D"):
        for ci in range(len(classes(name))):
            p = efk(name, ci)
            verify_relations(p)  # raises on failure
            assert multiplicative_order(p.theta) == p.N


def test_efk_datum_d_eligible_class():
    p = efk("D", 1)
    fld = built("D").field
    assert (p.n, p.m, p.N) == (4, 1, 4)
    assert p.kappa == fld.rational(-1)
    assert p.eta == fld.rational(-1)
    assert p.En_scalar.is_zero()
    assert p.Fn_scalar == fld.rational(-2)


def test_casimir_datum_a():
    p = efk("A")
    cas = casimir(p)
    A = p.algebra
    # centrality against every basis element
    for i in range(A.dim):
        b = A.basis_element(i)
        assert cas.C * b == b * cas.C
    assert len(cas.minpoly) == p.n + 1
    assert casimir_minimality_certificate(p, cas)
    # eps1 = eps2 = 0 forces the constant E^n F^n term to vanish
    assert (p.En_scalar * p.Fn_scalar).is_zero()
    assert sum(m for _v, m in cas.roots) == p.n


def test_standard_modules_datum_a():
    p = efk("A")
    fld = p.sub.field
    roots = p.roots()  # [1, zeta3, zeta3^2] with q = zeta3^2
    q = p.q
    z_at_q = standard_module(p, q, "Z")
    assert z_at_q.radical_start is None  # exceptional: simple of dim 3
    z_at_one = standard_module(p, fld.one, "Z")
    assert z_at_one.radical_start == 1  # e(1) = 0: radical spanned by w_1, w_2
    # E annihilates the highest weight vector
    assert all(z_at_one.mat_e[r][0].is_zero() for r in range(p.n))
    # K-spectrum is {theta^-i rho}
    assert [z_at_one.mat_k[i][i] for i in range(p.n)] == z_at_one.weights
    zp = standard_module(p, q, "Z'")
    assert zp.weights == [(p.theta ** i) * q for i in range(p.n)]


def test_root_data_and_sigma_datum_a():
    p = efk("A")
    fld = p.sub.field
    q = p.q
    one = fld.one
    d1 = root_data(p, one)
    dq = root_data(p, q)
    dq2 = root_data(p, q * q)
    assert (d1.e, dq2.e, dq.e) == (0, 1, 2)
    assert dq.exceptional and not d1.exceptional and not dq2.exceptional
    assert sigma_apply(p, one) == q * q  # theta^-1 = q^2
    assert sigma_apply(p, q * q) == one
    orbits = sigma_orbits(p)
    assert sorted(len(o) for o in orbits) == [1, 2]
    # e(rho) + e(sigma rho) = n - 2 on the nonexceptional orbit
    orb = next(o for o in orbits if len(o) == 2)
    assert root_data(p, orb[0]).e + root_data(p, orb[1]).e == p.n - 2


def test_sigma_has_order_2m():
    for name, ci in (("A", 0), ("census", 0)):
        p = efk(name, ci)
        for rho in p.roots():
            cur = rho
            for _ in range(2 * p.m):
                cur = sigma_apply(p, cur)
            assert cur == rho


def test_classify_nilpotent_linked_datum_a():
    rep = classify(classes("A")[0])
    assert rep.case == "linked nilpotent"
    assert rep.simple_dims() == [1, 2, 3]
    assert rep.projective_dims() == [3, 6, 6]
    assert rep.block_dims() == [9, 18]
    assert rep.radical_dim == 13
    assert rep.dim == 27
    tame = [b for b in rep.blocks if b.rep_type == "tame"]
    ss = [b for b in rep.blocks if b.rep_type == "semisimple"]
    assert len(tame) == 1 and len(ss) == 1
    assert tame[0].dim == 18 and ss[0].dim == 9


def test_datum_a_oracle_agreement():
    sub = classes("A")[0]
    rep = classify(sub)
    A = sub.algebra
    rad = A.radical()
    assert len(rad) == rep.radical_dim == 13
    assert A.is_ideal(rad)
    idems = A.central_idempotents(within=_weight_trivial(sub))
    assert len(idems) == len(rep.blocks) == 2
    assert sorted(A.block_dimension(e) for e in idems) == rep.block_dims()
    # Wedderburn simple dimensions from the semisimple quotient
    quot, _, _ = A.quotient(rad)
    qidems = quot.central_idempotents()
    dims = sorted(_isqrt(quot.block_dimension(e)) for e in qidems)
    assert dims == rep.simple_dims()


def _weight_trivial(sub):
    fld = sub.field
    out = []
    for t in sub.weight_trivial_indices():
        v = [fld.zero] * sub.dim
        v[t] = fld.one
        out.append(v)
    return out


def _isqrt(n):
    import math

    r = math.isqrt(n)
    assert r * r == n
    return r


def test_quiver_datum_a():
    p = efk("A")
    orbit = next(o for o in sigma_orbits(p) if len(o) == 2)
    q = quiver_with_relations(p, orbit)
    assert len(q.vertices) == 2
    assert q.arrow_count() == 4
    assert len([r for r in q.relations if "-" in r]) == 2
    with pytest.raises(ValueError):
        quiver_with_relations(p, [p.q])  # exceptional orbit


def test_quiver_multiplicities_against_oracle():
    # dim f_j (J/J^2) f_i equals the number of arrows i -> j
    sub = classes("A")[0]
    p = efk("A")
    cas = casimir(p)
    orbit = next(o for o in sigma_orbits(p) if len(o) == 2)
    quiv = quiver_with_relations(p, orbit)
    A = sub.algebra
    rad = A.radical()
    from qplane.linalg import Subspace

    j2 = Subspace(A.field, A.dim)
    for u in rad:
        for v in rad:
            j2.add(list((u * v).coeffs))
    pims = {}
    for t, rho in enumerate(orbit):
        zeta = rho  # one PIM per vertex suffices: pick e_zeta at zeta = rho
        pims[quiv.vertices[t]] = pim_idempotent(p, cas, rho, zeta)
    for src in quiv.vertices:
        for tgt in quiv.vertices:
            want = sum(m for (s, t2, m, _g) in quiv.arrows if s == src and t2 == tgt)
            fi, fj = pims[src], pims[tgt]
            sandwich = Subspace(A.field, A.dim)
            for u in rad:
                w = fj * u * fi
                red = j2.reduce(list(w.coeffs))
                sandwich.add(red)
            assert sandwich.dim == want


def test_block_and_pim_idempotents_datum_a():
    sub = classes("A")[0]
    p = efk("A")
    cas = casimir(p)
    fld = sub.field
    one_root = fld.one
    eps = casimir_block_idempotent(p, cas, one_root)
    assert eps * eps == eps
    A = sub.algebra
    assert A.block_dimension(eps) == 18
    # B(1) splits into N = 3 PIMs of dimension 6 along the K-idempotents
    dims = []
    for zeta in p.roots():
        e = pim_idempotent(p, cas, one_root, zeta)
        dims.append(A.principal_module(e).dim)
    assert dims == [6, 6, 6]


def test_exceptional_projector_datum_a():
    sub = classes("A")[0]
    p = efk("A")
    q = p.q
    f, c = exceptional_projector(p, q)
    assert not c.is_zero()
    assert c == exceptional_scalar_formula(p, q)
    idem = f.scale(c.inverse())
    assert idem * idem == idem
    A = sub.algebra
    mod = A.principal_module(idem)
    assert mod.dim == 3


def test_kac_identity():
    for name, ci in (("A", 0), ("D", 0), ("D", 1)):
        p = efk(name, ci)
        assert check_kac_all(p) == []
    p = efk("A")
    assert kac_identity_check(p, 1, 1)
    assert kac_identity_check(p, 2, 1)
    assert kac_identity_check(p, 2, 2)


def test_classify_seminilpotent_linked_datum_d():
    sub = classes("D")[1]
    rep = classify(sub)
    assert rep.case == "linked seminilpotent"
    assert rep.notes["kappa"] == "z^32"  # -1 in Q(zeta_64)
    assert rep.block_dims() == [16, 16, 32]
    assert sorted(b.radical_dim for b in rep.blocks) == [0, 0, 16]
    assert rep.simple_dims() == [4, 4, 4]
    assert rep.notes["decomposition"] == "M_4(k)^2 + M_4(k[v]/(v^2))^1"


def test_datum_d_oracle_agreement():
    sub = classes("D")[1]
    rep = classify(sub)
    A = sub.algebra
    rad = A.radical()
    assert len(rad) == 16
    idems = A.central_idempotents(within=_weight_trivial(sub))
    assert len(idems) == 3
    got = sorted(
        (A.block_dimension(e), _block_radical_dim(A, e, rad)) for e in idems
    )
    want = sorted((b.dim, b.radical_dim) for b in rep.blocks)
    assert got == want


def _block_radical_dim(A, idem, rad):
    from qplane.linalg import Subspace

    sub = Subspace(A.field, A.dim)
    for u in rad:
        sub.add(list((u * idem).coeffs))
    return sub.dim


def test_classify_nilpotent_linked_datum_d_class0():
    rep = classify(classes("D")[0])
    assert rep.case == "linked nilpotent"
    assert rep.notes["kappa"] == "1"
    assert rep.simple_dims() == [1, 1, 3, 3]
    assert rep.notes["dimension_census"] == {1: 2, 3: 2}
    assert rep.block_dims() == [32, 32]
    assert rep.radical_dim == 64 - (1 + 1 + 9 + 9)


def test_mirror_involution():
    p = efk("D", 1)
    m = mirror(p)
    assert m.mirrored
    assert m.kappa == p.kappa.inverse()
    assert m.En_scalar == p.Fn_scalar and m.Fn_scalar == p.En_scalar
    back = mirror(m)
    assert not back.mirrored
    assert back.kappa == p.kappa


def test_mirrored_seminilpotent_classification():
    # eps1 = 1, eps2 = 0 linked: E^n != 0 = F^n, handled through the mirror
    from qplane.abelian import AbelianGroup
    from qplane.lifting import LiftingDatum, build, class_decomposition

    G = AbelianGroup([8])
    g = G.element([1])
    d = LiftingDatum(G, g, g, 1, 0, G.character([2]), G.character([6]), 1)
    H = build(d)
    subs = class_decomposition(H)
    target = subs[1]
    assert not target.x_nilpotent and target.y_nilpotent
    rep = classify(target)
    assert rep.case == "linked seminilpotent"
    assert rep.notes["mirrored"] is True
    assert sum(b.dim for b in rep.blocks) == 64


def test_classify_unipotent_linked_split_cases():
    rep = classify(classes("uni-linked-split")[1])
    assert rep.case == "linked unipotent"
    assert rep.block_dims() == [4, 4]
    assert all(b.rep_type == "semisimple" for b in rep.blocks)
    rep2 = classify(classes("uni-linked-double")[1])
    assert rep2.block_dims() == [8]
    assert rep2.blocks[0].rep_type == "finite"
    assert rep2.blocks[0].radical_dim == 4
    assert rep2.simple_dims() == [2]


def test_unipotent_linked_oracle_agreement():
    for name in ("uni-linked-split", "uni-linked-double"):
        sub = classes(name)[1]
        rep = classify(sub)
        A = sub.algebra
        idems = A.central_idempotents(within=_weight_trivial(sub))
        assert sorted(A.block_dimension(e) for e in idems) == rep.block_dims()
        assert len(A.radical()) == rep.radical_dim


def test_unipotent_linked_nonsplit_is_consistent_hard_error():
    # an instance whose Casimir minimal polynomial (t^4 + 2t^2 - 4) has no
    # roots in Q(zeta_64): both pipelines must refuse identically
    sub = classes("uni-linked-nonsplit")[1]
    with pytest.raises(NonSplitError):
        classify(sub)
    with pytest.raises(NonSplitError):
        sub.algebra.central_idempotents(within=_weight_trivial(sub))


def test_census_instance_classification():
    sub = classes("census")[0]
    assert sub.dim == 81
    p = efk("census")
    assert (p.n, p.m, p.N) == (3, 3, 9)
    assert p.kappa.is_one()
    rep = classify(sub)
    assert rep.notes["dimension_census"] == {1: 3, 2: 3, 3: 3}
    # sum dim P * dim L = N n^2
    total = 0
    pdims = {pr.label: pr.dim for pr in rep.projectives}
    for s in rep.simples:
        total += pdims[s.label] * s.dim
    assert total == 81
    orbits = rep.notes["sigma_orbits"]
    assert sorted(len(o) for o in orbits) == [1, 1, 1, 6]
    assert len(rep.notes["exceptional"]) == 3
    assert rep.block_dims() == [9, 9, 9, 54]


def test_census_quiver_has_2m_vertices():
    p = efk("census")
    orbit = next(o for o in sigma_orbits(p) if len(o) == 6)
    quiv = quiver_with_relations(p, orbit)
    assert len(quiv.vertices) == 2 * p.m == 6
    assert quiv.arrow_count() == 12


def test_loewy_and_socle_of_pims_datum_a():
    sub = classes("A")[0]
    p = efk("A")
    cas = casimir(p)
    A = sub.algebra
    rad = A.radical()
    fld = sub.field
    # P(1): Loewy layers 1, 2, 1 with top and socle isomorphic
    eps = casimir_block_idempotent(p, cas, fld.one)
    e_one = pim_idempotent(p, cas, fld.one, fld.one)
    mod = A.principal_module(e_one)
    assert mod.dim == 6
    rep = loewy_series(mod, rad, weight_fn=sub.weight_census)
    # top L(1), middle L(sigma 1) + L(sigma^-1 1) = L(q^2)^2 (m = 1), socle L(1)
    assert rep.layer_dims == [1, 4, 1]
    soc = socle(mod, rad)
    top_census = rep.layer_weights[0]
    soc_census = sub.weight_census(soc)
    assert top_census == soc_census
