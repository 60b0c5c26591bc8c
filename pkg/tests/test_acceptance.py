"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.  Everything asserts exact equality; the stated runtime
caps are asserted too (shared constructions are cached, so each criterion
pays at most its own cost plus the first-touch build).
"""

import time

from qplane import linked as linked_mod
from qplane.cli import main
from qplane.structalg import socle
from tests.conftest import built, classes, verified

_t0 = None


def _start():
    global _t0
    _t0 = time.time()


def _finish(n, limit, msg):
    elapsed = time.time() - _t0
    assert elapsed < limit, f"criterion {n} exceeded its {limit}s budget ({elapsed:.1f}s)"
    print(f"[criterion {n}] PASS ({elapsed:.1f}s) {msg}")


def _outcomes(name, prefix=None, suffix=None):
    out = verified(name).outcomes
    sel = [
        o
        for o in out
        if (prefix is None or o.name.startswith(prefix))
        and (suffix is None or o.name.endswith(suffix))
    ]
    return sel


def test_criterion_1_datum_a_structure():
    _start()
    H = built("A")
    sub = classes("A")[0]
    rep = linked_mod.classify(sub)
    p = linked_mod.efk_normal_form(sub)
    # dim H = 27 = N n^2
    assert H.dim == 27 == p.N * p.n * p.n
    # theory values
    assert rep.simple_dims() == [1, 2, 3]
    assert rep.projective_dims() == [3, 6, 6]
    assert rep.block_dims() == [9, 18]
    assert rep.radical_dim == 13
    # dim P(rho) = 2n for every nonexceptional rho
    exceptional = set(rep.notes["exceptional"])
    for proj in rep.projectives:
        assert proj.dim == (p.n if proj.label in exceptional else 2 * p.n)
    # oracle reproduces all five numbers
    A = sub.algebra
    assert A.dim == 27
    rad = A.radical()
    assert len(rad) == 13
    idems = A.central_idempotents(within=_wt(sub))
    assert sorted(A.block_dimension(e) for e in idems) == [9, 18]
    quot, _, _ = A.quotient(rad)
    assert sorted(_isqrt(quot.block_dimension(e)) for e in quot.central_idempotents()) == [1, 2, 3]
    assert _oracle_projective_iso_dims(sub, p) == [3, 6, 6]
    _finish(1, 10, "dim 27, simples {1,2,3}, projectives {6,6,3}, blocks {18,9}, radical 13: theory = oracle")


def _wt(sub):
    from qplane.verify import _weight_trivial

    return _weight_trivial(sub)


def _isqrt(n):
    import math

    r = math.isqrt(n)
    assert r * r == n
    return r


def _oracle_projective_iso_dims(sub, p):
    """PIM dimensions per iso-class, from oracle principal modules; classes
    are separated by the socle weight census."""
    cas = linked_mod.casimir(p)
    A = sub.algebra
    rad = A.radical()
    by_census = {}
    for orbit in linked_mod.sigma_orbits(p):
        if len(orbit) == 1:
            f, c = linked_mod.exceptional_projector(p, orbit[0])
            mod = A.principal_module(f.scale(c.inverse()))
            soc = sub.weight_census(socle(mod, rad))
            by_census[tuple(sorted(soc.items()))] = mod.dim
            continue
        eps = linked_mod.casimir_block_idempotent(p, cas, orbit[0])
        for zeta in p.roots():
            e = eps * linked_mod.k_idempotent(p, zeta)
            mod = A.principal_module(e)
            soc = sub.weight_census(socle(mod, rad))
            by_census[tuple(sorted(soc.items()))] = mod.dim
    return sorted(by_census.values())


def test_criterion_2_datum_a_quiver():
    _start()
    rep = linked_mod.classify(classes("A")[0])
    block = next(b for b in rep.blocks if b.rep_type == "tame")
    assert len(block.quiver.vertices) == 2
    assert block.quiver.arrow_count() == 4
    # oracle rad/rad^2 sandwich dimensions match every arrow multiplicity
    quiver_checks = _outcomes("A", prefix="class[0].quiver[")
    assert quiver_checks, "quiver multiplicity checks did not run"
    assert all(o.ok for o in quiver_checks), [o.name for o in quiver_checks if not o.ok]
    _finish(2, 10, "nonsimple block: 2 vertices, 4 arrows; rad/rad^2 sandwiches agree")


def test_criterion_3_datum_b_unipotent():
    _start()
    from qplane.unlinked import check_intertwiner_criterion, classify_unipotent

    subs = classes("B")
    assert len(subs) == 2
    eligible = [s for s in subs if s.potency() == "unipotent"]
    # the eligibility hypothesis lambda(a^2) != 1 != lambda(b^2) holds on
    # exactly one of the two cosets (both its characters are eligible)
    assert len(eligible) == 1
    for sub in eligible:
        rep, struct = classify_unipotent(sub)
        assert rep.block_dims() == [4, 4]  # M_2(k) + M_2(k)
        assert all(b.rep_type == "semisimple" for b in rep.blocks)
        assert rep.notes["m"] == 2 and rep.notes["r"] == 2
        A = sub.algebra
        assert A.radical() == []
        idems = A.central_idempotents(within=_wt(sub))
        assert len(idems) == 2
        assert sorted(A.block_dimension(e) for e in idems) == [4, 4]
        assert check_intertwiner_criterion(sub, struct) == []
    _finish(3, 10, "eligible class = M_2(k)^2; oracle radical 0, 2 blocks; intertwiner criterion exhaustive")


def test_criterion_4_datum_c_seminilpotent():
    _start()
    from qplane.structalg import loewy_series
    from qplane.unlinked import classify

    subs = classes("C")
    in_n = next(s for s in subs if s.potency() == "nilpotent")
    rep_n = classify(in_n)
    assert [s.dim for s in rep_n.simples] == [1, 1]
    quiv = rep_n.blocks[0].quiver
    assert len(quiv.vertices) == 2 and quiv.arrow_count() == 4
    for v in quiv.vertices:  # doubled arrows: both arrows out of v share a target
        targets = [t for (s, t, _m, _g) in quiv.arrows if s == v]
        assert len(targets) == 2 and len(set(targets)) == 1
    out_n = next(s for s in subs if s.potency() == "seminilpotent")
    rep_s = classify(out_n)
    assert rep_s.notes["nakayama"]
    assert [p.dim for p in rep_s.projectives] == [4]
    assert [s.dim for s in rep_s.simples] == [2]
    # oracle: He_mu has n2 = 2 Loewy layers of dim n1 = 2 with the cyclic pattern
    rad = out_n.algebra.radical()
    for mu in out_n.chars:
        mod = out_n.algebra.principal_module(out_n.char_idempotent(mu))
        lw = loewy_series(mod, rad, weight_fn=out_n.weight_census)
        assert lw.layer_dims == [2, 2]
        assert all(sorted(layer.values()) == [1, 1] for layer in lw.layer_weights)
    _finish(4, 10, "lambda-in-N: two 1-dim simples, doubled arrows; Nakayama class: uniserial P dim 4, L dim 2, Loewy [2,2]")


def test_criterion_5_datum_d_seminilpotent_linked():
    _start()
    sub = classes("D")[1]
    rep = linked_mod.classify(sub)
    assert rep.case == "linked seminilpotent"
    # computed kappa = -1, n = 4 even: M_4(k)^2 + M_4(V)
    assert rep.notes["decomposition"] == "M_4(k)^2 + M_4(k[v]/(v^2))^1"
    want = sorted((b.dim, b.radical_dim) for b in rep.blocks)
    assert want == [(16, 0), (16, 0), (32, 16)]
    A = sub.algebra
    rad = A.radical()
    idems = A.central_idempotents(within=_wt(sub))
    assert len(idems) == len(rep.blocks) == 3
    got = sorted((A.block_dimension(e), _block_rad(A, e, rad)) for e in idems)
    assert got == want
    _finish(5, 60, "kappa = -1 clause: blocks (16,0) (16,0) (32,16); oracle agrees on count, dims, radicals")


def _block_rad(A, idem, rad):
    from qplane.linalg import Subspace

    sub = Subspace(A.field, A.dim)
    for u in rad:
        sub.add(list((u * idem).coeffs))
    return sub.dim


def test_criterion_6_identity_suites():
    _start()
    core = ("relation-x-power", "relation-y-power", "relation-group-skew",
            "relation-q-commutator", "braided-commutators", "integral",
            "antipode-squared-inner")
    linked_only = ("efk-relations", "casimir-consistency",
                   "casimir-central-all-basis", "casimir-minpoly-minimal",
                   "kac-identity")
    for name in ("A", "B", "C", "D", "census"):
        v = verified(name)
        names = {o.name: o for o in v.outcomes}
        for want in core:
            assert want in names, f"{name}: {want} did not run"
            assert names[want].ok, f"{name}: {want} failed: {names[want].detail}"
        if v.tag.linked:
            for i in range(len(v.subs)):
                for want in linked_only:
                    key = f"class[{i}].{want}"
                    assert key in names, f"{name}: {key} did not run"
                    assert names[key].ok, f"{name}: {key} failed: {names[key].detail}"
    _finish(6, 60, "commutators, EFK, Casimir (centrality, minpoly), Kac, integral: exact on A, B, C, D, census")


def test_criterion_7_dimension_census():
    _start()
    # DATUM-A: n = 3 odd, m = 1: one simple of each dimension 1..3
    rep_a = linked_mod.classify(classes("A")[0])
    assert rep_a.notes["dimension_census"] == {1: 1, 2: 1, 3: 1}
    assert sum(p.dim * s.dim for p, s in _paired(rep_a)) == 27
    # census instance: N = 9, n = 3, m = 3: exactly m simples of each dimension
    rep_c = linked_mod.classify(classes("census")[0])
    p = linked_mod.efk_normal_form(classes("census")[0])
    assert (p.N, p.n, p.m) == (9, 3, 3)
    assert rep_c.notes["dimension_census"] == {1: 3, 2: 3, 3: 3}
    assert sum(pr.dim * s.dim for pr, s in _paired(rep_c)) == 81 == p.N * p.n * p.n
    _finish(7, 120, "simple-dimension census: A gives {1,2,3} once each; Z9 instance gives m = 3 of each; sum dimP*dimL = Nn^2")


def _paired(rep):
    pdim = {p.label: p for p in rep.projectives}
    return [(pdim[s.label], s) for s in rep.simples]


def test_criterion_8_symmetry_socle_equals_top():
    _start()
    total = 0
    for name in ("A", "B", "C", "D", "census"):
        checks = _outcomes(name, suffix=".socle-eq-top")
        nonsemisimple = [
            b
            for i in range(len(verified(name).subs))
            for b in _report_blocks(name, i)
            if b.rep_type != "semisimple"
        ]
        if nonsemisimple:
            assert checks, f"{name}: no PIM socle/top checks ran"
        for o in checks:
            assert o.ok, f"{name}: {o.name}: {o.detail}"
        total += len(checks)
    assert total >= 20
    _finish(8, 60, f"soc P = top P (weight census) for all {total} PIMs across every nonsemisimple acceptance block")


def _report_blocks(name, i):
    v = verified(name)
    try:
        return v.report_for(i).blocks
    except Exception:
        return []


def test_criterion_9_negative_controls(tmp_path, capsys):
    _start()
    controls = {
        9: "group = [4]\na = [0]\nb = [1]\nchi1 = [2]\nchi2 = [2]\neps1 = 0\neps2 = 0\n",
        10: "group = [4]\na = [1]\nb = [0]\nchi1 = [2]\nchi2 = [2]\neps1 = 0\neps2 = 0\n",
        11: "group = [4]\na = [1]\nb = [1]\nchi1 = [1]\nchi2 = [1]\neps1 = 0\neps2 = 0\n",
        12: "group = [4]\na = [2]\nb = [2]\nchi1 = [1]\nchi2 = [3]\neps1 = 1\neps2 = 0\n",
        13: "group = [4]\na = [1]\nb = [3]\nchi1 = [2]\nchi2 = [2]\neps1 = 0\neps2 = 0\n"
        "gamma = {zeta_pow = 0}\n",
    }
    for cond, toml in controls.items():
        path = tmp_path / f"bad{cond}.toml"
        path.write_text(toml, encoding="utf-8")
        code = main(["classify", str(path), "--out", str(tmp_path / "out.json")])
        captured = capsys.readouterr()
        assert code == 2, f"condition ({cond}): expected exit 2, got {code}"
        assert f"({cond})" in captured.err, f"condition ({cond}) not named: {captured.err}"
    _finish(9, 1, "five broken datums rejected, one per condition (9)-(13), exit code 2 naming the condition")
