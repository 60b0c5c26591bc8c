import pytest

from qplane.cyclo import field
from qplane.structalg import (
    AssociativityError,
    StructAlgebra,
    loewy_series,
    radical_series,
    socle,
)


def truncated_polynomial_algebra(fld, k):
    """k[t]/(t^k) with basis 1, t, ..., t^(k-1)."""
    table = {}
    for i in range(k):
        for j in range(k):
            table[(i, j)] = ((i + j, fld.one),) if i + j < k else ()
    unit = [fld.one] + [fld.zero] * (k - 1)
    return StructAlgebra.from_table(fld, [f"t^{i}" for i in range(k)], table, unit)


def matrix_algebra(fld, n):
    """M_n(k) on the matrix units e_{ij}."""
    labels = [(i, j) for i in range(n) for j in range(n)]
    idx = {lab: t for t, lab in enumerate(labels)}
    table = {}
    for a, (i, j) in enumerate(labels):
        for b, (k, l) in enumerate(labels):
            table[(a, b)] = ((idx[(i, l)], fld.one),) if j == k else ()
    unit = [fld.zero] * len(labels)
    for i in range(n):
        unit[idx[(i, i)]] = fld.one
    return StructAlgebra.from_table(fld, labels, table, unit)


def product_of_fields(fld, k):
    """k x k x ... (k copies) on orthogonal idempotents."""
    table = {(i, j): (((i, fld.one),) if i == j else ()) for i in range(k) for j in range(k)}
    return StructAlgebra.from_table(fld, list(range(k)), table, [fld.one] * k)


def cyclic_group_algebra(fld, n):
    """k[Z_n] with basis g^0..g^(n-1); needs zeta_n in the field to split."""
    table = {(i, j): (((i + j) % n, fld.one),) for i in range(n) for j in range(n)}
    unit = [fld.one] + [fld.zero] * (n - 1)
    return StructAlgebra.from_table(fld, [f"g^{i}" for i in range(n)], table, unit)


def upper_triangular_2x2(fld):
    labels = ["e11", "e12", "e22"]
    one = fld.one
    table = {
        (0, 0): ((0, one),),
        (0, 1): ((1, one),),
        (0, 2): (),
        (1, 0): (),
        (1, 1): (),
        (1, 2): ((1, one),),
        (2, 0): (),
        (2, 1): (),
        (2, 2): ((2, one),),
    }
    return StructAlgebra.from_table(fld, labels, table, [one, fld.zero, one])


F = field(12)


def test_multiply_unit_neutral():
    alg = matrix_algebra(F, 2)
    for i in range(alg.dim):
        b = alg.basis_element(i)
        assert alg.unit * b == b
        assert b * alg.unit == b


def test_associativity_check_catches_corruption():
    labels = [(i, j) for i in range(2) for j in range(2)]
    idx = {lab: t for t, lab in enumerate(labels)}
    table = {}
    for a, (i, j) in enumerate(labels):
        for b, (k, l) in enumerate(labels):
            table[(a, b)] = ((idx[(i, l)], F.one),) if j == k else ()
    # corrupt e12*e21 to e22: unit laws survive, associativity does not
    table[(idx[(0, 1)], idx[(1, 0)])] = ((idx[(1, 1)], F.one),)
    unit = [F.zero] * 4
    unit[idx[(0, 0)]] = F.one
    unit[idx[(1, 1)]] = F.one
    with pytest.raises(AssociativityError):
        StructAlgebra.from_table(F, labels, table, unit)


def test_radical_of_dual_numbers():
    alg = truncated_polynomial_algebra(F, 2)
    rad = alg.radical()
    assert len(rad) == 1
    assert rad[0].coeffs[1] == F.one and rad[0].coeffs[0].is_zero()


def test_radical_of_matrix_algebra_is_zero():
    alg = matrix_algebra(F, 2)
    assert alg.radical() == []


def test_radical_is_ideal_and_nilpotent():
    alg = truncated_polynomial_algebra(F, 4)
    rad = alg.radical()
    assert len(rad) == 3
    assert alg.is_ideal(rad)
    assert alg.nilpotency_index(rad) == 4


def test_central_idempotents_product_of_fields():
    alg = product_of_fields(F, 2)
    idems = alg.central_idempotents()
    assert len(idems) == 2
    total = alg.zero()
    for e in idems:
        assert e * e == e
        total = total + e
    assert total == alg.unit


def test_central_idempotents_matrix_algebra():
    alg = matrix_algebra(F, 2)
    idems = alg.central_idempotents()
    assert len(idems) == 1
    assert idems[0] == alg.unit
    assert alg.block_dimension(idems[0]) == 4


def test_central_idempotents_group_algebra_z3():
    alg = cyclic_group_algebra(F, 3)
    idems = alg.central_idempotents()
    assert len(idems) == 3
    for e in idems:
        assert e * e == e
        assert alg.block_dimension(e) == 1


def test_blocks_of_upper_triangular():
    alg = upper_triangular_2x2(F)
    rad = alg.radical()
    assert len(rad) == 1
    # connected algebra: a single block despite two simples
    assert len(alg.central_idempotents()) == 1
    quot, _, _ = alg.quotient(rad)
    assert quot.dim == 2
    assert len(quot.central_idempotents()) == 2


def test_central_idempotents_with_nilpotent_center():
    # k[t]/(t^3) x k: center has a nilpotent part that Newton lifting must clear
    k = 3
    fldone = F.one
    labels = [f"t^{i}" for i in range(k)] + ["u"]
    table = {}
    for i in range(k):
        for j in range(k):
            table[(i, j)] = ((i + j, fldone),) if i + j < k else ()
        table[(i, k)] = ()
        table[(k, i)] = ()
    table[(k, k)] = ((k, fldone),)
    unit = [fldone] + [F.zero] * (k - 1) + [fldone]
    alg = StructAlgebra.from_table(F, labels, table, unit)
    idems = alg.central_idempotents()
    assert len(idems) == 2
    dims = sorted(alg.block_dimension(e) for e in idems)
    assert dims == [1, 3]


def test_principal_module_and_loewy():
    alg = truncated_polynomial_algebra(F, 3)
    mod = alg.regular_module()
    assert mod.dim == 3
    rad = alg.radical()
    rep = loewy_series(mod, rad)
    assert rep.layer_dims == [1, 1, 1]
    mod.check_action_axiom()


def test_principal_module_of_idempotent():
    alg = upper_triangular_2x2(F)
    e22 = alg.basis_element(2)
    mod = alg.principal_module(e22)
    assert mod.dim == 2
    rad = alg.radical()
    rep = loewy_series(mod, rad)
    assert rep.layer_dims == [1, 1]
    soc = socle(mod, rad)
    assert soc.dim == 1
    # socle is spanned by e12
    assert soc.rows[0][1] == F.one


def test_zero_and_one_principal_modules():
    alg = matrix_algebra(F, 2)
    assert alg.principal_module(alg.zero()).dim == 0
    assert alg.regular_module().dim == 4


def test_radical_series_of_regular_module():
    alg = truncated_polynomial_algebra(F, 4)
    series = radical_series(alg.regular_module(), alg.radical())
    assert [s.dim for s in series] == [4, 3, 2, 1, 0]


def test_semisimple_quotient_of_matrix_algebra():
    alg = matrix_algebra(F, 3)
    quot, _, _ = alg.quotient(alg.radical())
    idems = quot.central_idempotents()
    assert len(idems) == 1
    assert quot.block_dimension(idems[0]) == 9
