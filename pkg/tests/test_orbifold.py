from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lgstate.factorizations import CurvedAlgebra, MatrixFactorization
from lgstate.groebner import NonIsolatedSingularity, milnor_number
from lgstate.orbifold import (CyclotomicAction, GroupAction, GroupRingElement, conjugacy_data, delta_decompose,
                              delta_reconstruction_ok, doubled_ring, fixed_locus, koszul_equivariance_check,
                              koszul_square_check, leibniz_defect_is_syzygy, orbifold_spectrum, twisted_leibniz_ok,
                              twisted_mul, validate_action, validate_equivariant_mf)

from conftest import R1, R2, polys

Z2_1 = GroupAction.diagonal_cyclic(2, 1)
Z2_2 = GroupAction.diagonal_cyclic(2, 2)
Z3_1 = GroupAction.diagonal_cyclic(3, 1)
Z3_2 = GroupAction.diagonal_cyclic(3, 2)
SWAP = GroupAction.generated_by([[[0, 1], [1, 0]]])
S3 = GroupAction.generated_by([[[0, 1], [1, 0]], [[0, -1], [1, -1]]])


def test_diagonal_cyclic_shapes():
    assert Z2_2.order == 2 and isinstance(Z3_2, CyclotomicAction) and Z3_2.order == 3
    assert GroupAction.diagonal_cyclic(1, 2).order == 1


def test_validate_action_examples():
    assert validate_action(Z2_2, R2.parse("x^2 - y^2"))
    assert validate_action(SWAP, R2.parse("x^3 + y^3"))
    assert validate_action(Z3_2, R2.parse("x^3 + y^3"))
    assert validate_action(S3)
    bad = validate_action(Z2_2, R2.parse("x^3 + y^2"))
    assert not bad and bad.failures[0]["axiom"] == "invariance"
    assert not validate_action(Z3_1, R1.parse("x^2"))


def test_validate_action_not_closed():
    G = GroupAction([[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[2, 0], [0, 1]]])
    rep = validate_action(G)
    assert not rep and any(f["axiom"] == "closure" for f in rep.failures)


def test_twisted_ring_brane_element_squares_to_curvature():
    tau = Z2_2.elements.index(tuple(tuple(Fraction(-int(i == j)) for j in range(2)) for i in range(2)))
    x, y = R2.gens()
    a = GroupRingElement(Z2_2, R2, {0: x, tau: -y})
    assert twisted_mul(a, a) == GroupRingElement.basis(Z2_2, R2, 0, R2.parse("x^2 - y^2"))


def test_twisted_mul_examples():
    x, y = R2.gens()
    g = GroupRingElement.basis(SWAP, R2, 1)
    assert g * GroupRingElement.basis(SWAP, R2, 0, x) == GroupRingElement.basis(SWAP, R2, 1, y)
    assert g * g == GroupRingElement.basis(SWAP, R2, 0)


@given(polys(R2, 2, 3), polys(R2, 2, 3), polys(R2, 2, 3), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_twisted_ring_associative(p, q, r, g, h, k):
    e = lambda poly, i: GroupRingElement.basis(S3, R2, i, poly)
    a, b, c = e(p, g), e(q, h), e(r, k)
    assert (a * b) * c == a * (b * c)


def test_fixed_locus_examples():
    assert fixed_locus(Z2_2, 1) == []
    assert len(fixed_locus(Z2_2, 0)) == 2
    (v,) = fixed_locus(SWAP, 1)
    assert v[0] == v[1] != 0
    assert fixed_locus(Z3_2, 1) == [] and len(fixed_locus(Z3_2, 0)) == 2


def test_delta_examples():
    RR = doubled_ring(R1)
    xl, xr = RR.gens()
    assert delta_decompose(R1.parse("x"), Z2_1, 1) == [RR.one()]
    assert delta_decompose(R1.parse("x^2"), Z2_1, 1) == [xr - xl]
    assert delta_decompose(R1.parse("x^2"), Z2_1, 0) == [xl + xr]


GROUPS = [(Z2_1, R1), (Z2_2, R2), (Z3_1, R1), (Z3_2, R2), (SWAP, R2), (S3, R2)]


@pytest.mark.parametrize("G,ring", GROUPS, ids=["z2-1", "z2-2", "z3-1", "z3-2", "swap", "s3"])
@given(data=st.data())
def test_delta_reconstruction(G, ring, data):
    r = data.draw(polys(ring, 3, 4))
    g = data.draw(st.integers(0, G.order - 1))
    assert delta_reconstruction_ok(r, G, g)


@pytest.mark.parametrize("G", [Z2_1, Z3_1], ids=["z2", "z3"])
@given(data=st.data())
def test_twisted_leibniz_one_variable(G, data):
    r, s = data.draw(polys(R1, 3, 3)), data.draw(polys(R1, 3, 3))
    g = data.draw(st.integers(0, G.order - 1))
    assert twisted_leibniz_ok(r, s, G, g)


@pytest.mark.parametrize("G", [Z2_2, Z3_2, S3], ids=["z2", "z3", "s3"])
@given(data=st.data())
def test_leibniz_defect_is_koszul_syzygy(G, data):
    r, s = data.draw(polys(R2, 2, 3)), data.draw(polys(R2, 2, 3))
    g = data.draw(st.integers(0, G.order - 1))
    assert leibniz_defect_is_syzygy(r, s, G, g)


def test_leibniz_fails_on_the_nose_in_two_variables():
    x, y = R2.gens()
    assert not twisted_leibniz_ok(x, y, Z2_2, 0) or not twisted_leibniz_ok(y, x, Z2_2, 0)


@pytest.mark.parametrize("G,W", [
    (Z2_2, R2.parse("x^2 - y^2")), (Z2_2, R2.zero()), (Z3_1, R1.parse("x^3")), (Z3_2, R2.parse("x^3 + y^3")),
    (SWAP, R2.parse("x^3 + y^3")),
], ids=["z2", "z2-W0", "z3-1", "z3-2", "swap"])
def test_koszul_square(G, W):
    for g in range(G.order):
        assert koszul_square_check(G, g, W, degree=3)


def test_koszul_equivariance():
    assert koszul_equivariance_check(Z2_2, R2.parse("x^2 - y^2"))
    assert koszul_equivariance_check(SWAP, R2.parse("x^3 + y^3"))


def test_conjugacy_s3():
    data = conjugacy_data(S3)
    assert sorted(len(c) for c in data.classes) == [1, 2, 3]
    assert sum(len(c) for c in data.classes) == 6


def test_spectrum_c2_z2():
    sp = orbifold_spectrum(Z2_2, R2.parse("x^2 - y^2"))
    assert sp.total == 2
    assert sp.by_form_degree() == {2: 1, 0: 1}


def test_spectrum_fermat_z3():
    assert orbifold_spectrum(Z3_2, R2.parse("x^3 + y^3")).total == 4


@pytest.mark.parametrize("text", ["x^3 + y^4", "x^2*y + y^3", "x^2 - y^2"])
def test_trivial_group_spectrum_is_milnor(text):
    W = R2.parse(text)
    assert orbifold_spectrum(GroupAction.trivial(2), W).total == milnor_number(W)


def test_spectrum_zero_potential():
    with pytest.raises(NonIsolatedSingularity):
        orbifold_spectrum(Z2_2, R2.zero())


def test_equivariant_brane():
    alg = CurvedAlgebra(R2, R2.parse("x^2 - y^2"))
    M = MatrixFactorization(alg, [["x - y"]], [["x + y"]])
    assert validate_equivariant_mf(M, Z2_2, [[[1, 0], [0, 1]], [[1, 0], [0, -1]]])
    assert not validate_equivariant_mf(M, Z2_2, [[[1, 0], [0, 1]], [[1, 0], [0, 1]]])
    assert not validate_equivariant_mf(M, Z2_2, [[[1, 0], [0, 1]]])
