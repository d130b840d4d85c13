import pytest
from hypothesis import given
from hypothesis import strategies as st

from lgstate.factorizations import (CurvedAlgebra, Morphism, MatrixFactorization, compose, ext_basis, hom_diff,
                                    tensor_mf, validate_mf)

from conftest import R1, R2, polys

X2 = CurvedAlgebra(R1, R1.parse("x^2"))
X3 = CurvedAlgebra(R1, R1.parse("x^3"))
C2 = CurvedAlgebra(R2, R2.parse("x^2 - y^2"))

A1 = MatrixFactorization(X2, [["x"]], [["x"]], name="A1")
M1 = MatrixFactorization(X3, [["x"]], [["x^2"]], name="M1")
M2 = MatrixFactorization(X3, [["x^2"]], [["x"]], name="M2")
B = MatrixFactorization(C2, [["x - y"]], [["x + y"]])


def test_validate_examples():
    assert validate_mf(A1) and validate_mf(M1) and validate_mf(M2) and validate_mf(B)


def test_validate_witness():
    bad = MatrixFactorization(X2, [["x"]], [["x + 1"]])
    rep = validate_mf(bad)
    assert not rep
    found = {f["found"] for f in rep.failures}
    assert "x^2 + x" in found
    assert all(f["entry"] == (0, 0) for f in rep.failures)


def test_zero_rank_module():
    Z = MatrixFactorization(X2, [], [], rank_ev=0, rank_od=0)
    assert Z.rank == 0 and validate_mf(Z)
    assert ext_basis(Z, A1, 0, 3) == []


def _random_morphism(M, N, parity, entries):
    ring = M.ring
    pm, pn = M.parities, N.parities
    mat = [[ring.zero()] * M.rank for _ in range(N.rank)]
    it = iter(entries)
    for i in range(N.rank):
        for j in range(M.rank):
            if (pm[j] + pn[i]) % 2 == parity:
                mat[i][j] = next(it)
    return Morphism(M, N, parity, mat)


BRANES2 = [B, tensor_mf(MatrixFactorization(CurvedAlgebra(R2, R2.parse("x^2")), [["x"]], [["x"]]),
                        MatrixFactorization(CurvedAlgebra(R2, R2.parse("-y^2")), [["y"]], [["-y"]]))]
pairs = st.sampled_from([(a, b) for a in BRANES2 for b in BRANES2])


@given(pairs, st.integers(0, 1), st.lists(polys(R2, 2, 3), min_size=16, max_size=16))
def test_hom_diff_squares_to_zero(mn, parity, entries):
    f = _random_morphism(*mn, parity, entries)
    assert hom_diff(hom_diff(f)).is_zero()


@given(st.sampled_from(BRANES2), st.integers(0, 1), st.integers(0, 1),
       st.lists(polys(R2, 2, 3), min_size=16, max_size=16), st.lists(polys(R2, 2, 3), min_size=16, max_size=16))
def test_hom_diff_leibniz(M, p, q, e1, e2):
    f = _random_morphism(M, M, p, e1)
    g = _random_morphism(M, M, q, e2)
    lhs = hom_diff(compose(g, f))
    rhs = compose(hom_diff(g), f) + compose(g, hom_diff(f)).scale((-1) ** q)
    assert lhs == rhs


@pytest.mark.parametrize("M", [A1, M1, M2, B] + BRANES2)
def test_hom_diff_of_d_is_twice_curvature(M):
    dd = hom_diff(M.d_morphism())
    # d is odd: d d + d d = 2 W id
    expected = Morphism(M, M, 0, [[M.W.scale(2) if i == j else M.ring.zero() for j in range(M.rank)]
                                  for i in range(M.rank)])
    assert dd == expected


def test_tensor_product_curvature_adds():
    T = BRANES2[1]
    assert T.W == R2.parse("x^2 - y^2")
    assert validate_mf(T)
    assert T.rank_ev == 2 and T.rank_od == 2


# Ext dimensions in each parity, frozen from an independent linear-algebra computation
@pytest.mark.parametrize("D", [2, 3, 4])
@pytest.mark.parametrize("src,tgt", [(A1, A1), (M1, M1), (M1, M2), (M2, M1)])
def test_ext_dimensions(src, tgt, D):
    for parity in (0, 1):
        assert len(ext_basis(src, tgt, parity, D)) == 1


def test_ext_representatives_are_closed_and_not_exact():
    for f in ext_basis(M1, M2, 0, 3) + ext_basis(M1, M2, 1, 3):
        assert hom_diff(f).is_zero() and not f.is_zero()


def test_from_blocks_layout():
    f = Morphism.from_blocks(A1, A1, 1, {"ev_od": [["-1"]], "od_ev": [["1"]]})
    assert f.matrix[1][0] == R1.parse("-1") and f.matrix[0][1] == R1.parse("1")
    with pytest.raises(ValueError):
        Morphism(A1, A1, 0, [["0", "1"], ["0", "0"]])
