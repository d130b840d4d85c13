from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lgstate import exterior_d
from lgstate.correlators import (ResidueError, boundary_bulk, hessian, kapustin_li, kl_pairing,
                                 nondegeneracy_report, residue, residue_functional)
from lgstate.factorizations import CurvedAlgebra, MatrixFactorization, Morphism, hom_diff
from lgstate.groebner import milnor_number

from conftest import R1, R2, R3, polys

ACCEPTANCE_W = [R1.parse("x^2"), R1.parse("x^3"), R2.parse("x^2 - y^2"), R2.parse("x^3 + y^3"),
                R2.parse("x^3 + y^4"), R2.parse("x^2*y + y^3"), R3.parse("x^2 + y^3 + z^4")]


def test_hessian_examples():
    assert hessian(R1.parse("x^3")) == R1.parse("6*x")
    assert hessian(R2.parse("x^2 - y^2")) == R2.parse("-4")
    assert hessian(R2.parse("x^2*y + y^3")) == R2.parse("12*y^2 - 4*x^2")


@pytest.mark.parametrize("W", ACCEPTANCE_W, ids=str)
def test_residue_of_hessian_is_mu(W):
    assert residue(hessian(W), W) == milnor_number(W)


# res_0 h dx / W'(x), expanded by hand as a Laurent coefficient (frozen)
@pytest.mark.parametrize("W,h,value", [
    ("x^2", "1", Fraction(1, 2)), ("x^3", "x", Fraction(1, 3)), ("x^3", "1", 0),
    ("x^4", "x^2", Fraction(1, 4)), ("x^4", "x", 0), ("x^5", "x^3", Fraction(1, 5)),
    ("x^5", "x^5", 0),
])
def test_residue_contour_oracle(W, h, value):
    assert residue(R1.parse(h), R1.parse(W)) == value


@given(polys(R2), polys(R2))
def test_residue_vanishes_on_jacobian_ideal(a, b):
    W = R2.parse("x^3 + y^4")
    rf = residue_functional(W)
    assert rf(a * W.partial(0) + b * W.partial(1)) == 0


def test_residue_rejects_inhomogeneous():
    with pytest.raises(ResidueError):
        residue_functional(R1.parse("x^2 + x^3"))


X2 = CurvedAlgebra(R1, R1.parse("x^2"))
X3 = CurvedAlgebra(R1, R1.parse("x^3"))
A1 = MatrixFactorization(X2, [["x"]], [["x"]])
M1 = MatrixFactorization(X3, [["x"]], [["x^2"]])
M2 = MatrixFactorization(X3, [["x^2"]], [["x"]])


def test_boundary_bulk_examples():
    alpha = Morphism.from_blocks(A1, A1, 1, {"ev_od": [["-1"]], "od_ev": [["1"]]})
    assert boundary_bulk(A1, alpha) == exterior_d(R1.parse("2*x"))
    assert kapustin_li(A1, alpha) == 1
    assert boundary_bulk(A1, A1.identity()).is_zero()


def test_boundary_bulk_two_variables():
    C2 = CurvedAlgebra(R2, R2.parse("x^2 - y^2"))
    B = MatrixFactorization(C2, [["x - y"]], [["x + y"]])
    tau = boundary_bulk(B, B.identity())
    # Str(dd_M dd_M)/2 = (d(x+y) ^ d(x-y) - d(x-y) ^ d(x+y)) / 2
    assert tau == exterior_d(R2.parse("x+y")).wedge(exterior_d(R2.parse("x - y")))
    assert kapustin_li(B, B.identity()) == residue(R2.parse("-2"), C2.W)


def _morphism(M, N, parity, entries):
    pm, pn = M.parities, N.parities
    mat = [[M.ring.zero()] * M.rank for _ in range(N.rank)]
    it = iter(entries)
    for i in range(N.rank):
        for j in range(M.rank):
            if (pm[j] + pn[i]) % 2 == parity:
                mat[i][j] = next(it)
    return Morphism(M, N, parity, mat)


@given(st.sampled_from([A1, M1, M2]), st.integers(0, 1), st.lists(polys(R1, 4, 3), min_size=2, max_size=2))
def test_kl_vanishes_on_exact(M, parity, entries):
    beta = _morphism(M, M, parity, entries)
    assert kapustin_li(M, hom_diff(beta)) == 0


@pytest.mark.parametrize("branes", [[A1], [M1, M2]], ids=["A1", "A2"])
def test_gram_full_rank(branes):
    rep = nondegeneracy_report(branes, 4)
    assert rep.verdict
    assert all(b.rank >= 1 for b in rep.blocks)


def test_kl_pairing_graded_symmetry():
    rep = nondegeneracy_report([M1, M2], 3)
    for b in rep.blocks:
        for a in b.classes:
            for c in b.duals:
                assert kl_pairing(a, c) == (-1) ** (a.parity * c.parity) * kl_pairing(c, a)
