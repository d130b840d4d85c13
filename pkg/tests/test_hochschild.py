import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lgstate import exterior_d
from lgstate.factorizations import CurvedAlgebra, MatrixFactorization, Morphism, compose, morphism_space_basis, zeros
from lgstate.groebner import milnor_number
from lgstate.hochschild import (CatChain, TensorChain, boundary, check_psi_chain_map, hh_truncated_homology,
                                hkr, hochschild_diff, psi, quasi_homogeneous_weights, state_space_homology,
                                w_insertion)

from conftest import R1, R2

ONE, X, Y = (0, 0), (1, 0), (0, 1)
ALG0 = CurvedAlgebra(R2, R2.zero())
ALGS = [CurvedAlgebra(R1, R1.parse("x^2")), CurvedAlgebra(R1, R1.parse("x^3")),
        CurvedAlgebra(R2, R2.parse("x^2 - y^2")), CurvedAlgebra(R2, R2.parse("x^3 + y^3"))]


def chain(alg, *terms, L=6):
    return TensorChain(alg, {w: Fraction(c) for c, w in terms}, L)


def test_classical_boundary_example():
    c = chain(ALG0, (1, (ONE, X, Y)))
    assert boundary(c) == chain(ALG0, (1, (X, Y)), (-1, (ONE, (1, 1))), (1, (Y, X)))


def test_boundary_squares_to_zero_example():
    c = chain(ALG0, (1, (X, Y, X, (2, 1))))
    assert boundary(boundary(c)).is_zero()


def test_hkr_examples():
    assert hkr(chain(ALG0, (1, (ONE, X, Y)))) == exterior_d(R2.parse("x")).wedge(exterior_d(R2.parse("y"))).scale(
        Fraction(1, 2))
    assert hkr(chain(ALG0, (1, (X, ONE)))).is_zero()
    assert hkr(chain(ALG0, (3, (Y,)))) == hkr(chain(ALG0, (1, (Y,)))).scale(3)


def test_w_insertion_example():
    alg = ALGS[0]
    c = chain(alg, (1, ((1,),)))
    # x -> x | W
    assert w_insertion(c) == chain(alg, (1, ((1,), (2,))))


def _words(rng, n, count, max_len, max_deg=2):
    out = []
    for _ in range(count):
        k = rng.randint(1, max_len)
        out.append(tuple(tuple(rng.randint(0, max_deg) for _ in range(n)) for _ in range(k)))
    return out


@pytest.mark.parametrize("alg", ALGS, ids=lambda a: str(a.W))
def test_differential_squares_to_zero_below_cutoff(alg):
    L = 5
    for w in _words(random.Random(1), alg.ring.n, 25, L - 1):
        c = TensorChain(alg, {w: Fraction(1)}, L)
        assert hochschild_diff(hochschild_diff(c)).is_zero()


@pytest.mark.parametrize("alg", ALGS, ids=lambda a: str(a.W))
def test_hkr_intertwines(alg):
    dW = exterior_d(alg.W)
    for w in _words(random.Random(2), alg.ring.n, 40, 4):
        c = TensorChain(alg, {w: Fraction(1)}, 6)
        assert dW.wedge(hkr(c)) == hkr(w_insertion(c))
        assert hkr(boundary(c)).is_zero()
        assert hkr(hochschild_diff(c)) == -(dW.wedge(hkr(c)))


def _elements(M, deg=1):
    out = []
    for parity in (0, 1):
        for (i, j, m) in morphism_space_basis(M, M, parity, deg):
            mat = zeros(M.rank, M.rank, M.ring)
            mat[i][j] = M.ring.monomial(m)
            out.append(Morphism(M, M, parity, mat))
    return out


A1 = MatrixFactorization(ALGS[0], [["x"]], [["x"]])
M1 = MatrixFactorization(ALGS[1], [["x"]], [["x^2"]])


def test_psi_length_zero_is_supertrace():
    f = Morphism(A1, A1, 0, [["x", "0"], ["0", "1"]])
    out = psi(CatChain.from_morphisms([A1], [(1, [f])]), 0)
    assert out == TensorChain(A1.algebra, {((1,),): Fraction(1), ((0,),): Fraction(-1)}, 0)


@given(st.sampled_from(_elements(M1)), st.sampled_from(_elements(M1)))
def test_supertrace_graded_cyclic(a, b):
    def str0(f):
        return psi(CatChain.from_morphisms([M1], [(1, [f])]), 0)
    sign = (-1) ** (a.parity * b.parity)
    assert str0(compose(a, b)) == str0(compose(b, a)).scale(sign)


@pytest.mark.parametrize("M", [A1, M1], ids=["A1", "M1"])
def test_psi_chain_map(M):
    rng = random.Random(3)
    elems = _elements(M)
    for _ in range(15):
        word = [rng.choice(elems) for _ in range(rng.randint(1, 3))]
        ok, diff = check_psi_chain_map(CatChain.from_morphisms([M], [(1, word)]), 4)
        assert ok, diff


def test_psi_two_branes():
    M2 = MatrixFactorization(ALGS[1], [["x^2"]], [["x"]])
    f = Morphism(M1, M2, 0, [["1", "0"], ["0", "x"]])
    g = Morphism(M2, M1, 0, [["x", "0"], ["0", "1"]])
    ok, _ = check_psi_chain_map(CatChain.from_morphisms([M1, M2], [(1, [g, f])]), 3)
    assert ok


@pytest.mark.parametrize("a", range(2, 6))
@pytest.mark.parametrize("b", range(2, 6))
def test_state_space_fermat(a, b):
    ss = state_space_homology(R2.parse(f"x^{a} + y^{b}"))
    assert ss.dims == {0: 0, 1: 0, 2: (a - 1) * (b - 1)}


def test_state_space_internal_degrees():
    ss = state_space_homology(R1.parse("x^3"))
    # basis 1 dx and x dx
    assert ss.by_internal_degree() == {Fraction(1, 3): 1, Fraction(-1, 3): 1}


def test_weights():
    assert quasi_homogeneous_weights(R2.parse("x^2*y + y^3")) == (Fraction(1, 3), Fraction(1, 3))
    assert quasi_homogeneous_weights(R2.parse("x^3 + y^5")) == (Fraction(1, 3), Fraction(1, 5))
    with pytest.raises(ValueError):
        quasi_homogeneous_weights(R1.parse("x^2 + x^3"))


@pytest.mark.parametrize("text", ["x^2", "x^3"])
def test_window_matches_state_space(text):
    W = R1.parse(text)
    expected = state_space_homology(W).by_internal_degree()
    table = hh_truncated_homology(W, 4, 8)
    rel = table.reliable_dims()
    assert rel
    for t, d in rel.items():
        assert d == expected.get(t, 0)
    assert sum(expected.values()) == milnor_number(W)


def test_window_classical():
    table = hh_truncated_homology(R1.zero(), 3, 4)
    for (k, deg), d in table.reliable_dims().items():
        assert d == (comb(1, k) * comb(deg - k, 0) if deg >= k else 0)


def test_window_zero_length():
    table = hh_truncated_homology(R1.parse("x^2"), 0, 4)
    assert all(r.dim >= 0 for r in table.rows)
