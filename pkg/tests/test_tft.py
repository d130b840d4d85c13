from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from lgstate import linalg
from lgstate.tft import (AxiomError, FiniteOpenCategory, cardy_check, commutator_quotient, frobenius_check,
                         operator_pairing, operator_pairing_matrices, pairing_checks, validate_category,
                         with_frobenius)

MAT2 = FiniteOpenCategory.matrix_algebra(2)
TWO_BRANES = FiniteOpenCategory.semisimple({"E": (1, 2), "F": (2, 0)})
DUAL = FiniteOpenCategory.dual_numbers()

vec = lambda n: st.lists(st.integers(-3, 3), min_size=n, max_size=n).map(
    lambda xs: {i: Fraction(x) for i, x in enumerate(xs) if x})


def test_matrix_algebra_closed_sector():
    cs = commutator_quotient(MAT2)
    assert cs.dim == 1
    ident = MAT2.identities["E"]
    assert operator_pairing(MAT2, "E", ident, "E", ident) == 4
    assert pairing_checks(cs).ok


def test_matrix_algebra_cardy_all_pairs():
    cs = commutator_quotient(MAT2)
    rep = cardy_check(MAT2, cs)
    assert rep.ok and all(rep.pairs.values())
    assert frobenius_check(cs)


def test_two_brane_semisimple():
    assert validate_category(TWO_BRANES)
    cs = commutator_quotient(TWO_BRANES)
    assert cs.dim == 2
    assert pairing_checks(cs).ok
    rep = cardy_check(TWO_BRANES, cs)
    assert rep.ok and rep.adjoint_algebra_map


def test_dual_numbers_degenerate():
    cs = commutator_quotient(DUAL)
    pr = pairing_checks(cs)
    assert cs.dim == 2 and pr.rank == 1 and not pr.nondegenerate
    assert not cs.has_frobenius


def test_dual_numbers_user_frobenius():
    cs = with_frobenius(commutator_quotient(DUAL), {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
                        [0, 1], {0: 1})
    assert frobenius_check(cs)
    bad = with_frobenius(commutator_quotient(DUAL), {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
                         [1, 0], {0: 1})
    assert not frobenius_check(bad)


def test_scaled_trace_breaks_cardy():
    cs = commutator_quotient(MAT2)
    cs.trace = [t * 2 for t in cs.trace]
    assert not cardy_check(MAT2, cs).ok


def test_invalid_category_rejected():
    broken = FiniteOpenCategory.from_algebra(2, {(0, 0): {0: 1}, (1, 1): {0: 1}}, {0: 1})
    broken.comp[("E", "E", "E")][(0, 1)] = {0: Fraction(1)}
    assert not validate_category(broken)
    with pytest.raises(AxiomError):
        commutator_quotient(broken)


@given(vec(4), vec(4), vec(4))
def test_commutators_pair_to_zero(a, b, c):
    A = MAT2
    comm = A.mul("E", "E", "E", a, b)
    for k, v in A.mul("E", "E", "E", b, a).items():
        comm[k] = comm.get(k, 0) - v
    assert operator_pairing(A, "E", comm, "E", c) == 0


@given(st.sampled_from([("E", "E"), ("E", "F"), ("F", "E"), ("F", "F")]), st.data())
def test_two_evaluation_orders(EF, data):
    E, F = EF
    A = TWO_BRANES
    a = data.draw(vec(A.dim(E, E)))
    b = data.draw(vec(A.dim(F, F)))
    assert operator_pairing(A, E, a, F, b) == operator_pairing_matrices(A, E, a, F, b)


def _change_basis(A, P):
    """Same one-brane algebra in the basis f_i = sum_j P[j][i] e_j."""
    n = len(P)
    Pinv = linalg.inverse(P)
    to_f = lambda v: {i: sum(Pinv[i][j] * x for j, x in v.items()) for i in range(n)}
    table = {}
    for i in range(n):
        for j in range(n):
            fi = {k: P[k][i] for k in range(n)}
            fj = {k: P[k][j] for k in range(n)}
            table[(i, j)] = to_f(A.mul("E", "E", "E", fi, fj))
    return FiniteOpenCategory.from_algebra(n, table, to_f(A.identities["E"])), to_f


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=4, max_size=4), vec(4), vec(4))
def test_basis_change_invariance(P, a, b):
    assume(linalg.det(P) != 0)
    B, to_f = _change_basis(MAT2, P)
    assert validate_category(B)
    assert commutator_quotient(B).dim == 1
    assert operator_pairing(B, "E", to_f(a), "E", to_f(b)) == operator_pairing(MAT2, "E", a, "E", b)
