import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_normalizer.cyclo import CycloMatrix
from pauli_normalizer.errors import NotInGroup, NotInNormalizer
from pauli_normalizer.normalizer import (
    AutomorphismRep,
    ad_B,
    build_B,
    build_B_inverse,
    coeff_matrix,
    grading_action,
    grading_action_direct,
    lift,
    out_I,
    realize,
)
from pauli_normalizer.pauli import GradingIndex, build_I, build_P, build_Q, generators, matrix_to_monomial
from pauli_normalizer.symplectic import GeneratorWord, build_D, is_symplectic, outer_diag, random_word
from pauli_normalizer.zmod import ZModMatrix

from helpers import cmat_to_complex


def rep_of(B, n, outer=False):
    return AutomorphismRep(B, n, outer)


def test_B_conjugation_identities():
    P, Q, I = build_P(3), build_Q(3), build_I(3)
    assert build_B_inverse(2, 3) @ Q.tensor(I) @ build_B(2, 3) == P.tensor(I)
    P, Q, I = build_P(5), build_Q(5), build_I(5)
    assert build_B_inverse(4, 5) @ I.tensor(Q) @ build_B(4, 5) == (Q ** -1).tensor(Q)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_closed_form_inverses(p):
    d = p * p
    for j in range(1, 5):
        assert build_B(j, p) @ build_B_inverse(j, p) == CycloMatrix.identity(d, build_B(j, p).conductor)


def test_B_against_float_definitions():
    # literal index formulas, built independently with numpy
    n = 5
    w = np.exp(2j * np.pi / n)
    eps = w ** (-(n - 1) / 2)
    b = np.array([eps ** j * w ** (j * (j - 1) / 2) for j in range(n)])
    assert np.allclose(cmat_to_complex(build_B(1, n)), np.kron(np.diag(b), np.eye(n)))
    syl = np.array([[w ** (i * j) for j in range(n)] for i in range(n)])
    assert np.allclose(cmat_to_complex(build_B(2, n)), np.kron(syl, np.eye(n)))
    B3 = np.zeros((n * n, n * n))
    B4 = np.zeros((n * n, n * n))
    for p1 in range(n):
        for p2 in range(n):
            B3[p1 * n + p2, p2 * n + p1] = 1
            B4[p1 * n + p2, ((p1 - p2) % n) * n + p2] = 1
    assert np.allclose(cmat_to_complex(build_B(3, n)), B3)
    assert np.allclose(cmat_to_complex(build_B(4, n)), B4)


def test_n2_B1_uses_i():
    assert np.allclose(np.diag(cmat_to_complex(build_B(1, 2))), [1, 1, 1j, 1j])


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_generator_table(p):
    for j in range(1, 5):
        assert coeff_matrix(ad_B(j, p)) == build_D(j, p)
    # and once through the general inverse
    assert coeff_matrix(rep_of(build_B(2, p), p)) == build_D(2, p)


def test_coeff_examples():
    A1 = generators(3)[0]
    assert coeff_matrix(rep_of(A1, 3)) == ZModMatrix.identity(4, 3)
    assert coeff_matrix(out_I(3)) == outer_diag(3)
    assert coeff_matrix(rep_of(build_B(3, 3), 3)) == build_D(3, 3)


def test_coeff_rejects_non_normalizer():
    rng = random.Random(4)
    M = CycloMatrix.from_entries([[rng.randint(-3, 3) for _ in range(9)] for _ in range(9)], 3)
    with pytest.raises(NotInNormalizer):
        coeff_matrix(rep_of(M, 3))


def test_lift_examples():
    r = lift(GeneratorWord.from_text("D1", 3))
    assert r.matrix == build_B(1, 3) and coeff_matrix(r) == build_D(1, 3)
    r = lift(GeneratorWord.empty(3))
    assert r.matrix == CycloMatrix.identity(9, 3) and not r.outer
    r = lift(GeneratorWord.from_text("OUT", 3))
    assert r.outer and coeff_matrix(r) == outer_diag(3)


def random_rep_word(p, rng, max_len=8):
    w = random_word(p, rng.randint(0, max_len), rng)
    if rng.random() < 0.5:
        w = GeneratorWord((("OUT", 1),) + w.tokens, p)
    return w


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 2**32))
def test_lift_matches_evaluate(p, seed):
    w = random_rep_word(p, random.Random(seed))
    r = lift(w)
    C = coeff_matrix(r)
    assert C == w.evaluate()
    if p != 2:
        assert is_symplectic(C) == (-1 if r.outer else 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_compose_and_inverse(seed):
    rng = random.Random(seed)
    r1, r2 = lift(random_rep_word(3, rng)), lift(random_rep_word(3, rng))
    assert coeff_matrix(r1 @ r2) == coeff_matrix(r1) @ coeff_matrix(r2)
    assert coeff_matrix(r1.inverse()) == coeff_matrix(r1).inv()
    assert (r1 @ r2).outer == (r1.outer != r2.outer)


def test_compose_acts_like_function_composition():
    rng = random.Random(11)
    r1, r2 = lift(random_rep_word(3, rng)), lift(random_rep_word(3, rng))
    X = generators(3)[1] @ generators(3)[2]
    lhs = (r1 @ r2).apply(X)
    rhs = r1.apply(r2.apply(X))
    # reps carry their matrices up to scalars, so compare up to a rational multiple
    a, b = cmat_to_complex(lhs), cmat_to_complex(rhs)
    k = np.flatnonzero(np.abs(b.ravel()) > 1e-9)[0]
    assert np.allclose(a, b * (a.ravel()[k] / b.ravel()[k]))


def test_realize_examples():
    r = realize(build_D(2, 3))
    assert coeff_matrix(r) == build_D(2, 3)
    r = realize(ZModMatrix.identity(4, 3))
    assert r.matrix == CycloMatrix.identity(9, 3)
    with pytest.raises(NotInGroup):
        realize(ZModMatrix.diag([2, 1, 1, 1], 5))


def test_realize_outer_p2():
    r = realize(ZModMatrix.identity(4, 2), outer=True)
    assert r.outer and coeff_matrix(r) == ZModMatrix.identity(4, 2)


def test_grading_examples():
    v = GradingIndex((1, 2, 0, 1), 3)
    assert grading_action(AutomorphismRep.identity(3), v) == v
    r = rep_of(build_B(3, 3), 3)
    assert grading_action(r, GradingIndex((1, 0, 0, 0), 3)).values == (0, 0, 1, 0)
    # transpose: P^iQ^j -> P^i Q^-j
    assert grading_action(out_I(3), v).values == (1, 1, 0, 2)


def test_grading_bijective():
    rng = random.Random(3)
    vals = [GradingIndex(t, 3) for t in np.ndindex(3, 3, 3, 3) if any(t)]
    for _ in range(3):
        r = lift(random_rep_word(3, rng))
        images = {grading_action(r, v) for v in vals}
        assert len(images) == 80


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_grading_direct_vs_linear(seed):
    rng = random.Random(seed)
    r = lift(random_rep_word(3, rng))
    t = [rng.randrange(3) for _ in range(4)]
    t[rng.randrange(4)] = rng.randrange(1, 3)
    v = GradingIndex(tuple(t), 3)
    assert grading_action_direct(r, v) == grading_action(r, v)


def test_injectivity_mod_G():
    # words whose coefficient matrix is I lift to Pauli monomials
    p = 3
    rng = random.Random(9)
    for _ in range(10):
        w = random_word(p, rng.randint(1, 6), rng)
        r = lift(w + w.inverse())
        assert coeff_matrix(r) == ZModMatrix.identity(4, p)
        matrix_to_monomial(r.matrix, p)
    # B2^4 is a scalar
    r = lift(GeneratorWord.from_text("D2 D2 D2 D2", 3))
    assert matrix_to_monomial(r.matrix, 3).exponents == (0, 0, 0, 0)


def test_rep_serialization():
    r = lift(GeneratorWord.from_text("OUT D1 D2", 3))
    text = r.to_text()
    assert "outer true" in text
    back = AutomorphismRep.from_text(text)
    assert back.outer and back.matrix == r.matrix
    assert back.to_text() == text
    assert coeff_matrix(back) == coeff_matrix(r)
