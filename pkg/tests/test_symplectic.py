import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_normalizer.errors import NotInGroup, NotInSL2, ParseError, ZeroMatrix
from pauli_normalizer.symplectic import (
    GeneratorWord,
    build_D,
    build_S,
    decompose,
    evaluate_sl2_word,
    form_J,
    h_word,
    is_symplectic,
    lemma_bcde,
    outer_diag,
    random_symplectic,
    random_word,
    six_equations,
    six_residuals,
    sl2_word,
    step1_reduce,
    step2_sk_word,
)
from pauli_normalizer.zmod import ZModMatrix, ZModScalar

from helpers import form_sign, random_matrix

PRIMES = [2, 3, 5, 7, 11]


def M2(rows, p):
    return ZModMatrix(rows, p)


@pytest.mark.parametrize("p", PRIMES)
def test_generators_symplectic(p):
    for i in range(1, 5):
        assert is_symplectic(build_D(i, p)) == 1


def test_sign_examples():
    assert is_symplectic(outer_diag(3)) == -1
    M = ZModMatrix.diag([2, 1, 1, 1], 5)
    assert is_symplectic(M) is None
    assert six_residuals(M)[0] != 0 and not any(six_residuals(M)[1:])


def test_six_equations_basics():
    assert six_equations(ZModMatrix.identity(4, 3))
    assert not six_equations(ZModMatrix.zeros(4, 4, 3))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(0, 2**32))
def test_six_equations_vs_form(p, seed):
    rng = random.Random(seed)
    M = random_matrix(p, rng) if rng.random() < 0.5 else random_symplectic(p, rng, 12)
    assert six_equations(M) == (form_sign(M) == 1)
    assert is_symplectic(M) == form_sign(M)


def test_S_examples():
    assert build_S(ZModScalar(1, 5)) == M2([[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, -1, 0, 1]], 5)
    for k in range(5):
        assert is_symplectic(build_S(k, 5)) == 1
    for p in PRIMES:
        D3, D4 = build_D(3, p), build_D(4, p)
        assert D4.T == D3 @ D4 @ D3


def test_sl2_word_examples():
    assert sl2_word(M2([[1, 1], [0, 1]], 5)) == [("T", 1)]
    assert sl2_word(ZModMatrix.identity(2, 5)) == []
    with pytest.raises(NotInSL2):
        sl2_word(M2([[2, 0], [0, 1]], 5))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sl2_word_exhaustive(p):
    for a, b, c, d in itertools.product(range(p), repeat=4):
        A = M2([[a, b], [c, d]], p)
        if A.det() == 1:
            assert evaluate_sl2_word(sl2_word(A), p) == A


def test_lemma_examples():
    I = ZModMatrix.identity(2, 5)
    L, R = lemma_bcde(I, "i")
    assert L @ I @ R == I
    A = M2([[0, 1], [-1, 0]], 5)
    L, R = lemma_bcde(A, "i")
    assert L @ A @ R == I and R == I
    A = M2([[1, 1], [1, 1]], 3)
    L, R = lemma_bcde(A, "i")
    assert L @ A @ R == ZModMatrix.diag([1, 0], 3)
    with pytest.raises(ZeroMatrix):
        lemma_bcde(ZModMatrix.zeros(2, 2, 3), "ii")


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("side", ["i", "ii"])
def test_lemma_exhaustive(p, side):
    for vals in itertools.product(range(p), repeat=4):
        A = M2([vals[:2], vals[2:]], p)
        if A.is_zero():
            continue
        k = A.det().value
        L, R = lemma_bcde(A, side)
        target = ZModMatrix.diag([1, k] if side == "i" else [k, 1], p)
        assert L @ A @ R == target
        assert L.det() == 1 and R.det() == 1
        if k:
            assert R == ZModMatrix.identity(2, p)


def test_h_word_examples():
    I = ZModMatrix.identity(2, 7)
    T = M2([[1, 1], [0, 1]], 7)
    assert len(h_word(I, I)) == 0
    w = h_word(T, I)
    assert w.to_text() == "D1" and w.evaluate() == build_D(1, 7)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.booleans())
def test_h_word_random(seed, swapped):
    rng = random.Random(seed)

    def sl2():
        while True:
            A = random_matrix(7, rng, 2, 2)
            if A.det() == 1:
                return A

    A, B = sl2(), sl2()
    target = A.direct_sum(B)
    if swapped:
        target = target @ build_D(3, 7)
    assert h_word(A, B, swapped).evaluate() == target


def test_step1_examples():
    G1, G2, k = step1_reduce(build_S(2, 5))
    assert G1.evaluate() @ build_S(2, 5) @ G2.evaluate() == build_S(k)
    G1, G2, k = step1_reduce(build_D(4, 3))
    assert k == 1
    assert G1.evaluate() @ build_D(4, 3) @ G2.evaluate() == build_S(k)


def test_step1_random_p5():
    rng = random.Random(5)
    for _ in range(200):
        M = random_symplectic(5, rng)
        G1, G2, k = step1_reduce(M)
        assert G1.evaluate() @ M @ G2.evaluate() == build_S(k)


def test_step1_zero_blocks():
    # every element of Sp(4, F_3) with M12 = 0 or M22 = 0 goes through the D4 detour
    from pauli_normalizer.oracle import enumerate_by_form

    seen = 0
    for M in enumerate_by_form(3, 1).matrices():
        if M.block(0, 1).is_zero() or M.block(1, 1).is_zero():
            G1, G2, k = step1_reduce(M)
            assert G1.evaluate() @ M @ G2.evaluate() == build_S(k)
            seen += 1
    assert seen > 0


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_step2_all_k(p):
    J = form_J(p)
    D4 = build_D(4, p)
    for k in range(p):
        sk = ZModScalar(k, p)
        assert J.T @ (D4 ** (1 - k)).T @ J @ D4.T == build_S(sk)
        assert step2_sk_word(sk).evaluate() == build_S(sk)


def test_decompose_examples():
    M = build_D(1, 5) @ build_D(3, 5) @ build_D(4, 5)
    assert decompose(M).evaluate() == M
    assert len(decompose(ZModMatrix.identity(4, 5))) == 0
    w = decompose(outer_diag(3))
    assert w.outer and w.body().evaluate() == ZModMatrix.identity(4, 3)
    assert w.evaluate() == outer_diag(3)
    with pytest.raises(NotInGroup):
        decompose(ZModMatrix.diag([2, 1, 1, 1], 5))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(0, 2**32))
def test_decompose_roundtrip(p, seed):
    M = random_symplectic(p, random.Random(seed), extended=True)
    w = decompose(M)
    assert w.evaluate() == M
    assert w.outer == (is_symplectic(M) == -1 and p != 2)


def test_decompose_forced_coset_p2():
    M = build_D(4, 2)
    w = decompose(M, outer=True)
    assert w.outer and w.evaluate() == M
    with pytest.raises(NotInGroup):
        decompose(build_D(4, 3), outer=True)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(0, 2**32))
def test_word_algebra(p, seed):
    rng = random.Random(seed)
    w = random_word(p, rng.randint(0, 12), rng)
    v = random_word(p, rng.randint(0, 12), rng)
    assert (w + v).evaluate() == w.evaluate() @ v.evaluate()
    assert w.inverse().evaluate() == w.evaluate().inv()
    assert w.simplified().evaluate() == w.evaluate()
    assert GeneratorWord.from_text(w.to_text(), p) == w
    letters = w.expanded()
    assert len(letters) == w.length()
    expanded = GeneratorWord.from_text(" ".join(letters), p)
    assert expanded.evaluate() == w.evaluate()


def test_word_parse_errors():
    for bad in ["D5", "D1 OUT", "OUT^2", "X"]:
        with pytest.raises(ParseError):
            GeneratorWord.from_text(bad, 3)
    assert GeneratorWord.from_text("", 3).evaluate() == ZModMatrix.identity(4, 3)
