import random

import pytest

from pauli_normalizer.errors import ParseError, Unsupported
from pauli_normalizer.oracle import (
    GroupTable,
    closure_bfs,
    enumerate_by_form,
    generator_closure,
    minus_coset,
    order_formula,
    sl2_order,
)
from pauli_normalizer.symplectic import build_D, decompose
from pauli_normalizer.zmod import ZModMatrix

from helpers import form_sign


def test_order_formula():
    assert [order_formula(p) for p in (2, 3)] == [720, 51840]
    # 5^4 * 24 * 624; half of this is the order of PSp(4, 5)
    assert order_formula(5) == 9360000


def test_p2_by_brute_scan():
    # independent of the column extension: scan every 4x4 matrix over F_2
    count = 0
    for code in range(2 ** 16):
        bits = [(code >> (15 - k)) & 1 for k in range(16)]
        M = ZModMatrix([bits[4 * r:4 * r + 4] for r in range(4)], 2)
        count += form_sign(M) == 1
    assert count == 720 == enumerate_by_form(2, 1).size


def test_enumeration_and_closure_agree():
    for p in (2, 3):
        E = enumerate_by_form(p, 1)
        assert E.codes == generator_closure(p).codes
        assert E.size == order_formula(p)


def test_both_and_minus_coset():
    T = enumerate_by_form(2, "both")
    assert T.size == 1440
    assert minus_coset(enumerate_by_form(3, 1)).codes == enumerate_by_form(3, -1).codes
    assert enumerate_by_form(3, "both").size == 2 * 51840


def test_closure_examples():
    assert closure_bfs([build_D(1, 2), build_D(2, 2)]).size == 6 == sl2_order(2)
    assert closure_bfs([ZModMatrix.identity(4, 2)]).size == 1
    assert generator_closure(2, side="right").codes == generator_closure(2).codes


def test_tables_contain_elements():
    E = enumerate_by_form(3, 1)
    rng = random.Random(1)
    mats = list(E.matrices())
    for M in rng.sample(mats, 50):
        assert form_sign(M) == 1 and M in E


def test_p2_table_roundtrips_decompose():
    for outer, M in enumerate_by_form(2, "both").tagged():
        w = decompose(M, outer=outer)
        assert w.evaluate() == M and w.outer == outer


def test_unsupported_prime():
    with pytest.raises(Unsupported):
        enumerate_by_form(5, 1)


def test_dump_roundtrip():
    T = enumerate_by_form(2, "both")
    text = T.dump()
    assert text.startswith("count 1440\n")
    U = GroupTable.load(text)
    assert U == T and U.dump() == text
    with pytest.raises(ParseError):
        GroupTable.load("count 1\n")
