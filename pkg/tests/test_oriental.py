import itertools
import time

import pytest

from orientalis import steiner
from orientalis.cells import CellError, Gen, Unit, gen, key
from orientalis.expansion import GenMap, maps_equal
from orientalis.oriental import (MonotoneMap, cosimplicial_linear_check, cosimplicial_map, degeneracy,
                                 degeneracy_monad, eta_power, face, face_monad, functoriality_check,
                                 monad_route_check, oriental, simp, verify_simplicial_identities)

# generator-wise table of the multiplication O_3 -> O_2
MU_TABLE = {
    (0,): "<0>", (1,): "<0>", (2,): "<1>", (3,): "<2>",
    (0, 1): "1_<0>", (0, 2): "<0,1>", (1, 2): "<0,1>", (0, 3): "<0,2>", (1, 3): "<0,2>", (2, 3): "<1,2>",
    (0, 1, 2): "1_<0,1>", (0, 1, 3): "1_<0,2>", (0, 2, 3): "<0,1,2>", (1, 2, 3): "<0,1,2>",
    (0, 1, 2, 3): "1_<0,1,2>",
}


def test_oriental_minus_one_is_empty():
    assert oriental(-1).gens() == ()
    with pytest.raises(ValueError):
        oriental(-2)


def test_simp_examples():
    assert simp((0, 1), 1) is gen(0, 1)
    assert simp((0, 0), 1) is Unit(gen(0))
    assert simp((0, 1, 1), 2) is Unit(gen(0, 1))
    assert simp((0, 0, 1), 2) is Unit(gen(0, 1))
    assert simp((2,), 3) is gen(2)
    with pytest.raises(CellError):
        simp((1, 0), 2)
    with pytest.raises(CellError):
        simp((0, 3), 2)
    with pytest.raises(CellError):
        simp((), 2)
    with pytest.raises(ValueError):
        simp((0,), 2, method="other")


def test_simp_dedup_agrees_with_recursion():
    count = 0
    for n in range(5):
        O = oriental(n)
        for length in range(1, n + 3):
            for seq in itertools.combinations_with_replacement(range(n + 1), length):
                a, b = simp(seq, n), simp(seq, n, method="dedup")
                assert steiner.cell_eq(O, a, b), seq
                count += 1
    assert count > 400


def test_monotone_maps():
    d = MonotoneMap.face(1, 2)
    assert d.values == (0, 2)
    s = MonotoneMap.degeneracy(0, 1)
    assert s.values == (0, 0, 1)
    assert MonotoneMap.parse("0,0,1") == MonotoneMap(2, 1, (0, 0, 1))
    assert MonotoneMap.parse("0,2", 3).m == 3
    assert d.then(MonotoneMap.degeneracy(1, 1)).values == (0, 1)
    for bad in [(1, (0,)), (1, (1, 0))]:
        with pytest.raises(ValueError):
            MonotoneMap(bad[0], 1, bad[1])
    with pytest.raises(ValueError):
        MonotoneMap(0, 1, (2,))
    with pytest.raises(ValueError):
        MonotoneMap.face(3, 2)
    with pytest.raises(ValueError):
        MonotoneMap.degeneracy(2, 1)
    with pytest.raises(ValueError):
        d.then(d)


def test_face_and_degeneracy_examples():
    assert face(0, 1)(gen(0)) is gen(1)
    assert face(1, 1)(gen(0)) is gen(0)
    assert face(1, 2)(gen(0, 1)) is gen(0, 2)
    assert degeneracy(0, 0)(gen(0, 1)) is Unit(gen(0))
    assert cosimplicial_map(MonotoneMap.parse("0,0,1"))(gen(0, 1, 2)) is Unit(gen(0, 1))


def test_degeneracy_reproduces_mu_table():
    s0 = degeneracy(0, 2)
    for seq, text in MU_TABLE.items():
        assert s0.images[key(*seq)] is oriental(2).parse_cell(text), seq
    assert len(MU_TABLE) == len(oriental(3).gens())


def test_identity_map():
    for n in range(5):
        f = cosimplicial_map(MonotoneMap.identity(n))
        assert maps_equal(f, GenMap.identity(oriental(n))).passed
        assert all(f.images[k] is Gen(k) for k in oriental(n).gens())


def test_eta_power():
    assert eta_power(0, 2) is None
    assert eta_power(2, 1)(gen(0, 1)) is gen(2, 3)


def test_face_monad_examples():
    assert face_monad(0, 2)(gen(0, 1)) is gen(1, 2)
    assert face_monad(2, 2)(gen(0, 1)) is gen(0, 1)
    assert face_monad(1, 2)(gen(0, 1)) is gen(0, 2)
    with pytest.raises(ValueError):
        face_monad(3, 2)
    with pytest.raises(ValueError):
        degeneracy_monad(3, 2)


def test_monad_route():
    rep = monad_route_check(4)
    assert rep.passed, rep.failures


def test_simplicial_identities():
    rep = verify_simplicial_identities(4)
    assert rep.passed, rep.failures
    assert rep.info["identities"] == 69


def test_simplicial_identities_catch_wrong_map():
    # swapping two faces breaks d_j d_i = d_i d_{j-1}
    assert not maps_equal(face(0, 2).then(face(1, 3)), face(1, 2).then(face(1, 3))).passed


def test_cosimplicial_linear():
    rep = cosimplicial_linear_check(4)
    assert rep.passed, rep.failures


def test_functoriality():
    start = time.perf_counter()
    rep = functoriality_check(3)
    assert rep.passed, rep.failures
    assert time.perf_counter() - start < 60
