from math import comb

import pytest
from hypothesis import given

from cellgen import expressions
from orientalis.cells import CellError, Comp, Gen, GenKey, Unit, gen, key
from orientalis.linear import Chain
from orientalis.oriental import oriental
from orientalis.polygraph import Polygraph
from orientalis.steiner import simplex_adc


def chain(dim, **terms):
    """chain(1, _01=1) is [<0,1>]."""
    return Chain(dim, {key(*map(int, name[1:])): c for name, c in terms.items()})


def globe():
    S = Polygraph()
    x, y = GenKey("x", 0), GenKey("y", 0)
    f, g = GenKey("f", 1), GenKey("g", 1)
    S._add(x)
    S._add(y)
    S._add(f, Gen(x), Gen(y))
    S._add(g, Gen(x), Gen(y))
    S._add(GenKey("a", 2), Gen(f), Gen(g))
    return S


def test_linearize_examples():
    O3 = oriental(3)
    assert O3.linearize(gen(0, 1)) == chain(1, _01=1)
    assert O3.linearize(Unit(gen(0))) == Chain.zero(1)
    assert O3.linearize(O3.target(key(0, 1, 2, 3))) == chain(2, _123=1, _013=1)
    assert O3.linearize(O3.source(key(0, 1, 2, 3))) == chain(2, _023=1, _012=1)


def test_lambda_examples():
    K = oriental(1).lambda_()
    assert K.diff[key(0, 1)] == chain(0, _1=1, _0=-1)
    K0 = oriental(0).lambda_()
    assert list(K0.basis_elements()) == [key(0)]
    assert K0.e(Chain.basis(key(0))) == 1
    ref = simplex_adc(3)
    K3 = oriental(3).lambda_()
    assert K3.bases == ref.bases
    assert K3.diff == ref.diff


@pytest.mark.parametrize("n", range(9))
def test_ranks(n):
    O = oriental(n)
    for m in range(n + 1):
        assert len(O.gens(m)) == comb(n + 1, m + 1)


def test_validate_oriental():
    for n in range(5):
        rep = oriental(n).validate()
        assert rep.passed, rep.failures
        assert rep.info["exact"]


def test_validate_dimension_error():
    S = Polygraph()
    S._add(key(0))
    S._add(key(1))
    S._add(key(0, 1), gen(0), gen(1))
    S._add(key(0, 1, 2), gen(0, 1), Unit(gen(0, 1)))
    S._add(GenKey("bad", 2), gen(0, 1), gen(0, 1, 2))
    rep = S.validate()
    assert not rep.passed
    assert any("dimension" in f for f in rep.failures)


def test_validate_dangling_key():
    S = Polygraph()
    S._add(key(0))
    S._add(key(0, 1), gen(0), gen(1))
    rep = S.validate()
    assert any("not defined earlier" in f for f in rep.failures)


def test_validate_linear_globularity():
    S = Polygraph()
    for i in range(3):
        S._add(key(i))
    S._add(key(0, 1), gen(0), gen(1))
    S._add(key(1, 2), gen(1), gen(2))
    S._add(key(0, 1, 2), gen(0, 1), gen(1, 2))
    rep = S.validate()
    assert not rep.passed
    assert any("linear globularity" in f for f in rep.failures)


def test_validate_generic():
    rep = globe().validate()
    assert rep.passed and rep.info["exact"]


def test_duplicate_and_bad_generators():
    S = Polygraph()
    S._add(key(0))
    with pytest.raises(CellError):
        S._add(key(0))
    with pytest.raises(CellError):
        S._add(key(0, 1))
    with pytest.raises(CellError):
        S._add(GenKey("1.2", 0))


@pytest.mark.parametrize("n", range(6))
def test_json_round_trip(n):
    O = oriental(n)
    text = O.dumps()
    back = Polygraph.loads(text)
    assert back.gens() == O.gens()
    for k in O.gens():
        if k.dim:
            assert back.source(k) is O.source(k)
            assert back.target(k) is O.target(k)
    assert back.dumps() == text


def test_json_schema_and_names():
    S = globe()
    data = S.to_json()
    assert data["dims"] == [["x", "y"], ["f", "g"], ["a"]]
    assert data["boundaries"]["a"] == {"src": "f", "tgt": "g"}
    assert oriental(1).to_json() == {"dims": [["0", "1"], ["0.1"]],
                                     "boundaries": {"0.1": {"src": "<0>", "tgt": "<1>"}}}
    assert Polygraph.from_json(data).to_json() == data


def test_json_errors():
    for bad in ['{"dims": [["0"], ["0.1"]]}', "[", '{"dims": [["0.1"]]}', '{"x": 1}',
                '{"dims": [["0"], ["0.1"]], "boundaries": {"0.1": {"src": "<0>", "tgt": "<7>"}}}']:
        with pytest.raises(CellError):
            Polygraph.loads(bad)


@given(expressions(n=4, depth=5))
def test_linearize_is_additive(arg):
    O, e = arg
    got = O.linearize(e)
    match e:
        case Gen(k):
            assert got == Chain.basis(k)
        case Unit(_):
            assert not got
        case Comp(_, x, y):
            assert got == O.linearize(x) + O.linearize(y)
    # brute force: count generator occurrences of top dimension in the tree
    counts = {}
    stack = [e]
    while stack:
        c = stack.pop()
        if isinstance(c, Gen) and c.dim == e.dim:
            counts[c.key] = counts.get(c.key, 0) + 1
        elif isinstance(c, Comp):
            stack += [c.first, c.second]
    assert got == Chain(e.dim, counts)


@pytest.mark.parametrize("n", range(7))
def test_lambda_is_a_complex(n):
    K = oriental(n).lambda_()
    for b in K.basis_elements():
        if b.dim >= 2:
            assert not K.d(K.diff[b])
        if b.dim == 1:
            assert K.diff[b].augmentation() == 0
