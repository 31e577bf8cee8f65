import pytest

from orientalis import steiner
from orientalis.cells import Comp, Gen, GenKey, Unit, boundary, compose, gen, iterated_boundary, key, lift, to_text
from orientalis.cylinders import (Cone, Cylinder, CylinderError, composable_pairs, cone_compose, constraint,
                                  cyl_boundary, cyl_compose, cyl_equal, cyl_iterated_boundary, cyl_unit,
                                  degenerate_cone, expansion_axioms, expansion_cone, is_degenerate, make_cone,
                                  oplax_check, trivial, validate_cone, validate_cylinder)
from orientalis.expansion import chevron
from orientalis.oriental import oriental, oriental_expansion
from orientalis.polygraph import Polygraph

V = key(0)


def test_expansion_cone_examples():
    E1 = oriental_expansion(1)
    assert expansion_cone(gen(1), E1).cells() == [gen(0, 1)]
    E2 = oriental_expansion(2)
    c = expansion_cone(gen(1, 2), E2)
    assert c.cells() == [gen(0, 1), gen(0, 2), gen(0, 1, 2)]
    assert c.text(unicode=True) == "(⟨0,1⟩, ⟨0,2⟩, ⟨0,1,2⟩)"
    assert c.to_json() == {"aux": [["<0,1>", "<0,2>"]], "principal": "<0,1,2>", "base": "<1,2>"}
    assert c.base is gen(1, 2)
    assert c.top is Unit(gen(0))


def test_cyl_boundary():
    E = oriental_expansion(3)
    X = E.result
    # chevrons of the boundary of <0,1,2> inside O_3
    c = expansion_cone(gen(0, 1, 2), E)
    lower = cyl_boundary("-", c, X)
    assert isinstance(lower, Cone)
    assert cyl_equal(lower, expansion_cone(gen(0, 2), E), X)
    assert lower.cells() == expansion_cone(gen(0, 2), E).cells()
    upper = cyl_boundary("+", c, X)
    assert cyl_equal(upper, expansion_cone(X.target(key(0, 1, 2)), E), X)
    one = expansion_cone(gen(1, 2), E)
    assert cyl_boundary("-", one, X).cells() == [one.aux[0][0]]
    two = expansion_cone(gen(1, 2, 3), E)
    assert cyl_boundary("+", cyl_boundary("-", two, X), X) == cyl_boundary("+", cyl_boundary("+", two, X), X)
    assert cyl_iterated_boundary("-", 0, two, X).cells() == [gen(0, 1)]
    with pytest.raises(CylinderError):
        cyl_boundary("-", cyl_iterated_boundary("-", 0, two, X), X)
    with pytest.raises(CylinderError):
        cyl_iterated_boundary("-", 3, two, X)


def test_zero_composition_of_1_cylinders_formula():
    S = Polygraph()
    for name in "abcdef":
        S._add(GenKey(name, 0))
    names = {"x": "ab", "z": "bc", "y": "de", "t": "ef", "sa": "ad", "ta": "be", "tb": "cf"}
    for name, (s, t) in names.items():
        S._add(GenKey(name, 1), Gen(GenKey(s, 0)), Gen(GenKey(t, 0)))
    g = lambda name: S.resolve(name)
    S._add(GenKey("al", 2), g("x"), g("y"))
    S._add(GenKey("be", 2), g("z"), g("t"))
    x, y, z, t = g("x"), g("y"), g("z"), g("t")
    alpha = Cylinder(x, y, ((g("sa"), g("ta")),), g("al"))
    beta = Cylinder(z, t, ((g("ta"), g("tb")),), g("be"))
    gamma = cyl_compose(0, alpha, beta, S, check=False)
    # gamma_1 = (t *0 alpha_1) *1 (beta_1 *0 x), written with the first-applied operand first
    assert gamma.principal is Comp(1, Comp(0, Unit(x), g("be")), Comp(0, g("al"), Unit(t)))
    assert gamma.aux == ((g("sa"), g("tb")),)
    assert gamma.top is Comp(0, x, z) and gamma.bottom is Comp(0, y, t)


def test_trivial_cylinders():
    O = oriental(2)
    assert trivial(gen(0), O).cells() == [Unit(gen(0))]
    tx = trivial(gen(0, 1, 2), O)
    assert validate_cylinder(tx, O).passed
    a, b = trivial(gen(0, 1), O), trivial(gen(1, 2), O)
    assert cyl_equal(cyl_compose(0, a, b, O), trivial(Comp(0, gen(0, 1), gen(1, 2)), O), O)
    with pytest.raises(CylinderError):
        cyl_compose(0, b, a, O)
    with pytest.raises(CylinderError):
        cyl_compose(1, a, b, O)
    with pytest.raises(CylinderError):
        cyl_compose(0, a, tx, O)


def test_cyl_unit():
    E = oriental_expansion(2)
    X = E.result
    c = expansion_cone(gen(1, 2), E)
    u = cyl_unit(c)
    assert isinstance(u, Cone)
    assert u.principal is Unit(gen(0, 1, 2))
    assert u.aux[-1] == (gen(0, 1, 2), gen(0, 1, 2))
    assert validate_cone(u, X).passed
    assert cyl_boundary("-", u, X) == c and cyl_boundary("+", u, X) == c


def test_cone_compose_examples():
    E = oriental_expansion(3)
    X = E.result
    a, b = expansion_cone(gen(1, 2), E), expansion_cone(gen(2, 3), E)
    g = cone_compose(0, a, b, X)
    # gamma_1 = y *0 alpha_1 *1 beta_1
    assert g.principal is compose(1, gen(0, 2, 3), compose(0, gen(0, 1, 2), gen(2, 3)))
    assert g.principal is chevron(Comp(0, gen(1, 2), gen(2, 3)), E)
    assert g.aux == ((gen(0, 1), gen(0, 3)),)
    assert validate_cone(g, X).passed
    # 2-cones along 1: gamma_2 = y *0 s alpha_0 *1 alpha_2 *2 beta_2
    x = gen(1, 2, 3)
    y = Unit(X.target(key(1, 2, 3)))
    a, b = expansion_cone(x, E), expansion_cone(y, E)
    g = cone_compose(1, a, b, X)
    assert g.principal is compose(2, b.principal, compose(1, a.principal, compose(0, a.aux[0][0], y)))
    assert validate_cone(g, X).passed
    with pytest.raises(CylinderError):
        cone_compose(0, b, a, X)


def generator_cone_pairs(n):
    E = oriental_expansion(n)
    X = E.result
    for p, x, y in composable_pairs(X, n):
        d = max(x.dim, y.dim)
        yield E, X, p, expansion_cone(lift(x, d), E), expansion_cone(lift(y, d), E)


def pair_count(n):
    """Generators ending at j followed by generators starting at j; no higher pair of generators composes."""
    return sum((2 ** j - 1) * (2 ** (n - j) - 1) for j in range(n + 1))


@pytest.mark.parametrize("n", [3, 4])
def test_cone_compose_agrees_with_cyl_compose(n):
    count = 0
    for E, X, p, a, b in generator_cone_pairs(n):
        c1 = cone_compose(p, a, b, X)
        c2 = cyl_compose(p, a, b, X)
        assert cyl_equal(c1, c2, X), (p, a, b)
        assert validate_cone(c1, X).passed
        count += 1
    assert count == pair_count(n)


@pytest.mark.parametrize("n", [3, 4])
def test_boundary_of_composite(n):
    count = 0
    for E, X, p, a, b in generator_cone_pairs(n):
        c = cyl_compose(p, a, b, X)
        n = c.n
        for eps in "-+":
            got = cyl_boundary(eps, c, X)
            if p == n - 1:
                want = cyl_boundary(eps, a if eps == "-" else b, X)
            else:
                want = cyl_compose(p, cyl_boundary(eps, a, X), cyl_boundary(eps, b, X), X)
            assert cyl_equal(got, want, X)
            count += 1
    assert count > 0


def test_degenerate_cone_examples():
    O = oriental(2)
    c = degenerate_cone(gen(0), V, O)
    assert c.cells() == [Unit(gen(0))]
    c = degenerate_cone(gen(0, 1), V, O)
    assert c.cells() == [Unit(gen(0)), gen(0, 1), Unit(gen(0, 1))]
    for k in oriental(3).gens():
        if k.label[0] == 0:
            c = degenerate_cone(Gen(k), V, oriental(3))
            assert validate_cone(c, oriental(3)).passed
            assert is_degenerate(c, oriental(3))
    with pytest.raises(CylinderError):
        degenerate_cone(gen(1, 2), V, O)


def _pool(O, x, d):
    """Cells of dimension d: lifted generators and lifted iterated boundaries of x."""
    out = {}
    for e in [Gen(k) for k in O.gens()] + [iterated_boundary("-", i, x, O) for i in range(x.dim + 1)] + \
             [iterated_boundary("+", i, x, O) for i in range(x.dim + 1)]:
        if e.dim <= d:
            out[lift(e, d)] = None
    return list(out)


def _fits(c, eps, i, aux, x, O):
    probe = make_cone(V, x, list(aux) + [(None, None)] * (x.dim - len(aux)), None)
    want_s, want_t = constraint(eps, i, probe, O)
    try:
        return (steiner.cell_eq(O, boundary("-", c, O), want_s) and
                steiner.cell_eq(O, boundary("+", c, O), want_t))
    except steiner.TableError:
        return False


def degenerate_cones_by_search(x, O):
    n = x.dim
    partial = [()]
    for i in range(n):
        pool = _pool(O, x, i + 1)
        units = [c for c in pool if isinstance(c, Unit)]
        nxt = []
        for aux in partial:
            for s in units:
                if not _fits(s, "-", i, aux, x, O):
                    continue
                for t in pool:
                    if _fits(t, "+", i, aux, x, O):
                        nxt.append(aux + ((s, t),))
        partial = nxt
    found = []
    for aux in partial:
        for c in [c for c in _pool(O, x, n + 1) if isinstance(c, Unit)]:
            if _fits(c, "-", n, aux, x, O):
                cone = make_cone(V, x, aux, c)
                # syntactically different spellings of the same cone count once
                if not any(cyl_equal(cone, other, O) for other in found):
                    found.append(cone)
    return found


@pytest.mark.parametrize("n", range(4))
def test_degenerate_cone_is_unique(n):
    O = oriental(n)
    bases = [Gen(k) for k in O.gens() if k.label[0] == 0]
    if n >= 2:
        bases.append(Comp(0, gen(0, 1), gen(1, 2)))
    if n >= 3:
        bases.append(Comp(1, gen(0, 1, 3), Unit(O.target(key(0, 1, 3)))))
    for x in bases:
        found = degenerate_cones_by_search(x, O)
        assert len(found) == 1, (to_text(x), [c.text() for c in found])
        assert cyl_equal(found[0], degenerate_cone(x, V, O), O)


def test_oplax_chevron_examples():
    E = oriental_expansion(2)
    X = E.result
    theta = lambda e: chevron(e, E)
    rep = oplax_check(theta, X, E.origin, [(0, gen(0, 1), gen(1, 2))], [])
    assert rep.passed, rep.failures
    E1 = oriental_expansion(1)
    rep = oplax_check(lambda e: chevron(e, E1), E1.result, E1.origin, [], [gen(1)])
    assert rep.passed


def test_oplax_constant_unit_fails():
    E = oriental_expansion(2)
    X = E.result
    v = Gen(E.origin)
    theta = lambda e: lift(v, e.dim + 1)
    rep = oplax_check(theta, X, E.origin, [(0, gen(0, 1), gen(1, 2))], [], check_boundaries=False)
    assert not rep.passed
    assert len(rep.failures) == 1
    assert rep.failures[0].startswith("composition axiom fails for <1,2>*0<0,1>")


@pytest.mark.parametrize("n", range(4))
def test_expansion_axioms(n):
    rep = expansion_axioms(oriental_expansion(n))
    assert rep.passed, rep.failures
    assert n < 2 or rep.info["pairs"] > 0


def test_validate_cone_rejects_bad_cells():
    E = oriental_expansion(2)
    X = E.result
    c = expansion_cone(gen(1, 2), E)
    bad = make_cone(E.origin, gen(1, 2), [(gen(0, 2), gen(0, 1))], gen(0, 1, 2))
    rep = validate_cone(bad, X)
    assert not rep.passed and any("alpha_0" in f for f in rep.failures)
    wrong_top = Cone(Unit(gen(1)), c.bottom, c.aux, c.principal, E.origin)
    assert not validate_cone(wrong_top, X).passed
