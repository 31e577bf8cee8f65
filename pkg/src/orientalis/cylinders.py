"""Cylinders and cones, given concretely by their cells.

An ``n``-cylinder ``alpha : x ~> y`` between ``n``-cells is the list of
auxiliary cells ``s alpha_i, t alpha_i`` (``i < n``, dimension ``i + 1``)
followed by the principal cell ``alpha_n`` (dimension ``n + 1``), with::

    eps alpha_i : t alpha_{i-1} *(i-1) ... *0 eps x_i  ->  eps y_i *0 s alpha_0 *1 ... *(i-1) s alpha_{i-1}
    alpha_n     : t alpha_{n-1} *(n-1) ... *0 x        ->  y *0 s alpha_0 *1 ... *(n-1) s alpha_{n-1}

Here ``eps alpha_i`` always means a principal cell, never the ``i``-cylinder
obtained by iterating the boundary.  A cone of origin ``v`` is a cylinder
whose top is the iterated unit on ``v``; its bottom is its base.

Constraints are checked on tables, never syntactically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from . import steiner
from .cells import CellError, CellExpr, Gen, GenKey, Sign, Unit, boundary, compose, \
    iterated_boundary, lift, to_text
from .expansion import ExpandedPolygraph, chevron
from .polygraph import Polygraph
from .report import Report


class CylinderError(CellError):
    pass


@dataclass(frozen=True)
class Cylinder:
    top: CellExpr
    bottom: CellExpr
    aux: tuple[tuple[CellExpr, CellExpr], ...]
    principal: CellExpr

    @property
    def n(self) -> int:
        return len(self.aux)

    def cell(self, eps: Sign, i: int) -> CellExpr:
        """``eps alpha_i`` for ``i < n``; the principal cell for ``i == n``."""
        if i == self.n:
            return self.principal
        return self.aux[i][0 if eps == "-" else 1]

    def cells(self) -> list[CellExpr]:
        return [c for pair in self.aux for c in pair] + [self.principal]

    def text(self, unicode: bool = False) -> str:
        return "(" + ", ".join(to_text(c, unicode) for c in self.cells()) + ")"

    def to_json(self) -> dict:
        return {"aux": [[to_text(s), to_text(t)] for s, t in self.aux],
                "principal": to_text(self.principal),
                "top": to_text(self.top), "bottom": to_text(self.bottom)}


@dataclass(frozen=True)
class Cone(Cylinder):
    origin: GenKey = None

    @property
    def base(self) -> CellExpr:
        return self.bottom

    def to_json(self) -> dict:
        return {"aux": [[to_text(s), to_text(t)] for s, t in self.aux],
                "principal": to_text(self.principal),
                "base": to_text(self.bottom)}


def make_cone(origin: GenKey, base: CellExpr, aux, principal) -> Cone:
    return Cone(lift(Gen(origin), base.dim), base, tuple(tuple(p) for p in aux), principal, origin)


def _as_cone(c: Cylinder, origin: GenKey | None) -> Cylinder:
    if origin is None:
        return c
    return Cone(c.top, c.bottom, c.aux, c.principal, origin)


# ------------------------------------------------------------------ operations

def cyl_boundary(eps: Sign, a: Cylinder, ctx: Polygraph) -> Cylinder:
    n = a.n
    if n == 0:
        raise CylinderError("a 0-cylinder has no boundary")
    out = Cylinder(boundary(eps, a.top, ctx), boundary(eps, a.bottom, ctx),
                   a.aux[:n - 1], a.cell(eps, n - 1))
    return _as_cone(out, getattr(a, "origin", None))


def cyl_iterated_boundary(eps: Sign, i: int, a: Cylinder, ctx: Polygraph) -> Cylinder:
    if not 0 <= i <= a.n:
        raise CylinderError(f"no {i}-boundary of a {a.n}-cylinder")
    while a.n > i:
        a = cyl_boundary(eps, a, ctx)
    return a


def _left(p: int, base: CellExpr, alpha: Cylinder, top: CellExpr) -> CellExpr:
    acc = base
    for k in range(p):
        acc = compose(k, alpha.cell("-", k), acc)
    return compose(p, top, acc)


def _right(p: int, base: CellExpr, beta: Cylinder, top: CellExpr) -> CellExpr:
    acc = base
    for k in range(p):
        acc = compose(k, acc, beta.cell("+", k))
    return compose(p, acc, top)


def cyl_compose(p: int, alpha: Cylinder, beta: Cylinder, ctx: Polygraph, check: bool = True) -> Cylinder:
    """``beta *p alpha : z *p x ~> t *p y`` for ``alpha : x ~> y`` and ``beta : z ~> t``."""
    n = alpha.n
    if beta.n != n:
        raise CylinderError(f"cannot compose a {n}-cylinder with a {beta.n}-cylinder")
    if not 0 <= p < n:
        raise CylinderError(f"cannot {p}-compose {n}-cylinders")
    if check:
        _check_composable(p, alpha, beta, ctx)
    x, y, z, t = alpha.top, alpha.bottom, beta.top, beta.bottom
    aux = list(alpha.aux[:p])
    aux.append((alpha.cell("-", p), beta.cell("+", p)))
    t_up = iterated_boundary("+", p + 1, t, ctx)
    s_xp = iterated_boundary("-", p + 1, x, ctx)
    for i in range(p + 1, n):
        pair = []
        for eps in ("-", "+"):
            if i == p + 1:
                tb = iterated_boundary(eps, p + 1, t, ctx)
                xb = iterated_boundary(eps, p + 1, x, ctx)
            else:
                tb, xb = t_up, s_xp
            left = _left(p, tb, alpha, alpha.cell(eps, i))
            right = _right(p, xb, beta, beta.cell(eps, i))
            pair.append(compose(p + 1, right, left))
        aux.append(tuple(pair))
    principal = compose(p + 1, _right(p, s_xp, beta, beta.principal),
                        _left(p, t_up, alpha, alpha.principal))
    return Cylinder(compose(p, x, z), compose(p, y, t), tuple(aux), principal)


def _check_composable(p, alpha, beta, ctx):
    a = cyl_iterated_boundary("+", p, alpha, ctx)
    b = cyl_iterated_boundary("-", p, beta, ctx)
    for ca, cb in zip([a.top, a.bottom] + a.cells(), [b.top, b.bottom] + b.cells()):
        if not steiner.cell_eq(ctx, ca, cb):
            raise CylinderError(f"cylinders do not match in dimension {p}: {ca} vs {cb}")


def cyl_unit(a: Cylinder) -> Cylinder:
    out = Cylinder(Unit(a.top), Unit(a.bottom), a.aux + ((a.principal, a.principal),),
                   Unit(a.principal))
    return _as_cone(out, getattr(a, "origin", None))


def trivial(x: CellExpr, ctx: Polygraph) -> Cylinder:
    aux = tuple((Unit(iterated_boundary("-", i, x, ctx)), Unit(iterated_boundary("+", i, x, ctx)))
                for i in range(x.dim))
    return Cylinder(x, x, aux, Unit(x))


def cone_compose(p: int, alpha: Cone, beta: Cone, ctx: Polygraph, check: bool = True) -> Cone:
    """``beta *p alpha : v ~> y *p x`` for cones ``alpha : v ~> x`` and ``beta : v ~> y``."""
    n = alpha.n
    if beta.n != n:
        raise CylinderError(f"cannot compose a {n}-cone with a {beta.n}-cone")
    if not 0 <= p < n:
        raise CylinderError(f"cannot {p}-compose {n}-cones")
    if alpha.origin != beta.origin:
        raise CylinderError("cones have different origins")
    if check:
        _check_composable(p, alpha, beta, ctx)
    x, y = alpha.base, beta.base
    aux = list(alpha.aux[:p])
    aux.append((alpha.cell("-", p), beta.cell("+", p)))
    for i in range(p + 1, n + 1):
        pair = []
        for eps in (("-", "+") if i < n else ("+",)):
            yb = iterated_boundary(eps if i == p + 1 else "+", p + 1, y, ctx)
            acc = _left(p, yb, alpha, alpha.cell(eps, i))
            pair.append(compose(p + 1, beta.cell(eps, i), acc))
        if i < n:
            aux.append(tuple(pair))
        else:
            principal = pair[0]
    return make_cone(alpha.origin, compose(p, x, y), aux, principal)


def degenerate_cone(x: CellExpr, origin: GenKey, ctx: Polygraph) -> Cone:
    n = x.dim
    v = Gen(origin)
    if iterated_boundary("-", 0, x, ctx) is not v:
        raise CylinderError(f"the 0-source of {x} is not the origin {origin}")
    if n == 0:
        return make_cone(origin, x, (), Unit(v))
    aux = []
    for i in range(n):
        s_i = iterated_boundary("-", i, x, ctx)
        t_i = iterated_boundary("-", i + 1, x, ctx) if i <= n - 2 else x
        aux.append((Unit(s_i), t_i))
    return make_cone(origin, x, aux, Unit(x))


def expansion_cone(x: CellExpr, E: ExpandedPolygraph) -> Cone:
    X = E.result
    aux = [(chevron(iterated_boundary("-", i, x, X), E), chevron(iterated_boundary("+", i, x, X), E))
           for i in range(x.dim)]
    return make_cone(E.origin, x, aux, chevron(x, E))


# ------------------------------------------------------------------ validation

def constraint(eps_cell: Sign, i: int, a: Cylinder, ctx: Polygraph) -> tuple[CellExpr, CellExpr]:
    """Required source and target of ``eps alpha_i`` (of the principal cell if ``i == n``)."""
    if i == a.n:
        xi, yi = a.top, a.bottom
    else:
        xi = iterated_boundary(eps_cell, i, a.top, ctx)
        yi = iterated_boundary(eps_cell, i, a.bottom, ctx)
    src = xi
    for k in range(i):
        src = compose(k, src, a.cell("+", k))
    tgt = yi
    for k in range(i):
        tgt = compose(k, a.cell("-", k), tgt)
    return src, tgt


def validate_cylinder(a: Cylinder, ctx: Polygraph) -> Report:
    rep = Report("cylinder")
    n = a.n
    if a.top.dim != n or a.bottom.dim != n:
        rep.fail(f"top and bottom must be {n}-cells")
        return rep
    for i in range(n + 1):
        for eps in (("-", "+") if i < n else ("-",)):
            c = a.cell(eps, i)
            label = f"{eps}alpha_{i}" if i < n else f"alpha_{n}"
            if c.dim != i + 1:
                rep.fail(f"{label} has dimension {c.dim}, expected {i + 1}")
                continue
            want_s, want_t = constraint(eps, i, a, ctx)
            try:
                if not steiner.cell_eq(ctx, boundary("-", c, ctx), want_s):
                    rep.fail(f"{label}: source is not {to_text(want_s)}")
                if not steiner.cell_eq(ctx, boundary("+", c, ctx), want_t):
                    rep.fail(f"{label}: target is not {to_text(want_t)}")
            except steiner.TableError as exc:
                rep.fail(f"{label}: {exc}")
    return rep


def validate_cone(a: Cone, ctx: Polygraph) -> Report:
    rep = Report("cone")
    if a.origin is None or a.top is not lift(Gen(a.origin), a.n):
        rep.fail("top is not the iterated unit on the origin")
        return rep
    rep.extend(validate_cylinder(a, ctx))
    return rep


def is_unit(e: CellExpr, ctx: Polygraph) -> bool:
    if e.dim == 0:
        return False
    return not steiner.eval(ctx, e).rows[-1][0]


def is_degenerate(a: Cone, ctx: Polygraph) -> bool:
    return is_unit(a.principal, ctx) and all(is_unit(s, ctx) for s, _ in a.aux)


def cyl_equal(a: Cylinder, b: Cylinder, ctx: Polygraph) -> bool:
    if a.n != b.n:
        return False
    return all(steiner.cell_eq(ctx, c, d) for c, d in
               zip([a.top, a.bottom] + a.cells(), [b.top, b.bottom] + b.cells()))


# ------------------------------------------------------- oplax transformations

def composable_pairs(S: Polygraph, max_dim: int) -> Iterable[tuple[int, CellExpr, CellExpr]]:
    """Triples ``(p, x, y)`` of generators with ``t x_p = s y_p``."""
    gens = [Gen(k) for k in S.gens() if k.dim <= max_dim and k.dim >= 1]
    for x, y in itertools.product(gens, repeat=2):
        for p in range(min(x.dim, y.dim)):
            if steiner.cell_eq(S, iterated_boundary("+", p, x, S), iterated_boundary("-", p, y, S)):
                yield p, x, y


def oplax_check(theta: Callable[[CellExpr], CellExpr], ctx: Polygraph, origin: GenKey,
                pairs, units, check_boundaries: bool = True) -> Report:
    """Axioms of an oplax transformation from the constant functor on ``origin`` to the identity.

    ``pairs`` holds ``(p, x, y)`` with ``t x_p = s y_p``; ``units`` holds cells ``u``.
    """
    rep = Report("oplax")
    v = Gen(origin)

    def bounds(x: CellExpr):
        n = x.dim
        if n == 0:
            return v, x
        src = theta(iterated_boundary("+", n - 1, x, ctx))
        tgt = x
        for k in range(n):
            tgt = compose(k, theta(iterated_boundary("-", k, x, ctx)), tgt)
        return src, tgt

    def same(a, b, label):
        try:
            ok = steiner.cell_eq(ctx, a, b)
        except steiner.TableError as exc:
            rep.fail(f"{label}: {exc}")
            return True
        if not ok:
            rep.fail(label)
        return ok

    checked = set()

    def check_bd(x):
        if not check_boundaries or x in checked:
            return
        checked.add(x)
        tx = theta(x)
        if tx.dim != x.dim + 1:
            rep.fail(f"theta({to_text(x)}) has dimension {tx.dim}")
            return
        s, t = bounds(x)
        same(boundary("-", tx, ctx), s, f"theta({to_text(x)}) has the wrong source")
        same(boundary("+", tx, ctx), t, f"theta({to_text(x)}) has the wrong target")

    for p, x, y in pairs:
        yx = compose(p, x, y)
        check_bd(x)
        check_bd(y)
        check_bd(yx)
        rhs = iterated_boundary("+", p + 1, y, ctx)
        for k in range(p):
            rhs = compose(k, theta(iterated_boundary("-", k, x, ctx)), rhs)
        rhs = compose(p + 1, theta(y), compose(p, theta(x), rhs))
        same(theta(yx), rhs, f"composition axiom fails for {to_text(yx)}")
    for u in units:
        check_bd(u)
        check_bd(Unit(u))
        same(theta(Unit(u)), Unit(theta(u)), f"unit axiom fails for {to_text(u)}")
    return rep


def expansion_axioms(E: ExpandedPolygraph, max_dim: int = 3) -> Report:
    """The four expansion axioms for the chevron, plus the cone constraints."""
    X = E.result
    rep = Report("expansion-axioms")
    theta = lambda e: chevron(e, E)
    gens = [Gen(k) for k in X.gens()]
    pairs = list(composable_pairs(X, max_dim))
    rep.extend(oplax_check(theta, X, E.origin, pairs, gens))
    v = Gen(E.origin)
    if chevron(v, E) is not Unit(v):
        rep.fail("xi(v) is not 1_v")
    for g in gens:
        xg = chevron(g, E)
        if not steiner.cell_eq(X, chevron(xg, E), Unit(xg)):
            rep.fail(f"xi(xi({g})) is not a unit")
    for g in gens:
        cone = expansion_cone(g, E)
        rep.extend(validate_cone(cone, X), f"cone of {g}")
    for x in [v] + [chevron(g, E) for g in gens]:
        if not is_degenerate(expansion_cone(x, E), X):
            rep.fail(f"cone of {to_text(x)} is not degenerate")
    rep.info["pairs"] = len(pairs)
    return rep
