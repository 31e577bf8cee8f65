"""Free expansion of a polygraph, the chevron operator and the monad structure.

The free expansion of S adds an origin 0-generator ``v`` and, for every
generator ``a`` of S, a generator ``r_a`` one dimension up.  The chevron
``xi`` extends ``a -> r_a`` to every cell, using the functoriality and
degeneracy rules of an expanding homotopy::

    xi(a)        = r_a                 for a in S
    xi(v)        = 1_v
    xi(r_a)      = 1_{r_a}
    xi(1_u)      = 1_{xi(u)}
    xi(y *p x)   = t_{p+1}(y) *0 xi(s_0 x) *1 ... *(p-1) xi(s_{p-1} x) *p xi(x) *(p+1) xi(y)

and the new generators have boundaries ``r_a : xi(t_{m-1} a) -> a *0 xi(s_0 a)
*1 ... *(m-1) xi(s_{m-1} a)`` for ``a`` of dimension ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .cells import (CellError, CellExpr, Comp, Gen, GenKey, Unit, UnknownGeneratorError, boundary,
                    compose, iterated_boundary, key)
from .linear import Chain
from .polygraph import Polygraph
from .report import Report


# --------------------------------------------------------------- naming schemes

class OrientalNaming:
    """Simplicial relabelling: shift by one, origin <0>, r_a = <0> + shift(a)."""

    name = "oriental"

    def __init__(self, S: Polygraph):
        pass

    def eta(self, a: GenKey) -> GenKey:
        return key(*(i + 1 for i in a.label))

    def origin(self) -> GenKey:
        return key(0)

    def r(self, a: GenKey) -> GenKey:
        return key(0, *(i + 1 for i in a.label))


class GenericNaming:
    """Keeps the names of S, adds ``v`` and ``r.<name>`` (primed on a clash)."""

    name = "generic"

    def __init__(self, S: Polygraph):
        self.used = {k.label for k in S.gens() if isinstance(k.label, str)}
        self._origin = self._fresh("v")
        self._r: dict[GenKey, str] = {}

    def _fresh(self, base: str) -> str:
        name = base
        while name in self.used:
            name += "'"
        self.used.add(name)
        return name

    def eta(self, a: GenKey) -> GenKey:
        return a

    def origin(self) -> GenKey:
        return GenKey(self._origin, 0)

    def r(self, a: GenKey) -> GenKey:
        if a not in self._r:
            label = a.label if isinstance(a.label, str) else ".".join(map(str, a.label))
            self._r[a] = self._fresh("r." + label)
        return GenKey(self._r[a], a.dim + 1)


SCHEMES = {"oriental": OrientalNaming, "generic": GenericNaming}


def default_scheme(S: Polygraph) -> str:
    return "oriental" if all(k.is_simplicial for k in S.gens()) else "generic"


# -------------------------------------------------------------------- maps

class GenMap:
    """Omega-functor between free omega-categories, given on generators."""

    def __init__(self, source: Polygraph, target: Polygraph, images: Mapping[GenKey, CellExpr],
                 name: str = "f"):
        self.source = source
        self.target = target
        self.images = dict(images)
        self.name = name
        self._memo: dict = {}
        for k in source.gens():
            img = self.images.get(k)
            if img is None:
                raise CellError(f"{name} has no image for {k}")
            if img.dim != k.dim:
                raise CellError(f"{name} sends the {k.dim}-generator {k} to a {img.dim}-cell")

    def __call__(self, e: CellExpr) -> CellExpr:
        return self.apply(e)

    def apply(self, e: CellExpr) -> CellExpr:
        hit = self._memo.get(e)
        if hit is not None:
            return hit
        match e:
            case Gen(k):
                try:
                    out = self.images[k]
                except KeyError:
                    raise UnknownGeneratorError(f"{k} is not a generator of the source of {self.name}") from None
            case Unit(u):
                out = Unit(self.apply(u))
            case Comp(p, x, y):
                out = Comp(p, self.apply(x), self.apply(y))
        self._memo[e] = out
        return out

    def then(self, g: "GenMap") -> "GenMap":
        """``g o self``."""
        return GenMap(self.source, g.target, {k: g.apply(v) for k, v in self.images.items()},
                      name=f"{g.name}.{self.name}")

    @classmethod
    def identity(cls, S: Polygraph) -> "GenMap":
        return cls(S, S, {k: Gen(k) for k in S.gens()}, name="id")

    def linear_image(self, k: GenKey) -> Chain:
        return self.target.linearize(self.images[k])

    def __repr__(self):
        return f"GenMap({self.name}: {self.source!r} -> {self.target!r})"


def apply(f: GenMap, e: CellExpr) -> CellExpr:
    return f.apply(e)


def maps_equal(f: GenMap, g: GenMap, name: str = "maps-equal") -> Report:
    """Generator-wise equality of two maps, decided on tables of the target."""
    from . import steiner
    rep = Report(name)
    for k in f.source.gens():
        a, b = f.images[k], g.images.get(k)
        if b is None:
            rep.fail(f"{k}: missing in {g.name}")
        elif not steiner.cell_eq(f.target, a, b):
            rep.fail(f"{k}: {f.name} gives {a}, {g.name} gives {b}")
    return rep


# -------------------------------------------------------------- expansion

@dataclass(eq=False)
class ExpandedPolygraph:
    base: Polygraph
    result: Polygraph
    origin: GenKey
    r: dict[GenKey, GenKey]
    eta_keys: dict[GenKey, GenKey]
    scheme: str

    def __post_init__(self):
        self._kind: dict[GenKey, tuple] = {self.origin: ("origin",)}
        for a, k in self.eta_keys.items():
            self._kind[k] = ("eta", a)
        for a, k in self.r.items():
            self._kind[k] = ("r", a)
        self.eta = GenMap(self.base, self.result,
                          {a: Gen(k) for a, k in self.eta_keys.items()}, name="eta")

    def kind(self, k: GenKey) -> tuple:
        try:
            return self._kind[k]
        except KeyError:
            raise UnknownGeneratorError(f"{k} is not a generator of the expansion") from None

    def chevron(self, e: CellExpr) -> CellExpr:
        return chevron(e, self)

    def r_source(self, a: GenKey) -> CellExpr:
        return self.result.source(self.r[a])

    def r_target(self, a: GenKey) -> CellExpr:
        return self.result.target(self.r[a])


def _r_boundaries(a: GenKey, E: ExpandedPolygraph) -> tuple[CellExpr, CellExpr]:
    X = E.result
    ea = Gen(E.eta_keys[a])
    m = a.dim
    if m == 0:
        return Gen(E.origin), ea
    src = chevron(iterated_boundary("+", m - 1, ea, X), E)
    tgt = ea
    for k in range(m):
        tgt = compose(k, chevron(iterated_boundary("-", k, ea, X), E), tgt)
    return src, tgt


def expand(S: Polygraph, scheme: str | None = None) -> ExpandedPolygraph:
    """Free expansion of S, built one dimension at a time."""
    scheme = scheme or default_scheme(S)
    memo = S.memo("expand")
    if scheme in memo:
        return memo[scheme]
    if scheme == "oriental" and not all(k.is_simplicial for k in S.gens()):
        raise CellError("the oriental naming needs simplicial keys")
    naming = SCHEMES[scheme](S)
    X = Polygraph()
    E = ExpandedPolygraph(S, X, naming.origin(),
                          {a: naming.r(a) for a in S.gens()},
                          {a: naming.eta(a) for a in S.gens()}, scheme)
    for m in range(S.dimension + 2):
        if m == 0:
            X._add(E.origin)
        else:
            for a in S.gens(m - 1):
                X._add(E.r[a], *_r_boundaries(a, E))
        for a in S.gens(m):
            if m == 0:
                X._add(E.eta_keys[a])
            else:
                X._add(E.eta_keys[a], E.eta.apply(S.source(a)), E.eta.apply(S.target(a)))
    memo[scheme] = E
    return E


def chevron(e: CellExpr, E: ExpandedPolygraph) -> CellExpr:
    memo = E.result.memo("chevron")
    hit = memo.get(e)
    if hit is not None:
        return hit
    match e:
        case Gen(k):
            kind = E.kind(k)
            if kind[0] == "eta":
                out = Gen(E.r[kind[1]])
            else:
                out = Unit(e)
        case Unit(u):
            out = Unit(chevron(u, E))
        case Comp(p, x, y):
            X = E.result
            acc = iterated_boundary("+", p + 1, y, X)
            for k in range(p):
                acc = compose(k, chevron(iterated_boundary("-", k, x, X), E), acc)
            acc = compose(p, chevron(x, E), acc)
            out = compose(p + 1, chevron(y, E), acc)
    memo[e] = out
    return out


# ------------------------------------------------------------- monad structure

def eta(S: Polygraph) -> GenMap:
    return expand(S).eta


def mu(S: Polygraph) -> GenMap:
    """Multiplication from the double expansion of S to the expansion of S."""
    E1 = expand(S)
    E2 = expand(E1.result)
    images = {}
    for g in E1.result.gens():
        images[E2.eta_keys[g]] = Gen(g)
        images[E2.r[g]] = chevron(Gen(g), E1)
    images[E2.origin] = Gen(E1.origin)
    return GenMap(E2.result, E1.result, images, name="mu")


def T_on_map(f: GenMap) -> GenMap:
    """Action of the expansion functor on a map between polygraphs."""
    ES, ED = expand(f.source), expand(f.target)
    images = {ES.origin: Gen(ED.origin)}
    for a in f.source.gens():
        img = ED.eta.apply(f.images[a])
        images[ES.eta_keys[a]] = img
        images[ES.r[a]] = chevron(img, ED)
    return GenMap(ES.result, ED.result, images, name=f"T{f.name}")


def iterate_T(f: GenMap, times: int) -> GenMap:
    for _ in range(times):
        f = T_on_map(f)
    return f


def monad_unit_laws(S: Polygraph) -> Report:
    """``mu o eta_{XS} = id`` and ``mu o T(eta_S) = id`` on the expansion of S."""
    rep = Report("monad-unit")
    XS = expand(S).result
    ident = GenMap.identity(XS)
    m = mu(S)
    rep.extend(maps_equal(eta(XS).then(m), ident), "mu.eta")
    rep.extend(maps_equal(T_on_map(eta(S)).then(m), ident), "mu.T(eta)")
    return rep


def monad_associativity(S: Polygraph) -> Report:
    """``mu o mu_{XS} = mu o T(mu_S)`` on the triple expansion of S."""
    rep = Report("monad-assoc")
    XS = expand(S).result
    m = mu(S)
    rep.extend(maps_equal(mu(XS).then(m), T_on_map(m).then(m)))
    return rep


def chevron_contract_check(E: ExpandedPolygraph, cells) -> Report:
    """Source and target of chevrons against the cone constraints, on tables."""
    from . import steiner
    rep = Report("chevron-contract")
    X = E.result
    for e in cells:
        n = e.dim
        xe = chevron(e, E)
        if n == 0:
            want_s, want_t = Gen(E.origin), e
        else:
            want_s = chevron(iterated_boundary("+", n - 1, e, X), E)
            want_t = e
            for k in range(n):
                want_t = compose(k, chevron(iterated_boundary("-", k, e, X), E), want_t)
        try:
            ok_s = steiner.cell_eq(X, boundary("-", xe, X), want_s)
            ok_t = steiner.cell_eq(X, boundary("+", xe, X), want_t)
        except steiner.TableError as exc:
            rep.fail(f"{e}: {exc}")
            continue
        if not ok_s:
            rep.fail(f"{e}: source of its chevron is wrong")
        if not ok_t:
            rep.fail(f"{e}: target of its chevron is wrong")
    return rep


def chain_homotopy(E: ExpandedPolygraph) -> tuple[Callable[[Chain], Chain], Report]:
    """Linearized chevron ``h`` and a check of ``dh + hd = id - u e``.

    ``u`` sends 1 to the origin, so the right hand side differs from the
    identity only in degree 0.
    """
    X = E.result
    K = X.lambda_()

    def h(c: Chain) -> Chain:
        out = Chain.zero(c.dim + 1)
        for k, coeff in c.items():
            out = out + coeff * X.linearize(chevron(Gen(k), E))
        return out

    rep = Report("chain-homotopy")
    origin = Chain.basis(E.origin)
    for k in X.gens():
        b = Chain.basis(k)
        lhs = K.d(h(b))
        if k.dim > 0:
            lhs = lhs + h(K.d(b))
            rhs = b
        else:
            rhs = b - origin
        if lhs != rhs:
            rep.fail(f"{k}: dh + hd = {lhs}, expected {rhs}")
    return h, rep
