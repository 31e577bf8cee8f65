"""Augmented directed complexes and the table calculus.

A cell of the free omega-category on a suitable polygraph is represented by
its table: for each dimension ``i`` a pair of nonnegative chains
``(neg_i, pos_i)``.  Tables compose by entrywise sums, and for a strong
Steiner complex whose generators satisfy the atomicity condition the table of
a cell is a faithful canonical form.  This is how equality of cells is decided.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Mapping

from .cells import CellError, CellExpr, Comp, Gen, GenKey, Sign, Unit, iterated_boundary, key
from .linear import AugDirComplex, Chain, chain_sum
from .polygraph import Polygraph, key_to_json
from .report import Report


class TableError(ValueError):
    pass


class NotComposable(TableError):
    def __init__(self, j: int, row: int, message: str):
        super().__init__(f"{message} (composition along {j}, mismatch at row {row})")
        self.j = j
        self.row = row


class NotSteiner(TableError):
    pass


# ------------------------------------------------------------------ complexes

def validate_adc(K: AugDirComplex) -> Report:
    rep = Report("adc")
    for b in K.basis_elements():
        if b.dim == 0:
            continue
        db = K.diff.get(b)
        if db is None:
            rep.fail(f"{b}: no differential")
            continue
        if db.dim != b.dim - 1:
            rep.fail(f"{b}: differential has degree {db.dim}")
            continue
        for k, _ in db.items():
            if not K.contains(k):
                rep.fail(f"{b}: differential mentions {k} outside the basis")
        if b.dim == 1:
            if db.augmentation() != 0:
                rep.fail(f"{b}: ed = {db.augmentation()}")
        elif K.d(db):
            rep.fail(f"{b}: dd = {K.d(db)}")
    return rep


def pos_neg(z: Chain) -> tuple[Chain, Chain]:
    return z.positive(), z.negative()


def d_eps(eps: Sign, x: Chain, K: AugDirComplex) -> Chain:
    if x.dim == 0:
        raise TableError("no differential out of degree 0")
    dx = K.d(x)
    return dx.negative() if eps == "-" else dx.positive()


def d_eps_i(eps: Sign, i: int, x: Chain, K: AugDirComplex) -> Chain:
    if not 0 <= i < x.dim:
        raise TableError(f"no {i}-boundary for a chain of degree {x.dim}")
    while x.dim > i:
        x = d_eps(eps, x, K)
    return x


# --------------------------------------------------------------------- tables

@dataclass(frozen=True)
class CellTable:
    rows: tuple[tuple[Chain, Chain], ...]

    @property
    def n(self) -> int:
        return len(self.rows) - 1

    def __str__(self):
        return self.text()

    def text(self, unicode: bool = False) -> str:
        cells = [(r[0].text(unicode), r[1].text(unicode)) for r in self.rows]
        width = max(len(a) for a, _ in cells)
        return "\n".join(f"{i}: {a.ljust(width)} | {b}" for i, (a, b) in enumerate(cells))

    def to_json(self) -> list:
        return [[neg.to_json(key_to_json), pos.to_json(key_to_json)] for neg, pos in self.rows]


def validate_table(T: CellTable, K: AugDirComplex) -> Report:
    rep = Report("table")
    n = T.n
    for i, (neg, pos) in enumerate(T.rows):
        for side, ch in (("-", neg), ("+", pos)):
            if ch.dim != i:
                rep.fail(f"row {i}{side} has degree {ch.dim}")
                return rep
            if not all(c > 0 for _, c in ch.items()):
                rep.fail(f"row {i}{side} is not positive: {ch}")
            if i > 0:
                prev_neg, prev_pos = T.rows[i - 1]
                if K.d(ch) != prev_pos - prev_neg:
                    rep.fail(f"row {i}{side}: d = {K.d(ch)} but {prev_pos - prev_neg} expected")
            elif ch.augmentation() != 1:
                rep.fail(f"row 0{side} has augmentation {ch.augmentation()}")
    if T.rows[n][0] != T.rows[n][1]:
        rep.fail(f"top row is not balanced: {T.rows[n][0]} vs {T.rows[n][1]}")
    return rep


def table_boundary(eps: Sign, T: CellTable) -> CellTable:
    n = T.n
    if n == 0:
        raise TableError("a 0-table has no boundary")
    neg, pos = T.rows[n - 1]
    c = neg if eps == "-" else pos
    return CellTable(T.rows[:n - 1] + ((c, c),))


def table_source(T: CellTable) -> CellTable:
    return table_boundary("-", T)


def table_target(T: CellTable) -> CellTable:
    return table_boundary("+", T)


def table_iterated(eps: Sign, i: int, T: CellTable) -> CellTable:
    if not 0 <= i <= T.n:
        raise TableError(f"no {i}-boundary of a {T.n}-table")
    rows = T.rows[:i + 1]
    c = rows[i][0] if eps == "-" else rows[i][1]
    if i == T.n:
        return T
    return CellTable(rows[:i] + ((c, c),))


def table_unit(T: CellTable) -> CellTable:
    z = Chain.zero(T.n + 1)
    return CellTable(T.rows + ((z, z),))


def table_compose(j: int, x: CellTable, y: CellTable) -> CellTable:
    """Table of ``y *j x``."""
    if x.n != y.n:
        raise TableError(f"tables of dimensions {x.n} and {y.n} do not compose")
    if not 0 <= j < x.n:
        raise TableError(f"cannot {j}-compose {x.n}-tables")
    for i in range(j):
        if x.rows[i] != y.rows[i]:
            raise NotComposable(j, i, "lower boundaries differ")
    if x.rows[j][1] != y.rows[j][0]:
        raise NotComposable(j, j, f"target {x.rows[j][1]} is not source {y.rows[j][0]}")
    rows = list(x.rows[:j])
    rows.append((x.rows[j][0], y.rows[j][1]))
    for i in range(j + 1, x.n + 1):
        rows.append((x.rows[i][0] + y.rows[i][0], x.rows[i][1] + y.rows[i][1]))
    return CellTable(tuple(rows))


# ---------------------------------------------------------------------- atoms

def atom(b: GenKey, K: AugDirComplex) -> CellTable:
    if not K.contains(b):
        raise TableError(f"{b} is not a basis element")
    x = Chain.basis(b)
    rows = [(x, x)]
    neg = pos = x
    for _ in range(b.dim):
        neg = d_eps("-", neg, K)
        pos = d_eps("+", pos, K)
        rows.append((neg, pos))
    rows.reverse()
    for eps, c in zip("-+", rows[0]):
        if c.augmentation() != 1:
            raise NotSteiner(f"atom of {b} is not unital: e(d_0{eps}) = {c.augmentation()}")
    return CellTable(tuple(rows))


def unital_check(K: AugDirComplex) -> Report:
    rep = Report("unital")
    for b in K.basis_elements():
        try:
            atom(b, K)
        except NotSteiner as exc:
            rep.fail(str(exc))
    return rep


def strong_loop_free_check(K: AugDirComplex) -> Report:
    rep = Report("strongly-loop-free")
    graph: dict[GenKey, set[GenKey]] = {b: set() for b in K.basis_elements()}
    for b in K.basis_elements():
        if b.dim == 0:
            continue
        neg, pos = pos_neg(K.diff[b])[::-1]
        # edges x -> y: y in supp d+(x), and x in supp d-(y); stored as predecessors
        for y in pos.support():
            graph[y].add(b)
        for x in neg.support():
            graph[b].add(x)
    try:
        order = list(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        cycle = exc.args[1]
        rep.fail("cycle " + " -> ".join(str(k) for k in reversed(cycle)))
    else:
        rep.info["order_length"] = len(order)
    return rep


def strong_steiner_check(K: AugDirComplex) -> Report:
    rep = Report("strong-steiner")
    rep.extend(validate_adc(K))
    rep.extend(unital_check(K))
    rep.extend(strong_loop_free_check(K))
    return rep


def atomic_check(S: Polygraph) -> Report:
    rep = Report("atomic")
    for x in S.gens():
        g = Gen(x)
        for i in range(x.dim):
            s = S.linearize(iterated_boundary("-", i, g, S)).support()
            t = S.linearize(iterated_boundary("+", i, g, S)).support()
            common = s & t
            if common:
                names = ", ".join(str(k) for k in sorted(common, key=lambda k: k.sort_key))
                rep.fail(f"{x}: {i}-source and {i}-target share {names}")
    return rep


def certificate(S: Polygraph) -> Report:
    """Conditions under which tables decide equality of cells of S."""
    memo = S.memo("steiner")
    cert = memo.get("certificate")
    if cert is None:
        cert = Report("certificate")
        cert.extend(strong_steiner_check(S.lambda_()))
        cert.extend(atomic_check(S))
        memo["certificate"] = cert
    return cert


# ----------------------------------------------------------------- evaluation

def eval(S: Polygraph, e: CellExpr) -> CellTable:
    """Table of a cell of the free omega-category on S."""
    cert = certificate(S)
    if not cert.passed:
        raise NotSteiner("tables do not decide equality here: " + "; ".join(cert.failures[:3]))
    return _eval(S, e, S.memo("eval"), S.lambda_())


def _eval(S, e, memo, K):
    hit = memo.get(e)
    if hit is not None:
        return hit
    match e:
        case Gen(k):
            if k not in S:
                raise CellError(f"unknown generator {k}")
            out = atom(k, K)
        case Unit(u):
            out = table_unit(_eval(S, u, memo, K))
        case Comp(p, x, y):
            out = table_compose(p, _eval(S, x, memo, K), _eval(S, y, memo, K))
    memo[e] = out
    return out


def cell_eq(S: Polygraph, e1: CellExpr, e2: CellExpr) -> bool:
    if e1.dim != e2.dim:
        return False
    if e1 is e2:
        eval(S, e1)
        return True
    return eval(S, e1) == eval(S, e2)


def is_composable(S: Polygraph, e: CellExpr) -> bool:
    try:
        eval(S, e)
    except NotComposable:
        return False
    return True


# ------------------------------------------------------------------- simplex

def faces(k: GenKey) -> list[GenKey]:
    t = k.label
    return [key(*(t[:i] + t[i + 1:])) for i in range(len(t))]


def simplex_keys(n: int, m: int) -> list[GenKey]:
    return [key(*c) for c in itertools.combinations(range(n + 1), m + 1)]


def simplex_adc(n: int) -> AugDirComplex:
    if n < -1:
        raise ValueError("n must be at least -1")
    bases = {m: simplex_keys(n, m) for m in range(n + 1)}
    diff = {}
    for m in range(1, n + 1):
        for k in bases[m]:
            diff[k] = Chain(m - 1, {f: (-1) ** i for i, f in enumerate(faces(k))})
    return AugDirComplex(bases, diff)


def adc_to_json(K: AugDirComplex) -> dict:
    return {
        "basis": [[key_to_json(k) for k in K.bases.get(m, ())] for m in range(K.dimension + 1)],
        "d": {key_to_json(k): K.diff[k].to_json(key_to_json)
              for k in K.basis_elements() if k.dim >= 1},
    }


def lin_boundary_check(S: Polygraph) -> Report:
    """Linearized source and target against odd and even face sums."""
    rep = Report("lin-boundary")
    for x in S.gens():
        if x.dim == 0:
            continue
        if not x.is_simplicial:
            rep.fail(f"{x} is not a simplicial key")
            continue
        fs = faces(x)
        odd = chain_sum(x.dim - 1, (Chain.basis(f) for f in fs[1::2]))
        even = chain_sum(x.dim - 1, (Chain.basis(f) for f in fs[0::2]))
        s = S.linearize(S.source(x))
        t = S.linearize(S.target(x))
        if s != odd:
            rep.fail(f"{x}: [s] = {s}, odd faces give {odd}")
        if t != even:
            rep.fail(f"{x}: [t] = {t}, even faces give {even}")
    return rep


@dataclass
class Verdict:
    certified: bool
    reason: str | None
    isomorphism: dict | None
    reports: list[Report]

    def __bool__(self):
        return self.certified


def compare(S: Polygraph, K_ref: AugDirComplex, keymap: Mapping[GenKey, GenKey] | None = None) -> Verdict:
    """Certify that the free omega-category on S is the one presented by K_ref.

    ``keymap`` sends generators of S to basis elements of K_ref; the identity
    is used when omitted.
    """
    gens = S.gens()
    if keymap is None:
        keymap = {k: k for k in gens}
    reports = []

    def fail(reason):
        return Verdict(False, reason, None, reports)

    basis = set(K_ref.basis_elements())
    images = [keymap.get(k) for k in gens]
    if None in images or len(keymap) != len(gens):
        return fail("keymap is not defined exactly on the generators")
    if len(set(images)) != len(images) or set(images) != basis:
        return fail("keymap is not a bijection onto the basis")
    for k, b in zip(gens, images):
        if k.dim != b.dim:
            return fail(f"keymap changes the dimension of {k}")

    ss = strong_steiner_check(K_ref)
    reports.append(ss)
    if not ss.passed:
        return fail("reference complex is not strong Steiner: " + ss.failures[0])
    at = atomic_check(S)
    reports.append(at)
    if not at.passed:
        return fail("polygraph is not atomic: " + at.failures[0])

    def transport(ch: Chain) -> Chain:
        return Chain(ch.dim, {keymap[k]: c for k, c in ch.items()})

    bd = Report("boundaries")
    reports.append(bd)
    for k in gens:
        if k.dim == 0:
            continue
        neg, pos = pos_neg(K_ref.diff[keymap[k]])[::-1]
        s = transport(S.linearize(S.source(k)))
        t = transport(S.linearize(S.target(k)))
        if s != neg:
            bd.fail(f"{k}: [s] = {s} but d- = {neg}")
        if t != pos:
            bd.fail(f"{k}: [t] = {t} but d+ = {pos}")
        if bd.failures:
            return fail("boundary mismatch: " + bd.failures[0])
    return Verdict(True, None, dict(zip(gens, images)), reports)
