"""Orientals as iterated free expansions, and their cosimplicial structure.

``oriental(n)`` is the free expansion applied ``n + 1`` times to the empty
polygraph.  With the simplicial naming of ``expansion`` its generators are the
strictly increasing tuples in ``[0, n]``.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import lru_cache

from .cells import CellError, CellExpr, Gen, Unit, key
from .expansion import ExpandedPolygraph, GenMap, T_on_map, chevron, expand, maps_equal, mu
from .linear import Chain
from .polygraph import Polygraph
from .report import Report

_orientals: list[Polygraph] = [Polygraph()]  # index n + 1 holds O_n
_lock = threading.Lock()


def oriental(n: int) -> Polygraph:
    if n < -1:
        raise ValueError("orientals are indexed from -1")
    with _lock:
        while len(_orientals) <= n + 1:
            _orientals.append(expand(_orientals[-1], "oriental").result)
        return _orientals[n + 1]


def oriental_expansion(n: int) -> ExpandedPolygraph:
    """The expansion of O_{n-1}, whose result is O_n."""
    if n < 0:
        raise ValueError("O_n is an expansion only for n >= 0")
    oriental(n)
    return expand(oriental(n - 1), "oriental")


def shift(k) -> tuple:
    return tuple(i + 1 for i in k)


def eta_power(times: int, n: int) -> GenMap | None:
    """Iterated shift O_n -> O_{n+times}; None for the identity."""
    f = None
    for m in range(n, n + times):
        step = oriental_expansion(m + 1).eta
        f = step if f is None else f.then(step)
    return f


def _check_seq(seq, n):
    seq = tuple(seq)
    if not seq:
        raise CellError("empty simplicial sequence")
    if any(a > b for a, b in zip(seq, seq[1:])):
        raise CellError(f"sequence {seq} is not nondecreasing")
    if seq[0] < 0 or seq[-1] > n:
        raise CellError(f"sequence {seq} leaves [0, {n}]")
    return seq


@lru_cache(maxsize=None)
def _simp(seq: tuple, n: int) -> CellExpr:
    if len(seq) == 1:
        return Gen(key(*seq))
    i0 = seq[0]
    m = n - i0
    inner = _simp(tuple(i - i0 for i in seq[1:]), m)
    out = chevron(inner, oriental_expansion(m))
    if i0:
        out = eta_power(i0, m).apply(out)
    return out


def simp(seq, n: int, method: str = "recursion") -> CellExpr:
    """Cell denoted by a nondecreasing sequence in O_n.

    ``recursion`` uses ``<i0, i1, ...> = eta^{i0} xi <i1 - i0, ...>`` and is
    the reference.  ``dedup`` wraps the strictly increasing part in one unit
    per repeated entry.
    """
    seq = _check_seq(seq, n)
    if method == "recursion":
        return _simp(seq, n)
    if method == "dedup":
        core = tuple(i for j, i in enumerate(seq) if j == 0 or seq[j - 1] != i)
        e: CellExpr = Gen(key(*core))
        for _ in range(len(seq) - len(core)):
            e = Unit(e)
        return e
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class MonotoneMap:
    """Order-preserving map [n] -> [m] given by its list of values."""

    n: int
    m: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.n + 1:
            raise ValueError(f"a map out of [{self.n}] needs {self.n + 1} values")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"{self.values} is not order-preserving")
        if self.values and (self.values[0] < 0 or self.values[-1] > self.m):
            raise ValueError(f"{self.values} leaves [0, {self.m}]")

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "MonotoneMap":
        values = tuple(int(v) for v in text.replace(" ", "").split(","))
        return cls(len(values) - 1, max(values) if m is None else m, values)

    def __call__(self, i: int) -> int:
        return self.values[i]

    def then(self, other: "MonotoneMap") -> "MonotoneMap":
        """``other o self``."""
        if other.n != self.m:
            raise ValueError("maps do not compose")
        return MonotoneMap(self.n, other.m, tuple(other(i) for i in self.values))

    @classmethod
    def identity(cls, n: int) -> "MonotoneMap":
        return cls(n, n, tuple(range(n + 1)))

    @classmethod
    def face(cls, i: int, n: int) -> "MonotoneMap":
        """Injection [n-1] -> [n] missing i."""
        if not 0 <= i <= n:
            raise ValueError(f"face index {i} out of range for n = {n}")
        return cls(n - 1, n, tuple(j if j < i else j + 1 for j in range(n)))

    @classmethod
    def degeneracy(cls, i: int, n: int) -> "MonotoneMap":
        """Surjection [n+1] -> [n] hitting i twice."""
        if not 0 <= i <= n:
            raise ValueError(f"degeneracy index {i} out of range for n = {n}")
        return cls(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 2)))


def cosimplicial_map(phi: MonotoneMap) -> GenMap:
    return _cosimplicial_map(phi)


@lru_cache(maxsize=None)
def _cosimplicial_map(phi: MonotoneMap) -> GenMap:
    src, tgt = oriental(phi.n), oriental(phi.m)
    images = {k: simp(tuple(phi(i) for i in k.label), phi.m) for k in src.gens()}
    return GenMap(src, tgt, images, name=f"O({','.join(map(str, phi.values))})")


def face(i: int, n: int) -> GenMap:
    """Image of the coface map [n-1] -> [n] missing i."""
    return cosimplicial_map(MonotoneMap.face(i, n))


def degeneracy(i: int, n: int) -> GenMap:
    """Image of the codegeneracy map [n+1] -> [n] repeating i."""
    return cosimplicial_map(MonotoneMap.degeneracy(i, n))


def face_monad(i: int, n: int) -> GenMap:
    """The same coface, computed as ``T^i`` applied to the unit at O_{n-i-1}."""
    if not 0 <= i <= n:
        raise ValueError(f"face index {i} out of range for n = {n}")
    f = oriental_expansion(n - i).eta
    for _ in range(i):
        f = T_on_map(f)
    return f


def degeneracy_monad(i: int, n: int) -> GenMap:
    """The same codegeneracy, computed as ``T^i`` applied to the multiplication."""
    if not 0 <= i <= n:
        raise ValueError(f"degeneracy index {i} out of range for n = {n}")
    f = mu(oriental(n - i - 1))
    for _ in range(i):
        f = T_on_map(f)
    return f


def verify_simplicial_identities(n_max: int) -> Report:
    """Cosimplicial identities between the maps O(delta) and O(sigma), on tables.

    Every identity is checked whenever all orientals involved have dimension
    at most ``n_max``.
    """
    rep = Report("simplicial-identities")
    count = 0

    def check(lhs: GenMap, rhs: GenMap, label: str):
        nonlocal count
        count += 1
        rep.extend(maps_equal(lhs, rhs), label)

    for n in range(1, n_max):
        # faces [n-1] -> [n] -> [n+1]
        for j in range(n + 2):
            for i in range(j):
                check(face(i, n).then(face(j, n + 1)), face(j - 1, n).then(face(i, n + 1)),
                      f"d{j} d{i} = d{i} d{j - 1} (n={n})")
    for n in range(0, n_max - 1):
        # degeneracies [n+2] -> [n+1] -> [n]
        for j in range(n + 1):
            for i in range(j + 1):
                check(degeneracy(j + 1, n + 1).then(degeneracy(i, n)),
                      degeneracy(i, n + 1).then(degeneracy(j, n)),
                      f"s{j} s{i} = s{i} s{j + 1} (n={n})")
    for n in range(0, n_max):
        # s_j d_i : [n] -> [n+1] -> [n]
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = face(i, n + 1).then(degeneracy(j, n))
                if i < j:
                    rhs = degeneracy(j - 1, n - 1).then(face(i, n))
                elif i in (j, j + 1):
                    rhs = GenMap.identity(oriental(n))
                else:
                    rhs = degeneracy(j, n - 1).then(face(i - 1, n))
                check(lhs, rhs, f"s{j} d{i} (n={n})")
    rep.info["identities"] = count
    return rep


def monad_route_check(n_max: int) -> Report:
    """Coface and codegeneracy maps via the monad agree with the direct formula."""
    rep = Report("monad-route")
    for n in range(1, n_max + 1):
        for i in range(n + 1):
            rep.extend(maps_equal(face(i, n), face_monad(i, n)), f"face {i} n={n}")
    for n in range(0, n_max):
        for i in range(n + 1):
            rep.extend(maps_equal(degeneracy(i, n), degeneracy_monad(i, n)),
                       f"degeneracy {i} n={n}")
    return rep


def simplicial_chain_image(phi: MonotoneMap, k) -> Chain:
    img = tuple(phi(i) for i in k.label)
    if len(set(img)) < len(img):
        return Chain.zero(k.dim)
    return Chain.basis(key(*img))


def cosimplicial_linear_check(n_max: int) -> Report:
    """Linearized O(phi) is the simplicial chain map of phi, for all phi up to n_max."""
    rep = Report("cosimplicial-linear")
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            for values in itertools.combinations_with_replacement(range(m + 1), n + 1):
                phi = MonotoneMap(n, m, values)
                f = cosimplicial_map(phi)
                for k in f.source.gens():
                    got = f.linear_image(k)
                    want = simplicial_chain_image(phi, k)
                    if got != want:
                        rep.fail(f"{phi.values} on {k}: {got} != {want}")
    return rep


def functoriality_check(n_max: int) -> Report:
    """O(psi o phi) = O(psi) o O(phi) on tables, for all composable pairs."""
    rep = Report("functoriality")
    def maps(a, b):
        for values in itertools.combinations_with_replacement(range(b + 1), a + 1):
            yield MonotoneMap(a, b, values)
    for a in range(n_max + 1):
        for b in range(n_max + 1):
            for c in range(n_max + 1):
                for phi in maps(a, b):
                    for psi in maps(b, c):
                        lhs = cosimplicial_map(phi.then(psi))
                        rhs = cosimplicial_map(phi).then(cosimplicial_map(psi))
                        rep.extend(maps_equal(lhs, rhs), f"{phi.values} then {psi.values}")
    return rep
