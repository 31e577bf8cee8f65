"""Polygraphs (computads) and their linearization."""

from __future__ import annotations

import json
import re
import threading
from typing import Iterable, Mapping

from .cells import (CellError, CellExpr, Comp, Gen, GenKey, Sign, Unit, UnknownGeneratorError,
                    generators_of, parse, to_text)
from .linear import AugDirComplex, Chain
from .report import Report

_TUPLE_KEY = re.compile(r"^\d+(\.\d+)*$")


def key_to_json(k: GenKey) -> str:
    if isinstance(k.label, tuple):
        return ".".join(map(str, k.label))
    return k.label


class Polygraph:
    """Graded generators together with source and target expressions.

    Generators keep their insertion order within each dimension.  A polygraph
    is meant to be treated as immutable once handed out; ``_add`` is only used
    while one is being built (see ``expansion.expand``), which is why boundary
    expressions may refer to the partially built polygraph as their context.
    """

    def __init__(self, gens: Iterable[tuple[GenKey, CellExpr | None, CellExpr | None]] = ()):
        self._dims: list[list[GenKey]] = []
        self._bd: dict[GenKey, tuple[CellExpr, CellExpr]] = {}
        self._names: dict[str, GenKey] = {}
        self._present: set[GenKey] = set()
        self._memos: dict[str, dict] = {}
        self._lock = threading.Lock()
        for k, s, t in gens:
            self._add(k, s, t)

    def _add(self, k: GenKey, src: CellExpr | None = None, tgt: CellExpr | None = None):
        if k in self._present:
            raise CellError(f"duplicate generator {k}")
        if isinstance(k.label, str):
            if k.label in self._names:
                raise CellError(f"generator name {k.label!r} used twice")
            if _TUPLE_KEY.match(k.label):
                raise CellError(f"generator name {k.label!r} looks like a simplicial key")
            self._names[k.label] = k
        if k.dim >= 1:
            if src is None or tgt is None:
                raise CellError(f"generator {k} of dimension {k.dim} needs a source and a target")
            self._bd[k] = (src, tgt)
        elif src is not None or tgt is not None:
            raise CellError(f"0-generator {k} has no boundary")
        while len(self._dims) <= k.dim:
            self._dims.append([])
        self._dims[k.dim].append(k)
        self._present.add(k)

    # context protocol used by cells.boundary and the parser
    def boundary_of(self, k: GenKey, eps: Sign) -> CellExpr:
        try:
            s, t = self._bd[k]
        except KeyError:
            if k in self._present:
                raise CellError(f"0-generator {k} has no boundary") from None
            raise UnknownGeneratorError(f"unknown generator {k}") from None
        return s if eps == "-" else t

    def memo(self, name: str) -> dict:
        m = self._memos.get(name)
        if m is None:
            with self._lock:
                m = self._memos.setdefault(name, {})
        return m

    def resolve(self, name: str) -> GenKey | None:
        return self._names.get(name)

    # inspection
    @property
    def dimension(self) -> int:
        return len(self._dims) - 1

    def gens(self, n: int | None = None) -> tuple[GenKey, ...]:
        if n is None:
            return tuple(k for layer in self._dims for k in layer)
        if 0 <= n < len(self._dims):
            return tuple(self._dims[n])
        return ()

    def counts(self) -> list[int]:
        return [len(layer) for layer in self._dims]

    def __len__(self):
        return len(self._present)

    def __contains__(self, k):
        return k in self._present

    def __iter__(self):
        return iter(self.gens())

    def source(self, k: GenKey) -> CellExpr:
        return self.boundary_of(k, "-")

    def target(self, k: GenKey) -> CellExpr:
        return self.boundary_of(k, "+")

    def __repr__(self):
        return f"Polygraph(counts={self.counts()})"

    def check_cell(self, e: CellExpr) -> CellExpr:
        missing = sorted((k for k in generators_of(e) if k not in self._present),
                         key=lambda k: k.sort_key)
        if missing:
            raise UnknownGeneratorError(f"unknown generator {missing[0]}")
        return e

    def parse_cell(self, text: str) -> CellExpr:
        return self.check_cell(parse(text, self))

    # linearization
    def linearize(self, e: CellExpr) -> Chain:
        memo = self.memo("linearize")
        hit = memo.get(e)
        if hit is not None:
            return hit
        match e:
            case Gen(k):
                if k not in self._present:
                    raise UnknownGeneratorError(f"unknown generator {k}")
                out = Chain.basis(k)
            case Unit(_):
                out = Chain.zero(e.dim)
            case Comp(_, x, y):
                out = self.linearize(x) + self.linearize(y)
        memo[e] = out
        return out

    def lambda_(self) -> AugDirComplex:
        memo = self.memo("lambda")
        if "adc" not in memo:
            diff = {}
            for k, (s, t) in self._bd.items():
                diff[k] = self.linearize(t) - self.linearize(s)
            bases = {n: layer for n, layer in enumerate(self._dims)}
            memo["adc"] = AugDirComplex(bases, diff)
        return memo["adc"]

    def validate(self, exact: bool = True) -> Report:
        """Dimension, dangling-key and globularity checks.

        Linear globularity (``dd = 0`` and ``ed = 0``) is always checked.  When
        the linearization is a strong Steiner complex and the presentation is
        atomic, globularity is also decided exactly on tables.
        """
        rep = Report("validate")
        seen: set[GenKey] = set()
        structural_ok = True
        for k in self.gens():
            if k.dim >= 1:
                s, t = self._bd[k]
                for sign, e in (("source", s), ("target", t)):
                    if e.dim != k.dim - 1:
                        rep.fail(f"{k}: {sign} has dimension {e.dim}, expected {k.dim - 1}")
                        structural_ok = False
                    for g in generators_of(e):
                        if g not in seen:
                            rep.fail(f"{k}: {sign} mentions {g} which is not defined earlier")
                            structural_ok = False
            seen.add(k)
        if not structural_ok:
            return rep
        for k in self.gens():
            if k.dim == 1:
                for sign, e in (("source", self._bd[k][0]), ("target", self._bd[k][1])):
                    total = self.linearize(e).augmentation()
                    if total != 1:
                        rep.fail(f"{k}: {sign} is not a single 0-cell")
            if k.dim >= 2:
                d = self.lambda_()
                dd = d.d(d.diff[k])
                if dd:
                    rep.fail(f"{k}: linear globularity fails, dd = {dd}")
        if rep.failures or not exact:
            return rep
        from . import steiner
        cert = steiner.certificate(self)
        rep.info["exact"] = cert.passed
        if not cert.passed:
            return rep
        for k in self.gens():
            if k.dim < 2:
                continue
            s, t = self._bd[k]
            for eps in ("-", "+"):
                try:
                    a = steiner.table_boundary(eps, steiner.eval(self, s))
                    b = steiner.table_boundary(eps, steiner.eval(self, t))
                except steiner.NotComposable as exc:
                    rep.fail(f"{k}: boundary is not composable: {exc}")
                    break
                if a != b:
                    rep.fail(f"{k}: globularity fails for sign {eps}")
        return rep

    # serialization
    def to_json(self) -> dict:
        return {
            "dims": [[key_to_json(k) for k in layer] for layer in self._dims],
            "boundaries": {key_to_json(k): {"src": to_text(s), "tgt": to_text(t)}
                           for k, (s, t) in ((k, self._bd[k]) for k in self.gens() if k.dim >= 1)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, ensure_ascii=False)

    @classmethod
    def from_json(cls, data: Mapping) -> "Polygraph":
        try:
            dims = data["dims"]
            bds = data.get("boundaries", {})
        except (KeyError, TypeError, AttributeError):
            raise CellError("polygraph JSON needs 'dims' and 'boundaries'") from None
        out = cls()
        for n, layer in enumerate(dims):
            for raw in layer:
                if not isinstance(raw, str):
                    raise CellError(f"generator key must be a string, got {raw!r}")
                if _TUPLE_KEY.match(raw):
                    verts = tuple(int(v) for v in raw.split("."))
                    if len(verts) != n + 1 or any(a >= b for a, b in zip(verts, verts[1:])):
                        raise CellError(f"bad simplicial key {raw!r} in dimension {n}")
                    k = GenKey(verts, n)
                else:
                    k = GenKey(raw, n)
                if n == 0:
                    out._add(k)
                    continue
                entry = bds.get(raw)
                if not isinstance(entry, Mapping) or "src" not in entry or "tgt" not in entry:
                    raise CellError(f"missing boundary for {raw!r}")
                s = out.parse_cell(entry["src"])
                t = out.parse_cell(entry["tgt"])
                out._add(k, s, t)
        return out

    @classmethod
    def loads(cls, text: str) -> "Polygraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CellError(f"invalid JSON: {exc}") from None
        return cls.from_json(data)


def linearize(S: Polygraph, e: CellExpr) -> Chain:
    return S.linearize(e)


def lambda_(S: Polygraph) -> AugDirComplex:
    return S.lambda_()


def validate(S: Polygraph, exact: bool = True) -> Report:
    return S.validate(exact)
