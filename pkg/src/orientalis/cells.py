"""Cell expressions over a polygraph.

A cell of a free omega-category is written as an expression tree built from
generators, units and p-compositions.  ``Comp(p, x, y)`` stands for
``y *p x``: ``x`` is the cell composed first along dimension ``p``.

Expressions are hash-consed, so two structurally identical expressions are the
same Python object and ``==`` is identity.  This keeps memoization cheap even
when boundary expressions become large shared DAGs.

Textual notation (used by the parser, the printer and the CLI)::

    expr  := term ( '*' INT term )*
    term  := unit | gen | '(' expr ')'
    unit  := '1_' term
    gen   := '<' INT (',' INT)* '>'  |  '⟨' INT (',' INT)* '⟩'  |  NAME
    NAME  := [A-Za-z_][A-Za-z0-9_.']*

``*p`` binds tighter the lower ``p`` is (the lowest dimensional composition
has priority), and equal operators associate to the left.  A lower dimensional
operand of ``*p`` is lifted with units to the dimension of the other operand.
"""

from __future__ import annotations

import re
import threading
import weakref
from dataclasses import dataclass
from typing import Literal, Protocol, Union

Sign = Literal["-", "+"]
SIGNS: tuple[Sign, Sign] = ("-", "+")


class CellError(ValueError):
    """Malformed cell expression or illegal operation on one."""


class UnknownGeneratorError(CellError, KeyError):
    pass


class CellSyntaxError(CellError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class GenKey:
    """Generator identifier.

    ``label`` is a strictly increasing tuple of vertices for oriental
    generators and a plain name otherwise.
    """

    label: Union[tuple[int, ...], str]
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise CellError(f"negative dimension for generator {self.label!r}")
        if isinstance(self.label, tuple) and len(self.label) != self.dim + 1:
            raise CellError(f"tuple key {self.label} must have dimension {len(self.label) - 1}")

    @property
    def is_simplicial(self) -> bool:
        return isinstance(self.label, tuple)

    @property
    def sort_key(self):
        if isinstance(self.label, tuple):
            return (0, self.dim, self.label)
        return (1, self.dim, self.label)

    def text(self, unicode: bool = False) -> str:
        if isinstance(self.label, tuple):
            body = ",".join(map(str, self.label))
            return f"⟨{body}⟩" if unicode else f"<{body}>"
        return self.label

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"GenKey({self.text()})"


def key(*vertices: int) -> GenKey:
    """Simplicial key ``<i0,...,im>``."""
    return GenKey(tuple(vertices), len(vertices) - 1)


_interned: "weakref.WeakValueDictionary[tuple, CellExpr]" = weakref.WeakValueDictionary()
_intern_lock = threading.Lock()


def _intern(cls, ident: tuple, **fields):
    obj = _interned.get(ident)
    if obj is not None:
        return obj
    with _intern_lock:
        obj = _interned.get(ident)
        if obj is None:
            obj = object.__new__(cls)
            for name, value in fields.items():
                object.__setattr__(obj, name, value)
            _interned[ident] = obj
    return obj


class CellExpr:
    """Base class of Gen, Unit and Comp.  Instances are immutable."""

    __slots__ = ("dim", "__weakref__")
    dim: int

    def __setattr__(self, name, value):
        raise AttributeError("cell expressions are immutable")

    def __reduce__(self):
        return (_rebuild, (self._ident(),))

    def __str__(self):
        return to_text(self)


class Gen(CellExpr):
    __slots__ = ("key",)
    __match_args__ = ("key",)
    key: GenKey

    def __new__(cls, key: GenKey):
        if not isinstance(key, GenKey):
            raise CellError(f"Gen expects a GenKey, got {key!r}")
        return _intern(cls, ("gen", key), key=key, dim=key.dim)

    def _ident(self):
        return ("gen", self.key)

    def __repr__(self):
        return f"Gen({self.key.text()})"


class Unit(CellExpr):
    __slots__ = ("inner",)
    __match_args__ = ("inner",)
    inner: CellExpr

    def __new__(cls, inner: CellExpr):
        return _intern(cls, ("unit", inner), inner=inner, dim=inner.dim + 1)

    def _ident(self):
        return ("unit", self.inner)

    def __repr__(self):
        return f"Unit({self.inner!r})"


class Comp(CellExpr):
    """``Comp(p, first, second)`` is ``second *p first``."""

    __slots__ = ("p", "first", "second")
    __match_args__ = ("p", "first", "second")
    p: int
    first: CellExpr
    second: CellExpr

    def __new__(cls, p: int, first: CellExpr, second: CellExpr):
        if first.dim != second.dim:
            raise CellError(
                f"composition operands have dimensions {first.dim} and {second.dim}")
        if not 0 <= p < first.dim:
            raise CellError(f"cannot {p}-compose cells of dimension {first.dim}")
        return _intern(cls, ("comp", p, first, second),
                       p=p, first=first, second=second, dim=first.dim)

    def _ident(self):
        return ("comp", self.p, self.first, self.second)

    def __repr__(self):
        return f"Comp({self.p}, {self.first!r}, {self.second!r})"


def _rebuild(ident):
    tag = ident[0]
    if tag == "gen":
        return Gen(ident[1])
    if tag == "unit":
        return Unit(ident[1])
    return Comp(*ident[1:])


def gen(*vertices: int) -> Gen:
    return Gen(key(*vertices))


def dim(e: CellExpr) -> int:
    return e.dim


def lift(e: CellExpr, n: int) -> CellExpr:
    """Iterated unit of ``e`` in dimension ``n`` (``e`` itself if already there)."""
    if e.dim > n:
        raise CellError(f"cannot lift a {e.dim}-cell to dimension {n}")
    while e.dim < n:
        e = Unit(e)
    return e


def strip_units(e: CellExpr) -> tuple[CellExpr, int]:
    count = 0
    while isinstance(e, Unit):
        e = e.inner
        count += 1
    return e, count


def generators_of(e: CellExpr) -> set[GenKey]:
    seen: set[int] = set()
    out: set[GenKey] = set()
    stack = [e]
    while stack:
        x = stack.pop()
        if id(x) in seen:
            continue
        seen.add(id(x))
        match x:
            case Gen(k):
                out.add(k)
            case Unit(u):
                stack.append(u)
            case Comp(_, a, b):
                stack.extend((a, b))
    return out


def size(e: CellExpr) -> int:
    """Number of distinct nodes of the expression DAG."""
    seen: set[int] = set()
    stack = [e]
    while stack:
        x = stack.pop()
        if id(x) in seen:
            continue
        seen.add(id(x))
        if isinstance(x, Unit):
            stack.append(x.inner)
        elif isinstance(x, Comp):
            stack.extend((x.first, x.second))
    return len(seen)


# ---------------------------------------------------------------- boundaries

class BoundaryContext(Protocol):
    def boundary_of(self, k: GenKey, eps: Sign) -> CellExpr: ...
    def memo(self, name: str) -> dict: ...


def _check_sign(eps):
    if eps not in SIGNS:
        raise CellError(f"sign must be '-' or '+', got {eps!r}")


def boundary(eps: Sign, e: CellExpr, ctx: BoundaryContext) -> CellExpr:
    """Source (``eps='-'``) or target (``eps='+'``) of a cell of dimension >= 1."""
    _check_sign(eps)
    if e.dim == 0:
        raise CellError(f"0-cell {e} has no boundary")
    memo = ctx.memo("boundary")
    ident = (eps, e)
    hit = memo.get(ident)
    if hit is not None:
        return hit
    match e:
        case Gen(k):
            out = ctx.boundary_of(k, eps)
        case Unit(u):
            out = u
        case Comp(p, x, y):
            if e.dim - 1 == p:
                out = boundary(eps, x if eps == "-" else y, ctx)
            else:
                out = Comp(p, boundary(eps, x, ctx), boundary(eps, y, ctx))
    memo[ident] = out
    return out


def iterated_boundary(eps: Sign, i: int, e: CellExpr, ctx: BoundaryContext) -> CellExpr:
    """The ``i``-source or ``i``-target of ``e``; ``e`` itself when ``i == dim e``."""
    if not 0 <= i <= e.dim:
        raise CellError(f"no {i}-boundary for a {e.dim}-cell")
    for _ in range(e.dim - i):
        e = boundary(eps, e, ctx)
    return e


def compose(p: int, x: CellExpr, y: CellExpr, ctx=None) -> CellExpr:
    """``y *p x``, lifting the lower dimensional operand with units.

    Composability is not checked here; evaluate in ``steiner`` to decide it.
    """
    n = max(x.dim, y.dim)
    if p < 0 or p >= n:
        raise CellError(f"cannot {p}-compose cells of dimensions {x.dim} and {y.dim}")
    return Comp(p, lift(x, n), lift(y, n))


def whisker_up(base: CellExpr, cells, start: int = 0) -> CellExpr:
    """``base *start c0 *(start+1) c1 ...``, i.e. the left nested ascending chain.

    Each ``c_k`` is composed first, so this is the pattern
    ``x *0 a0 *1 a1 ... *k ak`` of the cone and chevron formulas.
    """
    acc = base
    for offset, c in enumerate(cells):
        acc = compose(start + offset, c, acc)
    return acc


def whisker_down(base: CellExpr, cells) -> CellExpr:
    """``c_{k} *k ... *1 c_1 *0 base``: the right nested descending chain.

    ``cells[j]`` is composed along dimension ``j`` after ``base``.
    """
    acc = base
    for j, c in enumerate(cells):
        acc = compose(j, acc, c)
    return acc


# ---------------------------------------------------------- parse and print

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<op>\*\s*(?P<opn>\d+))"
    r"|(?P<unit>1_)"
    r"|(?P<lt>[<⟨])(?P<verts>\s*\d+\s*(?:,\s*\d+\s*)*)(?P<gt>[>⟩])"
    r"|(?P<lp>\()"
    r"|(?P<rp>\))"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_.']*)"
    r")"
)


class _Parser:
    def __init__(self, text: str, resolve):
        self.text = text
        self.resolve = resolve
        self.pos = 0
        self.tok = None
        self._advance()

    def _advance(self):
        rest = self.text[self.pos:]
        if not rest.strip():
            self.tok = None
            self.tok_pos = len(self.text)
            return
        m = _TOKEN.match(self.text, self.pos)
        if m is None or m.end() == self.pos:
            start = self.pos + (len(rest) - len(rest.lstrip()))
            raise CellSyntaxError("unexpected character", self.text, start)
        self.tok_pos = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        self.tok = m
        self.pos = m.end()

    def error(self, message):
        raise CellSyntaxError(message, self.text, self.tok_pos)

    def expr(self, min_bp: float = float("-inf")) -> CellExpr:
        lhs = self.term()
        while self.tok is not None and self.tok.group("op"):
            q = int(self.tok.group("opn"))
            if -q < min_bp:
                break
            op_pos = self.tok_pos
            self._advance()
            rhs = self.expr(-q + 1)
            try:
                lhs = compose(q, rhs, lhs)
            except CellError as exc:
                raise CellSyntaxError(str(exc), self.text, op_pos) from None
        return lhs

    def term(self) -> CellExpr:
        m = self.tok
        if m is None:
            self.error("unexpected end of input")
        if m.group("unit"):
            self._advance()
            return Unit(self.term())
        if m.group("lt"):
            if (m.group("lt") == "<") != (m.group("gt") == ">"):
                self.error("mismatched brackets")
            verts = tuple(int(v) for v in m.group("verts").split(","))
            if any(a >= b for a, b in zip(verts, verts[1:])):
                self.error("simplicial key must be strictly increasing")
            self._advance()
            return Gen(key(*verts))
        if m.group("name"):
            name = m.group("name")
            if self.resolve is None:
                self.error(f"no context to resolve generator {name!r}")
            k = self.resolve(name)
            if k is None:
                self.error(f"unknown generator {name!r}")
            self._advance()
            return Gen(k)
        if m.group("lp"):
            self._advance()
            inner = self.expr()
            if self.tok is None or not self.tok.group("rp"):
                self.error("expected ')'")
            self._advance()
            return inner
        self.error("unexpected token")


def parse(text: str, ctx=None) -> CellExpr:
    """Parse the textual notation.  Named generators are looked up in ``ctx``."""
    resolve = None
    if ctx is not None:
        resolve = ctx.resolve
    p = _Parser(text, resolve)
    e = p.expr()
    if p.tok is not None:
        p.error("trailing input")
    return e


def _strip_operand(e: CellExpr, p: int) -> CellExpr:
    while isinstance(e, Unit) and e.inner.dim > p:
        e = e.inner
    return e


def to_text(e: CellExpr, unicode: bool = False) -> str:
    """Print without redundant parentheses; units added by lifting are elided."""
    match e:
        case Gen(k):
            return k.text(unicode)
        case Unit(u):
            inner = to_text(u, unicode)
            if isinstance(u, Comp):
                inner = f"({inner})"
            return "1_" + inner
        case Comp(p, x, y):
            sx, sy = _strip_operand(x, p), _strip_operand(y, p)
            if sx.dim != e.dim and sy.dim != e.dim:
                sx = x
            left = to_text(sy, unicode)
            right = to_text(sx, unicode)
            if isinstance(sy, Comp) and sy.p > p:
                left = f"({left})"
            if isinstance(sx, Comp) and sx.p >= p:
                right = f"({right})"
            sep = " " if right[0].isdigit() else ""
            return f"{left}*{p}{sep}{right}"
    raise CellError(f"not a cell expression: {e!r}")
