"""Sparse integer chains and augmented directed chain complexes."""

from __future__ import annotations

from typing import Iterable, Mapping

from .cells import GenKey


class Chain:
    """Finite integer combination of basis elements in a fixed degree."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[GenKey, int] | None = None):
        self.dim = dim
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[k] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def basis(cls, k: GenKey) -> "Chain":
        return cls(k.dim, {k: 1})

    @classmethod
    def zero(cls, dim: int) -> "Chain":
        return cls(dim)

    def __getitem__(self, k: GenKey) -> int:
        return self._terms.get(k, 0)

    def items(self):
        return self._terms.items()

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _same_dim(self, other: "Chain"):
        if self.dim != other.dim:
            raise ValueError(f"chains of degree {self.dim} and {other.dim} do not add")

    def __add__(self, other: "Chain") -> "Chain":
        self._same_dim(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return Chain(self.dim, out)

    def __neg__(self) -> "Chain":
        return Chain(self.dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, n: int) -> "Chain":
        return Chain(self.dim, {k: n * c for k, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def positive(self) -> "Chain":
        return Chain(self.dim, {k: c for k, c in self._terms.items() if c > 0})

    def negative(self) -> "Chain":
        """Negative part, as a chain with nonnegative coefficients."""
        return Chain(self.dim, {k: -c for k, c in self._terms.items() if c < 0})

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def le(self, other: "Chain") -> bool:
        """Coefficientwise order."""
        self._same_dim(other)
        keys = set(self._terms) | set(other._terms)
        return all(self[k] <= other[k] for k in keys)

    def augmentation(self) -> int:
        if self.dim != 0:
            raise ValueError("augmentation is only defined in degree 0")
        return sum(self._terms.values())

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key)

    def text(self, unicode: bool = False) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.sorted_items():
            name = f"[{k.text(unicode)}]"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}{name}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Chain({self.dim}, {self.text()})"

    def to_json(self, keyfmt=str) -> dict:
        return {keyfmt(k): c for k, c in self.sorted_items()}


def chain_sum(dim: int, chains: Iterable[Chain]) -> Chain:
    out: dict = {}
    for ch in chains:
        if ch.dim != dim:
            raise ValueError(f"chain of degree {ch.dim} in a degree {dim} sum")
        for k, c in ch.items():
            out[k] = out.get(k, 0) + c
    return Chain(dim, out)


class AugDirComplex:
    """Augmented directed complex given by bases and differentials of basis elements.

    The positive submonoids are spanned by the bases, so the complex is
    determined by ``bases[n]`` and ``d(b)`` for every basis element of degree
    ``n >= 1``.
    """

    def __init__(self, bases: Mapping[int, Iterable[GenKey]], diff: Mapping[GenKey, Chain]):
        self.bases = {n: tuple(sorted(ks, key=lambda k: k.sort_key)) for n, ks in bases.items()}
        self.diff = dict(diff)
        self._all = {k for ks in self.bases.values() for k in ks}

    @property
    def dimension(self) -> int:
        dims = [n for n, ks in self.bases.items() if ks]
        return max(dims) if dims else -1

    def contains(self, k: GenKey) -> bool:
        return k in self._all

    def d(self, x: Chain) -> Chain:
        if x.dim == 0:
            raise ValueError("no differential out of degree 0")
        return chain_sum(x.dim - 1, (c * self.diff[k] for k, c in x.items()))

    def e(self, x: Chain) -> int:
        return x.augmentation()

    def basis_elements(self):
        for n in sorted(self.bases):
            yield from self.bases[n]
