"""Orientals as free algebras of the expansion monad, checked against simplex complexes."""

from .cells import Comp, Gen, GenKey, Unit, boundary, compose, gen, iterated_boundary, key, parse, to_text
from .polygraph import Polygraph
from .linear import AugDirComplex, Chain
from .expansion import ExpandedPolygraph, GenMap, chevron, expand, mu, eta, T_on_map
from .oriental import MonotoneMap, cosimplicial_map, degeneracy, face, simp
from .steiner import CellTable, cell_eq, compare, simplex_adc
from . import steiner

__all__ = [
    "AugDirComplex", "CellTable", "Chain", "Comp", "ExpandedPolygraph", "Gen", "GenKey", "GenMap",
    "MonotoneMap", "Polygraph", "T_on_map", "Unit", "boundary", "cell_eq", "chevron", "compare",
    "compose", "cosimplicial_map", "degeneracy", "eta", "expand", "face", "gen", "iterated_boundary",
    "key", "mu", "parse", "simp", "simplex_adc", "steiner", "to_text",
]
