"""The verification pipeline behind ``orientalis verify``."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from . import cylinders, expansion, steiner
from .oriental import (cosimplicial_linear_check, monad_route_check, oriental, oriental_expansion,
                       verify_simplicial_identities)
from .polygraph import Polygraph
from .report import Report


@dataclass
class CheckResult:
    name: str
    passed: bool
    witnesses: list[str]
    seconds: float

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witnesses": self.witnesses,
                "seconds": round(self.seconds, 4)}


@dataclass
class VerifyReport:
    n: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {"n": self.n, "passed": self.passed, "checks": [r.to_json() for r in self.results]}

    def text(self) -> str:
        lines = []
        for r in self.results:
            lines.append(f"{'pass' if r.passed else 'FAIL'}  {r.name}  ({r.seconds:.2f}s)")
            for w in r.witnesses[:10]:
                lines.append(f"      {w}")
            if len(r.witnesses) > 10:
                lines.append(f"      ... {len(r.witnesses) - 10} more")
        lines.append("all checks passed" if self.passed else "verification FAILED")
        return "\n".join(lines)


def counting_check(S: Polygraph, n: int) -> Report:
    rep = Report("counting")
    counts = S.counts()
    want = [comb(n + 1, m + 1) for m in range(n + 1)]
    if counts != want:
        rep.fail(f"generator counts {counts}, expected {want}")
    if len(S) != 2 ** (n + 1) - 1:
        rep.fail(f"{len(S)} generators, expected {2 ** (n + 1) - 1}")
    for m in range(n + 1):
        expected = set(steiner.simplex_keys(n, m))
        if set(S.gens(m)) != expected:
            rep.fail(f"{m}-generators are not the increasing {m + 1}-tuples in [0, {n}]")
    return rep


def _loop_free(S: Polygraph) -> Report:
    rep = Report("loop-free")
    K = S.lambda_()
    rep.extend(steiner.unital_check(K))
    rep.extend(steiner.strong_loop_free_check(K))
    return rep


def _compare(S: Polygraph, n: int) -> Report:
    rep = Report("compare")
    verdict = steiner.compare(S, steiner.simplex_adc(n))
    if not verdict.certified:
        rep.fail(verdict.reason)
    return rep


def _monad_laws(n: int) -> Report:
    rep = Report("monad-laws")
    for m in range(-1, n + 1):
        rep.extend(expansion.monad_unit_laws(oriental(m)), f"unit laws at O_{m}")
    for m in range(-1, n):
        rep.extend(expansion.monad_associativity(oriental(m)), f"associativity at O_{m}")
    return rep


def _expansion(n: int) -> Report:
    rep = Report("expansion")
    for m in range(n + 1):
        E = oriental_expansion(m)
        rep.extend(cylinders.expansion_axioms(E), f"O_{m}")
        _, homotopy = expansion.chain_homotopy(E)
        rep.extend(homotopy, f"O_{m}")
    return rep


def polygraph_checks(S: Polygraph, n: int) -> dict[str, Callable[[], Report]]:
    return {
        "counting": lambda: counting_check(S, n),
        "validate": lambda: S.validate(),
        "atomic": lambda: steiner.atomic_check(S),
        "loop-free": lambda: _loop_free(S),
        "lin-boundary": lambda: steiner.lin_boundary_check(S),
        "compare": lambda: _compare(S, n),
    }


def oriental_checks(n: int) -> dict[str, Callable[[], Report]]:
    return {
        "cosimplicial-linear": lambda: cosimplicial_linear_check(n),
        "monad-laws": lambda: _monad_laws(n),
        "simplicial-identities": lambda: verify_simplicial_identities(n),
        "monad-route": lambda: monad_route_check(n),
        "expansion": lambda: _expansion(n),
    }


def check_names() -> list[str]:
    return list(polygraph_checks(Polygraph(), 0)) + list(oriental_checks(0))


def run(n: int, only: list[str] | None = None, polygraph: Polygraph | None = None) -> VerifyReport:
    """Run the checks on O_n, or the polygraph-only checks on an imported polygraph."""
    S = polygraph if polygraph is not None else oriental(n)
    checks = polygraph_checks(S, n)
    if polygraph is None:
        checks.update(oriental_checks(n))
    names = only or list(checks)
    unknown = [c for c in names if c not in check_names()]
    if unknown:
        raise ValueError(f"unknown check {unknown[0]!r}; choose from {', '.join(check_names())}")
    report = VerifyReport(n)
    for name in names:
        if name not in checks:
            report.results.append(CheckResult(name, False, ["not applicable to an imported polygraph"], 0.0))
            continue
        start = time.perf_counter()
        try:
            rep = checks[name]()
            witnesses = list(rep.failures)
            passed = rep.passed
        except (ValueError, KeyError) as exc:
            witnesses, passed = [f"error: {exc}"], False
        report.results.append(CheckResult(name, passed, witnesses, time.perf_counter() - start))
    return report
