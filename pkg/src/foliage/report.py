"""Assertion outcomes and report assembly."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from .serialization import document

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


@dataclass
class Assertion:
    name: str
    outcome: str
    mode: str = "exact"
    detail: Dict[str, Any] = field(default_factory=dict)
    counterexample: Optional[Any] = None
    seconds: Optional[float] = None

    def to_json(self, timing: bool = False) -> dict:
        out = {"name": self.name, "outcome": self.outcome, "mode": self.mode, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


def check(name: str, fn: Callable[[], Assertion]) -> Assertion:
    """Run ``fn`` and stamp the wall-clock time on its result."""
    t0 = time.perf_counter()
    a = fn()
    a.name = name
    a.seconds = time.perf_counter() - t0
    return a


def passed(ok: bool, mode: str = "exact", **detail) -> Assertion:
    return Assertion("", PASS if ok else FAIL, mode, detail)


def summarize(assertions: List[Assertion]) -> Dict[str, int]:
    out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
    for a in assertions:
        out[a.outcome] += 1
    return out


def exit_code(assertions: List[Assertion]) -> int:
    s = summarize(assertions)
    if s[FAIL]:
        return EXIT_FAIL
    if s[INCONCLUSIVE]:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def build_report(command: str, assertions: List[Assertion], seed: int, timing: bool = False,
                 **extra) -> dict:
    assertions = sorted(assertions, key=lambda a: a.name)
    return document(
        command=command,
        seed=seed,
        assertions=[a.to_json(timing) for a in assertions],
        summary=summarize(assertions),
        exit_code=exit_code(assertions),
        **extra,
    )
