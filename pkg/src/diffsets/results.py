"""Verdict records shared by the battery, contraction and survey drivers."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .params import ParamSet


class Verdict(str, Enum):
    EXCLUDED = "EXCLUDED"
    PASS = "PASS"
    INAPPLICABLE = "INAPPLICABLE"


class Status(str, Enum):
    EXCLUDED = "EXCLUDED"
    OPEN = "OPEN"
    EXISTS = "EXISTS"


@dataclass
class TestResult:
    test_name: str
    verdict: Verdict
    witness: dict[str, Any] = field(default_factory=dict)

    __test__ = False  # not a pytest class

    @property
    def excluded(self) -> bool:
        return self.verdict is Verdict.EXCLUDED


@dataclass
class Certificate:
    params: ParamSet
    results: list[TestResult] = field(default_factory=list)
    construction: str | None = None
    elapsed_ms: int = 0

    @property
    def excluded_by(self) -> TestResult | None:
        for r in self.results:
            if r.excluded:
                return r
        return None

    @property
    def status(self) -> Status:
        if self.excluded_by is not None:
            return Status.EXCLUDED
        if self.construction is not None:
            return Status.EXISTS
        return Status.OPEN
