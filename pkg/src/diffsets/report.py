"""Certificate records, the JSONL journal, and markdown tables.

One JSON object per line::

    {"schema": 1, "v": .., "k": .., "lambda": .., "n": .., "status": ..,
     "tests": [{"name": .., "verdict": .., "witness": {..}}, ..],
     "elapsed_ms": ..}

``status`` is EXCLUDED, OPEN or EXISTS.  Witness shapes by test name:

    schutzenberger  {"n"}
    bcr             {"a", "b", "place"}        place is "inf" or a prime
    mann            {"w", "p", "j"}            p^j = -1 mod w
    lms             {"p", "a", "gcd"}          n = p^a
    schmidt_bound   {"F", "phi"}
    arasu           {"p", "w", "value"}
    contraction     {"w", "t", "orbit_sizes", "count", "survivors"}
                    or {"w", "t", "orbit_sizes", "count_exceeds", "skipped"}
                    or {"attempts": [...]} when nothing was excluded
    evans_mann      {"bound", "t": [t1, t2, t3, t4], "d", "d2", "lcm", "exponents"}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator

from .params import ParamSet
from .results import Certificate, TestResult, Verdict

SCHEMA = 1


@dataclass(frozen=True)
class CertificateRecord:
    v: int
    k: int
    lam: int
    n: int
    status: str
    tests: tuple[tuple[str, str, Any], ...] = ()
    elapsed_ms: int = 0

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.v, self.k, self.lam)

    @property
    def params(self) -> ParamSet:
        return ParamSet(self.k, self.v, self.lam)

    @property
    def excluding_test(self) -> str | None:
        for name, verdict, _ in self.tests:
            if verdict == Verdict.EXCLUDED.value:
                return name
        return None

    def results(self) -> list[TestResult]:
        return [TestResult(name, Verdict(verdict), dict(wt)) for name, verdict, wt in self.tests]

    def to_json(self) -> str:
        obj = {
            "schema": SCHEMA,
            "v": self.v,
            "k": self.k,
            "lambda": self.lam,
            "n": self.n,
            "status": self.status,
            "tests": [{"name": a, "verdict": b, "witness": c} for a, b, c in self.tests],
            "elapsed_ms": self.elapsed_ms,
        }
        return json.dumps(obj, sort_keys=False, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "CertificateRecord":
        obj = json.loads(line)
        if obj.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {obj.get('schema')!r}")
        tests = tuple((t["name"], t["verdict"], _freeze(t["witness"])) for t in obj["tests"])
        return cls(obj["v"], obj["k"], obj["lambda"], obj["n"], obj["status"], tests, obj["elapsed_ms"])


def _freeze(x: Any) -> Any:
    # witnesses stay plain dicts/lists; this only normalizes tuples to lists
    if isinstance(x, dict):
        return {k: _freeze(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_freeze(v) for v in x]
    return x


def record_from_certificate(cert: Certificate, status: str | None = None, timing: bool = True) -> CertificateRecord:
    ps = cert.params
    tests = tuple((r.test_name, r.verdict.value, _freeze(r.witness)) for r in cert.results)
    return CertificateRecord(
        ps.v,
        ps.k,
        ps.lam,
        ps.n,
        status or cert.status.value,
        tests,
        cert.elapsed_ms if timing else 0,
    )


def emit_jsonl(records: Iterable[CertificateRecord]) -> str:
    return "".join(r.to_json() + "\n" for r in records)


def parse_jsonl(text: str) -> list[CertificateRecord]:
    return [CertificateRecord.from_json(line) for line in text.splitlines() if line.strip()]


# --- journal ----------------------------------------------------------------


@dataclass
class Journal:
    """Append-only JSONL file; completed keys are skipped on resume."""

    path: Path
    done: dict[Any, CertificateRecord] = field(default_factory=dict)

    @classmethod
    def open(cls, path: str | Path, key=lambda r: r.key) -> "Journal":
        path = Path(path)
        j = cls(path)
        if path.exists():
            text = path.read_text()
            lines = text.splitlines()
            # a torn final line from an interrupted run is dropped
            if text and not text.endswith("\n"):
                lines = lines[:-1]
                path.write_text("".join(line + "\n" for line in lines))
            for line in lines:
                if line.strip():
                    r = CertificateRecord.from_json(line)
                    j.done[key(r)] = r
        j._key = key
        return j

    def append(self, record: CertificateRecord) -> None:
        with self.path.open("a") as fh:
            fh.write(record.to_json() + "\n")
        self.done[self._key(record)] = record


# --- markdown ---------------------------------------------------------------


def _table(header: list[str], rows: Iterable[list[Any]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _brief(name: str | None, wt: dict) -> str:
    if name is None:
        return ""
    if name == "mann":
        return f"mann (w={wt['w']}, p={wt['p']}, j={wt['j']})"
    if name == "schmidt_bound":
        return f"schmidt_bound (F={wt['F']})"
    if name == "contraction":
        return f"contraction (w={wt['w']}, t={wt['t']}, {wt['count']} -> {wt['survivors']})"
    if name == "bcr":
        return f"bcr (place {wt['place']})"
    if name == "arasu":
        return f"arasu (p={wt['p']}, w={wt['w']})"
    if name == "evans_mann":
        return f"evans_mann (d={wt['d']}, d2={wt['d2']})"
    return name


def _excluding(r: CertificateRecord) -> tuple[str | None, dict]:
    for name, verdict, wt in r.tests:
        if verdict == Verdict.EXCLUDED.value:
            return name, wt
    return None, {}


def survey_table(records: Iterable[CertificateRecord]) -> str:
    rows = []
    for r in records:
        name, wt = _excluding(r)
        rows.append([r.v, r.k, r.lam, r.n, r.status, _brief(name, wt)])
    return _table(["v", "k", "λ", "n", "Status", "Test"], rows)


def hadamard_table(records: Iterable[CertificateRecord]) -> str:
    rows = []
    for r in records:
        name, wt = _excluding(r)
        status = {"EXISTS": "KNOWN_FAMILY", "OPEN": "SURVIVOR"}.get(r.status, r.status)
        rows.append([r.v, r.n, status, _brief(name, wt)])
    return _table(["v", "n", "Status", "Comment"], rows)


def ppc_table(records: Iterable[CertificateRecord]) -> str:
    rows = []
    for r in records:
        name, wt = _excluding(r)
        rows.append([r.n, r.v, name or "SURVIVOR", _brief(name, wt)])
    return _table(["n", "v", "Eliminated by", "Witness"], rows)


def contraction_table(records: Iterable[CertificateRecord]) -> str:
    """One row per contraction result: multiplier, w and solution counts."""
    rows = []
    for r in records:
        for name, _, wt in r.tests:
            if name == "contraction" and "w" in wt:
                count = wt["count"] if "count" in wt else f"> {wt['count_exceeds']}"
                rows.append([r.v, r.k, r.lam, r.n, wt["t"], wt["w"], count, wt.get("survivors", "-")])
    return _table(["v", "k", "λ", "n", "Multiplier", "w", "Solutions", "After correlation"], rows)


TABLES = {
    "survey": survey_table,
    "hadamard": hadamard_table,
    "ppc": ppc_table,
    "contract": contraction_table,
}


def emit_report(records: list[CertificateRecord], fmt: str = "markdown", kind: str = "survey") -> str:
    if fmt == "jsonl":
        return emit_jsonl(records)
    if fmt == "markdown":
        return TABLES[kind](records)
    raise ValueError(f"unknown format {fmt!r}")
