"""Verification reports: an ordered checklist plus timings and artifact hashes."""

from __future__ import annotations

import hashlib
import json
import os
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Any

SCHEMA_VERSION = 1

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckEntry:
    claim: str
    anchor: str
    expected: Any
    computed: Any
    status: str
    note: str = ""


def _jsonable(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class VerificationReport:
    pipeline: str
    config: dict = field(default_factory=dict)
    checks: list[CheckEntry] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    hashes: dict[str, str] = field(default_factory=dict)
    values: dict[str, Any] = field(default_factory=dict)
    log: list[str] = field(default_factory=list)

    def check(self, claim: str, anchor: str, expected, computed, passed: bool | None = None, note: str = "") -> bool:
        if passed is None:
            passed = expected == computed
        self.checks.append(CheckEntry(claim, anchor, _jsonable(expected), _jsonable(computed),
                                      PASS if passed else FAIL, note))
        return bool(passed)

    def skip(self, claim: str, anchor: str, expected, reason: str) -> None:
        self.checks.append(CheckEntry(claim, anchor, _jsonable(expected), None, SKIPPED, reason))

    def fail(self, claim: str, anchor: str, expected, reason: str) -> None:
        self.checks.append(CheckEntry(claim, anchor, _jsonable(expected), None, FAIL, reason))

    def record(self, key: str, value) -> None:
        self.values[key] = _jsonable(value)

    def artifact(self, name: str, text: str) -> str:
        h = content_hash(text)
        self.hashes[name] = h
        return h

    def note(self, msg: str) -> None:
        self.log.append(msg)

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(self.timings.get(name, 0.0) + time.perf_counter() - t0, 3)

    def status_of(self, claim: str) -> str | None:
        for c in self.checks:
            if c.claim == claim:
                return c.status
        return None

    def entry(self, claim: str) -> CheckEntry | None:
        for c in self.checks:
            if c.claim == claim:
                return c
        return None

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def failures(self) -> list[CheckEntry]:
        return [c for c in self.checks if c.status == FAIL]

    def merge(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(CheckEntry(prefix + c.claim, c.anchor, c.expected, c.computed, c.status, c.note))
        for k, v in other.timings.items():
            self.timings[prefix + k] = v
        self.hashes.update({prefix + k: v for k, v in other.hashes.items()})
        self.values.update({prefix + k: v for k, v in other.values.items()})
        self.log.extend(other.log)

    def to_dict(self, include_timings: bool = True) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "pipeline": self.pipeline,
            "config": _jsonable(self.config),
            "status": PASS if self.ok else FAIL,
            "checks": [asdict(c) for c in self.checks],
            "values": self.values,
            "hashes": self.hashes,
            "log": self.log,
        }
        if include_timings:
            d["timings"] = self.timings
        return d

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), indent=2, sort_keys=False)

    def write(self, path: str) -> None:
        d = os.path.dirname(os.path.abspath(path))
        os.makedirs(d, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(self.to_json())
        os.replace(tmp, path)

    def summary_lines(self) -> list[str]:
        out = []
        for c in self.checks:
            out.append(f"[{c.status:>7}] {c.claim}: expected {c.expected}, computed {c.computed}"
                       + (f" ({c.note})" if c.note else ""))
        return out
