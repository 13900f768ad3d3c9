"""Run reports: line-oriented key/value text or a single JSON document."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    checks: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, name: str, passed: bool, *, max_deviation: float | None = None,
            count: int | None = None, **extra) -> None:
        entry = {"name": name}
        if max_deviation is not None:
            entry["max_deviation"] = float(max_deviation)
        if count is not None:
            entry["count"] = int(count)
        entry.update(extra)
        entry["pass"] = bool(passed)
        self.checks.append(entry)

    @property
    def verdict(self) -> str:
        return "pass" if self.checks and all(c["pass"] for c in self.checks) else "fail"

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "checks": self.checks,
            "elapsed": self.elapsed,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = [f"command = {self.command}"]
        for k, v in self.inputs.items():
            lines.append(f"input.{k} = {_fmt(v)}")
        for c in self.checks:
            for k, v in c.items():
                if k != "name":
                    lines.append(f"check.{c['name']}.{k} = {_fmt(v)}")
        lines.append(f"elapsed = {self.elapsed:.6f}")
        lines.append("[verdict]")
        passed = sum(c["pass"] for c in self.checks)
        lines.append(f"checks_passed = {passed}/{len(self.checks)}")
        lines.append(f"verdict = {self.verdict}")
        return "\n".join(lines) + "\n"
