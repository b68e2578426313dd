"""Check report records and their JSON-lines serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    check: str
    instance: str
    hypothesis_met: bool
    computed: dict = field(default_factory=dict)
    bound: str = ""
    verdict: str = "pass"  # pass | fail | skipped
    witness: str | None = None

    def __post_init__(self):
        if self.verdict not in ("pass", "fail", "skipped"):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if (self.verdict == "skipped") != (not self.hypothesis_met):
            raise ValueError("skipped verdicts must coincide with unmet hypotheses")
        if self.verdict == "fail" and not self.witness:
            raise ValueError("fail verdicts need a witness")

    def to_json_line(self) -> str:
        obj = {
            "check": self.check,
            "instance": self.instance,
            "hypothesis_met": self.hypothesis_met,
            "computed": self.computed,
            "bound": str(self.bound),
            "verdict": self.verdict,
        }
        if self.witness is not None:
            obj["witness"] = self.witness
        return json.dumps(obj, sort_keys=True)


def report_from_json_line(line: str) -> CheckReport:
    obj = json.loads(line)
    return CheckReport(
        check=obj["check"],
        instance=obj["instance"],
        hypothesis_met=obj["hypothesis_met"],
        computed=obj.get("computed", {}),
        bound=obj.get("bound", ""),
        verdict=obj["verdict"],
        witness=obj.get("witness"),
    )
