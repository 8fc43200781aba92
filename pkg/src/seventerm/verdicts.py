"""Tri-state verdicts shared by the pipeline and the report."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Verdict:
    name: str
    status: str
    detail: str = ""
    witness: object = None
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    @classmethod
    def check(cls, name, cond, detail="", witness=None, **data) -> "Verdict":
        return cls(name, PASS if cond else FAIL, detail, None if cond else witness, data)

    @classmethod
    def skipped(cls, name, reason) -> "Verdict":
        return cls(name, SKIPPED, reason)

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = _plain(self.witness)
        if self.data:
            out["data"] = {k: _plain(v) for k, v in sorted(self.data.items())}
        return out


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (int, str, float, bool)) or x is None:
        return x
    return str(x)


def all_ok(verdicts) -> bool:
    return all(v.ok for v in verdicts)
