"""Pass/fail records shared by every verification routine."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    witness: Any = None
    elapsed: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": bool(self.ok), "detail": self.detail}
        if self.witness is not None and not self.ok:
            out["witness"] = str(self.witness)
        return out

    def line(self, timed: bool = True) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f" [{self.elapsed:.3f}s]" if timed else ""
        detail = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name}{detail}{tail}"


def timed(name: str, fn: Callable[[], "Check | bool"]) -> Check:
    """Run ``fn``; exceptions become failed checks rather than crashes."""
    t0 = time.perf_counter()
    try:
        res = fn()
    except Exception as exc:  # noqa: BLE001 - reported as a failure
        res = Check(name, False, f"{type(exc).__name__}: {exc}")
    if not isinstance(res, Check):
        res = Check(name, bool(res))
    res.name = name
    res.elapsed = time.perf_counter() - t0
    return res
