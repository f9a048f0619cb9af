from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel


class CommandResult(BaseModel):
    status: Literal["ok", "error"]
    message: Optional[str] = None
    result: Optional[dict[str, Any]] = None

    def __repr__(self):
        return {"status": self.status, "message": self.message, "result": self.result}.__str__()

    def __call__(self, *args, **kwargs):
        return self.model_dump(mode="json")

    @property
    def ok(self) -> bool:
        return self.status == "ok"
