from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class LinkCount:
    """A computed link component number and how it was obtained."""

    l: int
    method: str
    certificate: Any = None

    def to_json(self, certificate: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {"l": self.l, "method": self.method}
        if certificate and self.certificate is not None:
            out["certificate"] = self.certificate
        return out
