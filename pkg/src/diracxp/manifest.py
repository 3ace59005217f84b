"""Run manifests: every output file embeds or accompanies one."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone


@dataclass(frozen=True)
class RunManifest:
    """Echo of a run: command name, all input parameters, version, UTC time.

    Identical manifests (timestamp aside) imply identical numeric outputs;
    the computation itself never reads the manifest.
    """

    command: str
    parameters: dict
    tool_version: str
    timestamp: str

    @classmethod
    def create(cls, command: str, parameters: dict, tool_version: str) -> "RunManifest":
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return cls(
            command=command,
            parameters=dict(parameters),
            tool_version=tool_version,
            timestamp=stamp,
        )

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": dict(self.parameters),
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
        }
