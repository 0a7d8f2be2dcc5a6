import json
import time
from dataclasses import asdict, dataclass, field
from importlib import metadata
from typing import Dict, List

from harness.io import ensure_writable


def library_version() -> str:
    try:
        return metadata.version("subrec")
    except metadata.PackageNotFoundError:
        return "0.1.0"


@dataclass
class RunManifest:
    """一次命令运行的记录；除 duration_seconds 外重复运行应完全一致"""
    command: List[str]
    config: dict
    seeds: List[int] = field(default_factory=list)
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)
    duration_seconds: float = 0.0
    version: str = field(default_factory=library_version)
    _started: float = field(default_factory=time.perf_counter, repr=False)

    def finish(self):
        self.duration_seconds = time.perf_counter() - self._started

    def to_dict(self) -> dict:
        payload = asdict(self)
        payload.pop('_started')
        return payload

    def write(self, path, force: bool = False):
        ensure_writable(path, force)
        with open(path, "w", encoding="utf-8", newline="\n") as file:
            file.write(json.dumps(self.to_dict(), indent=2, default=str))
            file.write("\n")


def manifest_path(out_path) -> str:
    return f"{out_path}.manifest.json"
