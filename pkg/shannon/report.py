"""
Report documents: one pretty, key-sorted JSON file per verification run.
Report files are append-only; an existing path is never overwritten.
"""

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from shannon import __version__
from shannon.emitter import _default
from shannon.errors import ConfigError

SCHEMA_VERSION = 1


@dataclass
class ReportDocument:
    config: Dict[str, Any]
    results: List[Dict[str, Any]]
    intervals: Dict[str, Any] = field(default_factory=dict)
    certificates: List[Dict[str, Any]] = field(default_factory=list)
    cache_stats: Optional[Dict[str, int]] = None
    summary: Dict[str, Any] = field(default_factory=dict)
    timestamp: str = field(default_factory=lambda: time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()))
    tool_version: str = __version__

    @classmethod
    def from_verification(cls, report, config: Dict[str, Any], cache_stats=None) -> "ReportDocument":
        return cls(
            config=config,
            results=[r.to_dict() for r in report.results],
            intervals=report.intervals,
            certificates=report.certificates,
            cache_stats=dict(cache_stats) if cache_stats is not None else None,
            summary={
                "seed": report.seed,
                "hard_failures": report.hard_failures,
                "counts_by_status": report.counts_by_status,
                "exit_code": report.exit_code,
            },
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
            "config": self.config,
            "summary": self.summary,
            "results": self.results,
            "intervals": self.intervals,
            "certificates": self.certificates,
            "cache_stats": self.cache_stats,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False, default=_default) + "\n"


def default_report_path(report_dir: str, seed: int) -> Path:
    stamp = time.strftime("%Y%m%dT%H%M%S", time.gmtime())
    return Path(report_dir).expanduser() / f"report-{seed}-{stamp}.json"


def write_report(document: ReportDocument, path: Path) -> Path:
    """Write to `path`; when it exists, a numbered sibling is used instead."""
    path = Path(path).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    candidate = path
    counter = 1
    while candidate.exists():
        candidate = path.with_name(f"{path.stem}.{counter}{path.suffix}")
        counter += 1
    try:
        with open(candidate, "x", encoding="utf-8") as f:
            f.write(document.to_json())
    except OSError as e:
        raise ConfigError(f"Cannot write report to {candidate}: {e}")
    return candidate
