import json
import sys
from typing import Any, Callable, Dict

from shannon.log_levels import LogLevel

# Process-wide level for the categorized log records.
_log_level: LogLevel = LogLevel.INFO

# Records that form the machine-readable output of a command.
_STDOUT_TYPES = {"result", "report"}


def set_log_level(level_str: str):
    """Sets the process log level from its string name."""
    global _log_level
    _log_level = LogLevel.from_verbosity(level_str)


def get_log_level() -> LogLevel:
    return _log_level


def _default(obj: Any):
    # numpy scalars, sets and dataclass-like objects that expose to_dict()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if hasattr(obj, "item"):
        return obj.item()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def emit(msg_type: str, data: dict):
    """
    Emits a structured message as NDJSON.
    Log records are filtered by the configured level and written to stderr;
    results and reports always go to stdout, errors always go to stderr.
    """
    level = LogLevel.for_record(msg_type)
    if level is not None and level < _log_level:
        return

    payload = {"type": msg_type, **data}
    stream = sys.stdout if msg_type in _STDOUT_TYPES else sys.stderr
    print(json.dumps(payload, default=_default), file=stream, flush=True)


def null_emit(msg_type: str, data: dict):
    """Drops every record; used where a component runs silently."""
    return None


_EmitterCallable = Callable[[str, Dict[str, Any]], None]
