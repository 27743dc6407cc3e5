"""
Verbosity levels of the NDJSON log records. The names match the `verbosity`
config key and the --verbosity flag; NONE silences every *_log record while
results and reports are still printed.
"""

from enum import IntEnum
from typing import Optional


class LogLevel(IntEnum):
    DEBUG = 0
    INFO = 1
    WARN = 2
    NONE = 3

    @classmethod
    def from_verbosity(cls, name: str) -> "LogLevel":
        """Unknown names fall back to INFO; argparse and the config loader restrict the choices."""
        return cls.__members__.get(name.upper(), cls.INFO)

    @classmethod
    def for_record(cls, record_type: str) -> Optional["LogLevel"]:
        """Level of a "<level>_log" record type, None for results, reports and errors."""
        if not record_type.endswith("_log"):
            return None
        return cls.__members__.get(record_type[: -len("_log")].upper())
