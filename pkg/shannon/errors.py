"""Exception hierarchy shared by the library and the command line."""

from typing import Any, Dict, Optional, Tuple


class ShannonError(Exception):
    """Base class; `exit_code` follows the CLI exit-code contract."""

    exit_code = 1

    def details(self) -> Dict[str, Any]:
        return {}


class ParameterError(ShannonError, ValueError):
    exit_code = 2


class GraphFormatError(ShannonError, ValueError):
    exit_code = 2

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset

    def details(self) -> Dict[str, Any]:
        return {"offset": self.offset}


class PolynomialSyntaxError(ShannonError, ValueError):
    exit_code = 2

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset

    def details(self) -> Dict[str, Any]:
        return {"offset": self.offset}


class ConfigError(ShannonError):
    exit_code = 2


class SizeError(ShannonError):
    exit_code = 3

    def __init__(self, vertices: int, budget: int):
        super().__init__(
            f"Result would have {vertices} vertices, exceeding the vertex budget {budget}"
        )
        self.vertices = vertices
        self.budget = budget

    def details(self) -> Dict[str, Any]:
        return {"vertices": self.vertices, "budget": self.budget}


class BudgetError(ShannonError):
    """The α search ran out of nodes or time. Carries the best set found so far."""

    exit_code = 3

    def __init__(
        self,
        message: str,
        nodes: int = 0,
        elapsed: float = 0.0,
        best: Optional[Tuple[int, ...]] = None,
    ):
        super().__init__(message)
        self.nodes = nodes
        self.elapsed = elapsed
        self.best = tuple(best) if best is not None else ()

    def details(self) -> Dict[str, Any]:
        return {
            "nodes": self.nodes,
            "elapsed": self.elapsed,
            "best_lower_bound": len(self.best),
            "best_witness": list(self.best),
        }


class ConvergenceError(ShannonError):
    exit_code = 3

    def __init__(self, message: str, best_gap: float, lower_cert: float, upper_cert: float):
        super().__init__(message)
        self.best_gap = best_gap
        self.lower_cert = lower_cert
        self.upper_cert = upper_cert

    def details(self) -> Dict[str, Any]:
        return {
            "best_gap": self.best_gap,
            "lower_cert": self.lower_cert,
            "upper_cert": self.upper_cert,
        }


class NoLowerBoundError(ShannonError):
    exit_code = 3

    def __init__(self, skipped):
        super().__init__(
            f"Every power was skipped; no lower bound available ({len(skipped)} skipped)"
        )
        self.skipped = list(skipped)

    def details(self) -> Dict[str, Any]:
        return {"skipped": self.skipped}


class FittingViolationError(ShannonError, ValueError):
    exit_code = 2

    def __init__(self, message: str, entry: Tuple[int, int]):
        super().__init__(message)
        self.entry = entry

    def details(self) -> Dict[str, Any]:
        return {"entry": list(self.entry)}


class DerivationFailedError(ShannonError):
    exit_code = 1

    def __init__(self, deficit: float):
        super().__init__(
            f"Sum-strictness derivation failed: margin deficit {deficit!r} at the squared level"
        )
        self.deficit = deficit

    def details(self) -> Dict[str, Any]:
        return {"deficit": self.deficit}


class CacheCoherenceError(ShannonError):
    """A cached α value disagreed with a fresh solve under --verify-cache."""

    exit_code = 1

    def __init__(self, key: str, cached: int, fresh: int, reason: Optional[str] = None):
        super().__init__(reason or f"Cached alpha {cached} differs from fresh solve {fresh}")
        self.key = key
        self.cached = cached
        self.fresh = fresh
        self.reason = reason

    def details(self) -> Dict[str, Any]:
        return {"key": self.key, "cached": self.cached, "fresh": self.fresh, "reason": self.reason}
