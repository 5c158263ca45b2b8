"""
Custom exception classes for the simulator.

Each error subclasses the closest builtin so callers that already catch
ValueError / RuntimeError keep working.
"""
from typing import Optional, Sequence


class InvalidSceneError(ValueError):
    """Raised when a scene, obstacle, trajectory or device violates its invariants."""


class RadioParameterError(ValueError):
    """Raised for invalid radio parameters or a non-positive link distance."""


class SimulationConfigError(ValueError):
    """Raised when a SimConfig fails validation, before any simulation step."""


class DuplicateContentError(ValueError):
    """Raised when a cache already holds the content being inserted."""

    def __init__(self, content_id: int):
        self.content_id = content_id
        super().__init__(f"Content already cached: {content_id}")


class ScenarioValidationError(ValueError):
    """
    Scenario file could not be parsed or failed schema validation.

    Attributes:
        path: Scenario file path (optional)
        diagnostics: (location, message) pairs, location being a dotted
            field path or "line N column M" for JSON syntax errors
    """

    def __init__(
        self,
        diagnostics: Sequence[tuple[str, str]],
        path: Optional[str] = None,
    ):
        self.path = path
        self.diagnostics = list(diagnostics)

        message = "Invalid scenario"
        if path is not None:
            message += f" {path}"
        details = "; ".join(f"{loc}: {msg}" for loc, msg in self.diagnostics)
        if details:
            message += f": {details}"

        super().__init__(message)


class ConservationError(RuntimeError):
    """
    Raised when generated != delivered + dropped + in-flight during a run.
    """

    def __init__(self, time_s: float, generated: int, delivered: int, dropped: int, in_flight: int):
        self.time_s = time_s
        self.generated = generated
        self.delivered = delivered
        self.dropped = dropped
        self.in_flight = in_flight
        super().__init__(
            f"Content conservation broken at t={time_s:.6f}s: generated={generated} "
            f"delivered={delivered} dropped={dropped} in_flight={in_flight}"
        )
