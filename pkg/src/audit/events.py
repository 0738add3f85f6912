"""
Run event types

Minimal event set of a run:
- RUN_START / RUN_END: command boundaries
- FIT_FAILURE: a restart or a whole fit diverged
- BOUND_VIOLATION: a packing or coverage check failed
- LAMBDA_SELECTED: tuning parameter chosen for a sample size
- SUMMARY: aggregate result of a run (slope, coverage, bounds)
- OUTPUT_WRITTEN: a file was written
- CONFIG_INVALID: configuration rejected
"""

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum, auto
from typing import Any, Dict, List, Optional


class RunEventType(Enum):
    """Run event type"""
    RUN_START = auto()
    RUN_END = auto()
    FIT_FAILURE = auto()
    BOUND_VIOLATION = auto()
    LAMBDA_SELECTED = auto()
    SUMMARY = auto()
    OUTPUT_WRITTEN = auto()
    CONFIG_INVALID = auto()


@dataclass
class RunEvent:
    """
    Run event

    Every event carries run_id, timestamp, event_type and reason; the
    other fields are set by the factory of its type.
    """
    run_id: str
    timestamp: datetime
    event_type: RunEventType
    reason: str

    command: Optional[str] = None
    config_hash: Optional[str] = None
    path: Optional[str] = None
    exit_code: Optional[int] = None
    cell: Optional[Dict[str, int]] = None

    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready dict with empty fields omitted"""
        d = {
            "ts": self.timestamp.isoformat(),
            "run": self.run_id,
            "type": self.event_type.name,
            "reason": self.reason,
        }
        if self.command:
            d["command"] = self.command
        if self.config_hash:
            d["config_hash"] = self.config_hash
        if self.path:
            d["path"] = self.path
        if self.exit_code is not None:
            d["exit_code"] = self.exit_code
        if self.cell:
            d["cell"] = self.cell
        if self.details:
            d["details"] = self.details
        return d

    @classmethod
    def run_start(cls, run_id: str, timestamp: datetime, command: str, config_hash: str) -> "RunEvent":
        return cls(
            run_id=run_id,
            timestamp=timestamp,
            event_type=RunEventType.RUN_START,
            reason=f"{command} started",
            command=command,
            config_hash=config_hash,
        )

    @classmethod
    def run_end(
        cls,
        run_id: str,
        timestamp: datetime,
        command: str,
        exit_code: int,
        reason: str = "",
        counts: Optional[Dict[str, int]] = None,
    ) -> "RunEvent":
        """counts: events of the run so far, by type name"""
        return cls(
            run_id=run_id,
            timestamp=timestamp,
            event_type=RunEventType.RUN_END,
            reason=reason or f"{command} finished",
            command=command,
            exit_code=exit_code,
            details={"events": dict(counts)} if counts else {},
        )

    @classmethod
    def fit_failure(
        cls,
        run_id: str,
        timestamp: datetime,
        reason: str,
        cell: Optional[Dict[str, int]] = None,
        restart: Optional[int] = None,
        iteration: Optional[int] = None,
    ) -> "RunEvent":
        details = {}
        if restart is not None:
            details["restart"] = restart
        if iteration is not None:
            details["iteration"] = iteration
        return cls(
            run_id=run_id,
            timestamp=timestamp,
            event_type=RunEventType.FIT_FAILURE,
            reason=reason,
            cell=cell,
            details=details,
        )

    @classmethod
    def bound_violation(
        cls,
        run_id: str,
        timestamp: datetime,
        check: str,
        value: float,
        bound: float,
        cell: Optional[Dict[str, Any]] = None,
    ) -> "RunEvent":
        return cls(
            run_id=run_id,
            timestamp=timestamp,
            event_type=RunEventType.BOUND_VIOLATION,
            reason=f"{check}: {value:.6g} > {bound:.6g}",
            cell=cell,
            details={"check": check, "value": value, "bound": bound},
        )

    @classmethod
    def lambda_selected(
        cls,
        run_id: str,
        timestamp: datetime,
        n: int,
        lam: float,
        rule: str,
        details: Optional[Dict[str, Any]] = None,
    ) -> "RunEvent":
        return cls(
            run_id=run_id,
            timestamp=timestamp,
            event_type=RunEventType.LAMBDA_SELECTED,
            reason=f"lambda={lam:.6g} for n={n} ({rule})",
            details={"n": n, "lambda": lam, "rule": rule, **(details or {})},
        )

    @classmethod
    def summary(cls, run_id: str, timestamp: datetime, command: str, details: Dict[str, Any]) -> "RunEvent":
        return cls(
            run_id=run_id,
            timestamp=timestamp,
            event_type=RunEventType.SUMMARY,
            reason=f"{command} summary",
            command=command,
            details=details,
        )

    @classmethod
    def output_written(cls, run_id: str, timestamp: datetime, path: str) -> "RunEvent":
        return cls(
            run_id=run_id,
            timestamp=timestamp,
            event_type=RunEventType.OUTPUT_WRITTEN,
            reason="output written",
            path=path,
        )

    @classmethod
    def config_invalid(
        cls,
        run_id: str,
        timestamp: datetime,
        violations: List[str],
        config_hash: Optional[str] = None,
    ) -> "RunEvent":
        return cls(
            run_id=run_id,
            timestamp=timestamp,
            event_type=RunEventType.CONFIG_INVALID,
            reason="Config validation failed",
            config_hash=config_hash,
            details={"violations": violations},
        )
