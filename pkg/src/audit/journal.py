"""
Run journal

Events go to <output_dir>/run_events.jsonl, one JSON object per line. The
file is only appended to, so consecutive runs in one output directory share
it; reads load it into a pandas frame and filter by run and event type.
"""

import json
from abc import ABC, abstractmethod
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd

from src.audit.events import RunEvent, RunEventType

DEFAULT_FILENAME = "run_events.jsonl"
EVENT_COLUMNS = ["ts", "run", "type", "reason", "command", "config_hash", "path", "exit_code", "cell", "details"]


def _empty_events() -> pd.DataFrame:
    return pd.DataFrame(columns=EVENT_COLUMNS)


class IRunJournal(ABC):
    run_id: str = ""

    @abstractmethod
    def write(self, event: RunEvent) -> None:
        pass

    @abstractmethod
    def events(
        self,
        types: Optional[Sequence[RunEventType]] = None,
        run_id: Optional[str] = None,
        since: Optional[datetime] = None,
        until: Optional[datetime] = None,
    ) -> pd.DataFrame:
        """Events in file order, one row per event, columns EVENT_COLUMNS"""
        pass

    def counts(self, run_id: Optional[str] = None) -> Dict[str, int]:
        """Number of events of each type, keyed by type name"""
        frame = self.events(run_id=run_id)
        return {str(k): int(v) for k, v in frame["type"].value_counts().sort_index().items()}

    def close(self) -> None:
        pass

    def __enter__(self) -> "IRunJournal":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()


class RunJournal(IRunJournal):
    """JSONL journal file; every write opens, appends one line and closes"""

    def __init__(self, output_dir: str, run_id: str = "", filename: str = DEFAULT_FILENAME):
        output_dir = Path(output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        self.path = output_dir / filename
        self.run_id = run_id
        self.written = 0

    def write(self, event: RunEvent) -> None:
        line = json.dumps(event.to_dict(), ensure_ascii=False, default=str)
        with self.path.open("a", encoding="utf-8") as f:
            f.write(line + "\n")
        self.written += 1

    def _records(self) -> List[dict]:
        if not self.path.exists():
            return []
        records = []
        for line in self.path.read_text(encoding="utf-8").splitlines():
            try:
                record = json.loads(line)
                record["ts"] = datetime.fromisoformat(record["ts"])
            except (json.JSONDecodeError, TypeError, KeyError, ValueError):
                continue
            if "type" in record:
                records.append(record)
        return records

    def events(
        self,
        types: Optional[Sequence[RunEventType]] = None,
        run_id: Optional[str] = None,
        since: Optional[datetime] = None,
        until: Optional[datetime] = None,
    ) -> pd.DataFrame:
        records = self._records()
        if not records:
            return _empty_events()
        frame = pd.DataFrame.from_records(records, columns=EVENT_COLUMNS)
        frame["ts"] = pd.to_datetime(frame["ts"])

        keep = pd.Series(True, index=frame.index)
        if types:
            keep &= frame["type"].isin([t.name for t in types])
        if run_id is not None:
            keep &= frame["run"] == run_id
        if since is not None:
            keep &= frame["ts"] >= pd.Timestamp(since)
        if until is not None:
            keep &= frame["ts"] <= pd.Timestamp(until)
        return frame[keep].reset_index(drop=True)


class NullRunJournal(IRunJournal):
    """Drops every event (library calls and tests)"""

    def write(self, event: RunEvent) -> None:
        pass

    def events(
        self,
        types: Optional[Sequence[RunEventType]] = None,
        run_id: Optional[str] = None,
        since: Optional[datetime] = None,
        until: Optional[datetime] = None,
    ) -> pd.DataFrame:
        return _empty_events()
