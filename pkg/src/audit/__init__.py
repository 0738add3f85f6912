"""
Run journal

Contains:
- events: run event types and factories
- journal: append-only JSONL journal
"""

from src.audit.events import RunEventType, RunEvent
from src.audit.journal import IRunJournal, RunJournal, NullRunJournal

__all__ = [
    "RunEventType",
    "RunEvent",
    "IRunJournal",
    "RunJournal",
    "NullRunJournal",
]
