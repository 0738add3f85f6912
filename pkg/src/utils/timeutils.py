"""
Time helpers
"""

from datetime import datetime

from src.utils.types import RunId


def generate_run_id(timestamp: datetime = None) -> RunId:
    """
    Generate a run ID

    Format: r{YYYYMMDD}_{HHmmss}
    Example: r20250629_143000
    """
    if timestamp is None:
        timestamp = datetime.now()
    return RunId(f"r{timestamp.strftime('%Y%m%d_%H%M%S')}")
