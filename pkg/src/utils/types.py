"""
Type definitions
"""

from typing import NewType

# Run ID: format r{YYYYMMDD}_{HHmmss}
RunId = NewType("RunId", str)

# Config Hash: first 8 hex chars of the SHA256 of the resolved config
ConfigHash = NewType("ConfigHash", str)
