"""Logging and metrics"""

from src.telemetry.logging import configure_logging
from src.telemetry.metrics import record_exploration

__all__ = ["configure_logging", "record_exploration"]
