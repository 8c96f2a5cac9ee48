"""Short-term contextual memory: a day-indexed window of observation LVs.

Entries accumulate for window_days logical days and are handed to the
reasoner in one drain, after which the buffer forgets them and the window
advances, whether or not anything was stored. No entry is ever processed
twice.
"""

from __future__ import annotations

from typing import List

from .errors import WindowError
from .vocab import LatentVariable


class StcmBuffer:
    """Window buffer for per-visit observations.

    Accepts only LVs whose day lies inside the current window
    [window_start_day, window_start_day + window_days - 1]; a store outside
    it means the caller forgot to drain at the window boundary.
    """

    def __init__(self, window_days: int = 2, window_start_day: int = 0):
        if window_days < 1:
            raise ValueError("window_days must be a positive integer")
        self.window_days = int(window_days)
        self.window_start_day = int(window_start_day)
        self.entries: List[LatentVariable] = []

    @property
    def window_end_day(self) -> int:
        """Last day of the current window (inclusive)."""
        return self.window_start_day + self.window_days - 1

    def __len__(self) -> int:
        return len(self.entries)

    def store(self, lv: LatentVariable) -> None:
        if not self.window_start_day <= lv.day <= self.window_end_day:
            raise WindowError(
                f"day {lv.day} outside current window "
                f"[{self.window_start_day}, {self.window_end_day}]; drain first"
            )
        self.entries.append(lv)

    def drain_window(self) -> List[LatentVariable]:
        """Return all stored entries, empty the buffer, advance the window.

        The window advances by exactly window_days even when the drain is
        empty so the reporting cadence stays fixed.
        """
        drained = self.entries
        self.entries = []
        self.window_start_day += self.window_days
        return drained

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StcmBuffer)
            and self.window_days == other.window_days
            and self.window_start_day == other.window_start_day
            and self.entries == other.entries
        )

    def to_dict(self) -> dict:
        return {
            "windowDays": self.window_days,
            "windowStartDay": self.window_start_day,
            "entries": [lv.to_dict() for lv in self.entries],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StcmBuffer":
        buf = cls(
            window_days=int(data["windowDays"]),
            window_start_day=int(data["windowStartDay"]),
        )
        for entry in data["entries"]:
            buf.entries.append(LatentVariable.from_dict(entry))
        return buf
