"""Utilities."""
import math
import time
from dataclasses import dataclass
from dataclasses import field
from typing import Optional


@dataclass
class Deadline:
    """Wall-clock budget measured on the monotonic clock.

    A budget of None never expires.
    """

    budget: Optional[float] = None
    start: float = field(default_factory=time.monotonic)

    @property
    def elapsed(self) -> float:
        """Return the seconds since the deadline was created."""
        return time.monotonic() - self.start

    @property
    def remaining(self) -> float:
        """Return the seconds left, or infinity without a budget."""
        if self.budget is None:
            return math.inf
        return max(0.0, self.budget - self.elapsed)

    def expired(self) -> bool:
        """Return True if the budget is used up."""
        return self.budget is not None and self.elapsed >= self.budget

    def share(self, parts: int, floor: float = 1.0) -> Optional[float]:
        """Split the remaining budget evenly over ``parts`` pieces of work."""
        if self.budget is None:
            return None
        return max(floor, self.remaining / max(parts, 1))

    def limit(self) -> Optional[float]:
        """Return the remaining budget as a time limit for a nested solve."""
        return None if self.budget is None else self.remaining
