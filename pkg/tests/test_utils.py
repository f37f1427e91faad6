"""Tests for the utils module."""
import math

from mmrilp.utils import Deadline


def test_unlimited() -> None:
    """It never expires without a budget."""
    deadline = Deadline()
    assert not deadline.expired()
    assert deadline.remaining == math.inf
    assert deadline.limit() is None
    assert deadline.share(3) is None


def test_zero_budget() -> None:
    """It expires at once with a zero budget."""
    deadline = Deadline(0.0)
    assert deadline.expired()
    assert deadline.remaining == 0.0
    assert deadline.limit() == 0.0


def test_share_floor() -> None:
    """It gives every part at least the floor."""
    assert Deadline(0.0).share(4) == 1.0
    assert Deadline(0.0).share(4, floor=0.5) == 0.5


def test_share_split() -> None:
    """It splits the remaining budget evenly."""
    share = Deadline(1000.0, start=0.0).share(2, floor=0.0)
    assert share is not None and share <= 500.0
