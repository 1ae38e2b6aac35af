"""Threshold helpers shared by the filters.

Each helper returns `None` when the value passes, or a formatted message when it does not.  Filters turn the
message into the `detail` of a `DropDecision`.
"""

from . import messages


def value_within(value, low, high, message=messages.DURATION_OUT_OF_RANGE):
    """
    Check `low <= value <= high` (both bounds keep).

    `value` number to test
    `low`, `high` inclusive bounds
    `message` template taking `value`, `low` and `high`
    """
    if value < low or value > high:
        return message.format(value=value, low=low, high=high)
    return None


def value_not_above(value, limit, message):
    """
    Check `value <= limit`.  Exactly `limit` passes, matching "greater than" wording for drop thresholds.
    """
    if value > limit:
        return message.format(value=value, limit=limit)
    return None


def bounds_are_ordered(low, high, name):
    if low < 0 or high < 0:
        return "{} bounds must be non-negative, got [{}, {}]".format(name, low, high)
    if not low < high:
        return "{} minimum must be below maximum, got [{}, {}]".format(name, low, high)
    return None


__all__ = ["value_within", "value_not_above", "bounds_are_ordered"]
