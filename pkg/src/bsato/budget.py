"""Optional wall-clock budget for long symbolic expansions.

Weyl-algebra expansion is factorial in the matrix size, so the CLI exposes a
--max-seconds flag.  Hot loops call tick(); when a deadline is armed and
passed, ResourceBudgetExceeded aborts the expansion cleanly.
"""

from __future__ import annotations

import time


class ResourceBudgetExceeded(RuntimeError):
    """The configured --max-seconds budget ran out."""


_deadline = None
_counter = 0
_CHECK_EVERY = 2048


def set_deadline(seconds):
    """Arm (seconds > 0) or disarm (None) the global budget."""
    global _deadline, _counter
    _counter = 0
    _deadline = None if seconds is None else time.monotonic() + float(seconds)


def tick():
    global _counter
    if _deadline is None:
        return
    _counter += 1
    if _counter >= _CHECK_EVERY:
        _counter = 0
        if time.monotonic() > _deadline:
            raise ResourceBudgetExceeded("computation exceeded the time budget")
