"""Small shared plumbing: wall-clock budgets and reproducible RNG streams."""

from __future__ import annotations

import hashlib
import random
import time

__all__ = ["Budget", "BudgetExceeded", "seeded_rng"]


class BudgetExceeded(Exception):
    """Raised when a computation runs past its wall-clock budget."""


class Budget:
    """A soft wall-clock limit; ``None`` seconds means unlimited."""

    __slots__ = ("deadline", "seconds")

    def __init__(self, seconds: float = None):
        self.seconds = seconds
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def exceeded(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def check(self):
        if self.exceeded():
            raise BudgetExceeded("budget of %.1fs exhausted" % self.seconds)


def seeded_rng(seed: int, *labels: str) -> random.Random:
    """An independent RNG stream derived from (seed, labels) via SHA-256.

    Streams with different labels are statistically independent and stable
    across runs and platforms, which keeps sampled-order experiments
    reproducible.
    """
    h = hashlib.sha256()
    h.update(str(int(seed)).encode())
    for lab in labels:
        h.update(b"\x00")
        h.update(str(lab).encode())
    return random.Random(int.from_bytes(h.digest()[:8], "big"))
