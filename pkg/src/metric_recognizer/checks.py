from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    """Outcome of a boolean predicate with its failure evidence.

    Truthiness follows ``ok``. On failure ``witness`` holds the
    lexicographically smallest violating index tuple (0-based) and ``values``
    the quantities that make it a violation. ``detail`` carries optional
    by-products such as a 2-coloring.
    """

    ok: bool
    witness: tuple[int, ...] = ()
    values: tuple = ()
    detail: Any = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.ok


PASS = Check(True)
