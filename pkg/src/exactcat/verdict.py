"""Three-valued verdicts with certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

BOUNDED = "BOUNDED"


@dataclass
class Decision:
    """``verdict`` is True, False or :data:`BOUNDED` (search exhausted its bound).

    ``witness`` holds certificates (maps, sequences, squares); ``bound`` names
    the bound a BOUNDED verdict depends on.
    """

    verdict: object
    reason: str = ""
    witness: dict = field(default_factory=dict)
    bound: dict | None = None

    def __bool__(self):
        return self.verdict is True

    @property
    def is_bounded(self) -> bool:
        return self.verdict == BOUNDED


def conj(verdicts):
    """Three-valued AND: any False wins, then any BOUNDED."""
    verdicts = list(verdicts)
    if any(v is False for v in verdicts):
        return False
    if any(v == BOUNDED for v in verdicts):
        return BOUNDED
    return True
