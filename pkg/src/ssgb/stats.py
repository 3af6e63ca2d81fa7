from __future__ import annotations

from dataclasses import asdict, dataclass, fields


@dataclass
class RunStats:
    """Counters for one computation; serialized as a flat JSON object."""

    iterations: int = 0
    pairs_generated: int = 0
    pairs_pruned: int = 0
    zero_reductions: int = 0
    reduction_steps: int = 0
    basis_size_raw: int = 0
    basis_size_reduced: int = 0
    wall_time: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def keys(cls) -> list[str]:
        return [f.name for f in fields(cls)]
