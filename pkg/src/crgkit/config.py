from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .groups import DEFAULT_ORDER_BOUND, ReflectionGroup, build_gde, default_data_dir, load_exceptional

FORMATS = ("json", "csv", "md")


@dataclass(frozen=True)
class RunConfig:
    """Which group to build and how to report on it."""

    d: int | None = None
    e: int | None = None
    r: int | None = None
    exceptional: str | None = None
    data_dir: Path = field(default_factory=default_data_dir)
    fmt: str = "json"
    bound: int = DEFAULT_ORDER_BOUND
    jobs: int = 1

    def __post_init__(self):
        triple = (self.d, self.e, self.r)
        has_triple = any(x is not None for x in triple)
        if has_triple == (self.exceptional is not None):
            raise ValueError("give exactly one of --d/--e/--r or --exceptional")
        if has_triple and any(x is None or x < 1 for x in triple):
            raise ValueError("--d, --e and --r must all be positive integers")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.bound < 1:
            raise ValueError("order bound must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    def build(self) -> ReflectionGroup:
        if self.exceptional is not None:
            return load_exceptional(self.exceptional, self.data_dir, self.bound)
        return build_gde(self.d, self.e, self.r, self.bound)
