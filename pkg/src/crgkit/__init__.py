"""Exact ramification data for complex reflection groups."""

from .groups import ReflectionGroup, build_gde, load_exceptional
from .reflections import get_arrangement

__all__ = ["ReflectionGroup", "build_gde", "load_exceptional", "get_arrangement"]
__version__ = "0.1.0"
