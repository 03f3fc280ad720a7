"""Access to the graph files shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .fileformat import GraphDocument, parse

__all__ = ["FIXTURE_NAMES", "fixture_path", "load_fixture"]

FIXTURE_NAMES = (
    "e8",
    "a2_min",
    "a2_nash",
    "bs_tneq0",
    "bs_t0",
    "smooth_ord0",
    "very_big",
)


def fixture_path(name: str) -> Path:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    with resources.as_file(resources.files(__package__) / "fixtures" / f"{name}.graph") as p:
        return p


def load_fixture(name: str) -> GraphDocument:
    return parse(fixture_path(name).read_text(encoding="utf-8"))
