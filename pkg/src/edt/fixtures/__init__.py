"""Small graphs used throughout the tests and the CLI examples."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..graph import Graph, parse_graph

NAMES = (
    "p3",
    "p4",
    "p6",
    "k1_3",
    "corona_p3",
    "spider_333",
    "c6",
    "prop51_graph",
    "sec7_tree",
)


def fixture_path(name: str) -> Path:
    return Path(str(resources.files(__package__).joinpath(f"{name}.el")))


def load(name: str) -> Graph:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}")
    return parse_graph(fixture_path(name).read_text(encoding="utf-8"))
