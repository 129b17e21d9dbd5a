"""Eternal and m-eternal domination on graphs and trees."""

from .characterize import ClassificationReport, classify
from .game import GameNumbers, GuardConfig, Model, WinningFamily, defend, eternal_numbers, solve
from .graph import Graph, Tree, enumerate_trees, parse_graph, random_tree, validate_tree
from .invariants import connected_domination_number, domination_number, independence_number
from .neocolon import NeoColonization, theta_c

__all__ = [
    "ClassificationReport",
    "GameNumbers",
    "Graph",
    "GuardConfig",
    "Model",
    "NeoColonization",
    "Tree",
    "WinningFamily",
    "classify",
    "connected_domination_number",
    "defend",
    "domination_number",
    "enumerate_trees",
    "eternal_numbers",
    "independence_number",
    "parse_graph",
    "random_tree",
    "solve",
    "theta_c",
    "validate_tree",
]
