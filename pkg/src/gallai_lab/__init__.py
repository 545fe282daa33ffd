"""Exact search, constructions and structure checks for Gallai-Ramsey problems on matchings."""

from .coloring import EdgeColoring, build_coloring, canonical_form
from .patterns import SubgraphPattern, parse_pattern

__version__ = "0.1.0"

__all__ = ["EdgeColoring", "SubgraphPattern", "build_coloring", "canonical_form", "parse_pattern"]
