"""
trailrpq: regular path queries under trail semantics.

Classify a regular language by the complexity of its trail queries, answer
queries with a shortest matching trail, enumerate all matching trails and
build hardness reductions for languages outside the tractable class.
"""
from .automata import MinimalDfa, compile_language
from .classify import ClassificationReport, HardnessWitness, Trichotomy, classify, is_ttract
from .enumeration import enumerate_trails
from .errors import TrailRpqError
from .graphdb import LabeledGraph, Trail, load_graph
from .trailquery import Engine, QueryResult, solve

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport",
    "Engine",
    "HardnessWitness",
    "LabeledGraph",
    "MinimalDfa",
    "QueryResult",
    "Trail",
    "TrailRpqError",
    "Trichotomy",
    "classify",
    "compile_language",
    "enumerate_trails",
    "is_ttract",
    "load_graph",
    "solve",
]
