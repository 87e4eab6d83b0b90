"""
Shared fixtures and hypothesis strategies: the four small graphs where (ab)* has matching trails,
and the named languages used across the suites.
"""
import random

import pytest
from hypothesis import strategies as st

from .config import reset_settings
from .generators import random_minimal_dfa, random_regex
from .graphdb import LabeledGraph, load_graph

# Graph name -> (file text, shortest matching trail length for (ab)*, number of matching trails)
SAMPLE_GRAPHS = {
    "g1": ("s a v1\nv1 b v2\nv2 a v1\nv1 b t\n", 2, 2),
    "g2": ("s a v1\nv1 b t\nt a v1\n", 2, 1),
    "g3": ("s b t\ns a t\nt b v1\nv1 a s\n", 4, 1),
    "g4": ("s a v3\nv3 a x\nx b t\nv1 b v3\nv3 b v2\nv2 a v1\n", 6, 1),
}

TTRACT_LANGUAGES = ["(ab)*", "(abc)*", "a*bc*", "b*", "(a+b)*b", "ab"]
NON_TTRACT_LANGUAGES = ["a*ba*", "(aa)*", "(aba)*", "(a+b)*a(a+b)*", "(ac*bc*)*", "a*ba*(cd)*"]
DOWNWARD_CLOSED_LANGUAGES = ["b*", "(a+b)*", "a?b*"]


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from default settings, independent of the caller's environment."""
    for variable in (
        "TRAILRPQ_STATE_CAP",
        "TRAILRPQ_ORACLE_MAX_EDGES",
        "TRAILRPQ_ENUM_ORACLE_MAX_EDGES",
        "TRAILRPQ_SUMMARY_BUDGET",
        "TRAILRPQ_SUMMARY_MAX_K",
        "TRAILRPQ_SEED",
        "TRAILRPQ_JOBS",
        "TRAILRPQ_LOG_LEVEL",
    ):
        monkeypatch.delenv(variable, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def sample_graphs():
    return {name: load_graph(text) for name, (text, _, _) in SAMPLE_GRAPHS.items()}


@pytest.fixture
def rng():
    return random.Random(20230613)


def alternating_cycle(length: int) -> LabeledGraph:
    """Cycle c0 -a-> c1 -b-> c2 -a-> ... back to c0."""
    return LabeledGraph(
        [(f"c{i}", "a" if i % 2 == 0 else "b", f"c{(i + 1) % length}") for i in range(length)]
    )


# Hypothesis strategies drawing seeded instances from the generators
minimal_dfas = st.builds(
    lambda seed, states: random_minimal_dfa(random.Random(seed), states, "ab"),
    st.integers(0, 2**32 - 1),
    st.integers(1, 4),
)
regex_trees = st.builds(
    lambda seed, depth: random_regex(random.Random(seed), depth, "ab"),
    st.integers(0, 2**32 - 1),
    st.integers(0, 5),
)
