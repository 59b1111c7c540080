import os
import sys

import hypothesis
import pytest

from cvdchordal.graph import WeightedGraph

sys.path.insert(0, os.path.dirname(__file__))

hypothesis.settings.register_profile("fast", max_examples=25)
hypothesis.settings.register_profile("thorough", max_examples=300)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fast"))

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

# 14-vertex running example: a hub at vertex 1 with pendant paths, a second
# hub at 2 with pendants and a triangle chain; 11 maximal cliques.
FIGURE_EDGES = [(6, 3), (3, 1), (7, 5), (5, 1), (4, 1), (1, 0), (1, 2), (2, 0),
                (8, 2), (2, 9), (12, 10), (10, 2), (13, 11), (11, 2),
                (10, 11), (11, 12), (12, 13)]
FIGURE_PSI_UNIT = 11          # brute-force value with unit weights, pinned


@pytest.fixture
def figure_graph() -> WeightedGraph:
    return WeightedGraph(14, FIGURE_EDGES)


@pytest.fixture
def figure_file() -> str:
    return os.path.join(DATA_DIR, "figure1.cvd")
