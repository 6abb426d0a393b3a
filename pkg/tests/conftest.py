import os
import random
import sys

import pytest

# Ensure project root is added to module path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.models.graph_model import GraphModel, Multigraph
from core.services.enumeration_service import EnumerationService
from core.store.filestore import FileStore

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


@pytest.fixture
def fixtures_dir() -> str:
    return FIXTURES


@pytest.fixture
def fixture_store() -> FileStore:
    return FileStore(FIXTURES)


def load_fixture_graph(name: str) -> Multigraph:
    return FileStore(FIXTURES).load_graph(name)


@pytest.fixture
def k3() -> Multigraph:
    return GraphModel.complete_graph(2)


@pytest.fixture
def k4() -> Multigraph:
    return GraphModel.complete_graph(3)


@pytest.fixture
def phi_walkthrough() -> Multigraph:
    return load_fixture_graph("phi_walkthrough.graph")


@pytest.fixture
def order_example() -> Multigraph:
    return load_fixture_graph("order_example.graph")


@pytest.fixture
def parallel_cycle() -> Multigraph:
    return load_fixture_graph("parallel_cycle.graph")


def random_multigraph(seed: int, max_n: int = 5, max_multiplicity: int = 3, max_trees: int = 40,
                      max_box: int = 400) -> Multigraph:
    """Random multigraph with at least one spanning tree, small enough for exhaustive checks"""
    rng = random.Random(seed)
    while True:
        n = rng.randint(1, max_n)
        counts = {}
        for tail in range(1, n + 1):
            for head in range(n + 1):
                if head != tail and rng.random() < 0.45:
                    counts[(tail, head)] = rng.randint(1, max_multiplicity)
            if rng.random() < 0.3:
                counts[(0, rng.randint(1, n))] = 1
        graph = Multigraph(n + 1, counts)
        box = 1
        for j in graph.non_root_vertices:
            box *= graph.out_degree(j)
        if box == 0 or box > max_box:
            continue
        trees = EnumerationService.count_spanning_trees(graph)
        if 1 <= trees <= max_trees:
            return graph


def random_symmetric_graph(seed: int, max_n: int = 4) -> Multigraph:
    """Random connected simple symmetric graph"""
    rng = random.Random(seed)
    while True:
        n = rng.randint(1, max_n)
        pairs = [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1) if rng.random() < 0.6]
        graph = GraphModel.from_edges(n + 1, [p for i, j in pairs for p in ((i, j), (j, i))])
        if len(graph.reaches_root()) == graph.vertex_count:
            return graph
