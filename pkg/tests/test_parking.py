"""
Recognition and enumeration of G-parking functions
"""

from itertools import product

import pytest

from conftest import random_multigraph
from core.models.graph_model import GraphModel, Multigraph
from core.models.order_model import BreadthFirstOrder
from core.models.parking_model import NotParkingFunctionError, ParkingCandidate, ParkingModel
from core.services.bijection_service import BijectionService
from core.services.parking_service import ParkingService
from core.utils.validators import ValidationError


def test_k3_rejects_one_one(k3):
    b = ParkingCandidate.of(1, 1)
    verdict = ParkingService.is_parking_definitional(k3, b)
    assert not verdict
    assert verdict.witness == frozenset({1, 2})
    burn = ParkingService.is_parking_burning(k3, b)
    assert not burn.accepted
    assert burn.stuck == frozenset({1, 2})


def test_k4_largest_witness(k4):
    verdict = ParkingService.is_parking_definitional(k4, ParkingCandidate.of(2, 2, 2))
    assert verdict.witness == frozenset({1, 2, 3})


@pytest.mark.parametrize("values", [(0, 0, 0), (0, 1, 2), (2, 1, 0), (1, 0, 0)])
def test_k4_accepts_classical_parking_functions(k4, values):
    b = ParkingCandidate(values)
    assert ParkingService.is_parking_definitional(k4, b)
    assert ParkingService.is_parking_burning(k4, b).accepted


def test_burning_waves(k4):
    burn = ParkingService.is_parking_burning(k4, ParkingCandidate.of(0, 1, 2))
    assert burn.waves == (frozenset({0}), frozenset({1}), frozenset({2}), frozenset({3}))
    assert burn.wave_of(3) == 3
    assert ParkingService.is_parking_burning(k4, ParkingCandidate.of(0, 0, 0)).waves[1] == frozenset({1, 2, 3})


def test_value_at_out_degree_is_rejected(k4):
    assert not ParkingService.is_parking(k4, ParkingCandidate.of(0, 0, 3))


def test_enumeration_counts():
    assert len(ParkingService.enumerate_parking_functions(GraphModel.complete_graph(3))) == 16
    assert len(ParkingService.enumerate_parking_functions(GraphModel.complete_graph(4))) == 125


def test_enumeration_is_lexicographic(k3):
    found = ParkingService.enumerate_parking_functions(k3)
    assert [tuple(b) for b in found] == [(0, 0), (0, 1), (1, 0)]


def test_vertex_without_out_edges_has_no_parking_function():
    graph = Multigraph(3, {(1, 0): 1})
    assert ParkingService.enumerate_parking_functions(graph) == []


def test_length_mismatch_is_rejected(k4):
    with pytest.raises(ValidationError):
        ParkingService.is_parking_burning(k4, ParkingCandidate.of(0, 0))


def test_candidate_validation():
    with pytest.raises(ValidationError):
        ParkingCandidate.of(0, -1)
    assert ParkingModel.parse_candidate("  0 1\t2 ").values == (0, 1, 2)
    assert ParkingModel.parse_candidate("").values == ()
    with pytest.raises(ValidationError):
        ParkingModel.parse_candidate("0 x")
    with pytest.raises(ValidationError):
        ParkingModel.parse_candidate("0 1\n2\n")
    with pytest.raises(ValidationError):
        ParkingModel.parse_candidate("0\x001 2")


def _phi_accepts(graph: Multigraph, b: ParkingCandidate) -> bool:
    try:
        BijectionService.phi(graph, b, BreadthFirstOrder())
    except NotParkingFunctionError:
        return False
    return True


@pytest.mark.parametrize("seed", range(40))
def test_checkers_agree_on_random_graphs(seed):
    graph = random_multigraph(seed, max_n=4)
    for b in ParkingService.candidate_box(graph):
        definitional = ParkingService.is_parking_definitional(graph, b).accepted
        burning = ParkingService.is_parking_burning(graph, b).accepted
        assert definitional == burning == _phi_accepts(graph, b), f"disagreement on ({b})"


def test_checkers_agree_on_k4_box(k4):
    for values in product(range(3), repeat=3):
        b = ParkingCandidate(values)
        assert ParkingService.is_parking_definitional(k4, b).accepted == ParkingService.is_parking(k4, b)


def test_size_cap(monkeypatch):
    from core.utils import settings as settings_module
    from core.utils.settings import Settings
    from core.utils.validators import LimitExceededError

    monkeypatch.setattr(settings_module, "settings", Settings(max_n=2))
    with pytest.raises(LimitExceededError):
        ParkingService.enumerate_parking_functions(GraphModel.complete_graph(3))
    # Burning is polynomial and stays available past the cap
    assert ParkingService.is_parking(GraphModel.complete_graph(3), ParkingCandidate.of(0, 0, 0))


@pytest.mark.parametrize("seed", range(15))
def test_lowering_a_value_keeps_a_parking_function(seed):
    graph = random_multigraph(seed, max_n=4)
    for b in ParkingService.enumerate_parking_functions(graph):
        for j in graph.non_root_vertices:
            if b.value(j) > 0:
                lowered = list(b.values)
                lowered[j - 1] -= 1
                assert ParkingService.is_parking(graph, ParkingCandidate(tuple(lowered))), f"({b}) at {j}"
