"""
Drivers and spots, the spot rule and labeled Dyck paths
"""

from itertools import product

import pytest

from core.models.classical_model import NORTH, ClassicalModel, LabeledDyckPath, east
from core.models.graph_model import GraphModel
from core.models.order_model import DepthFirstOrder, VertexAddingOrder
from core.models.parking_model import NotParkingFunctionError, ParkingCandidate
from core.models.tree_model import TreeModel
from core.services.bijection_service import BijectionService
from core.services.classical_service import ClassicalService
from core.services.parking_service import ParkingService
from core.utils.validators import ValidationError


def test_distinct_favourites_in_order():
    outcome = ClassicalService.park_simulate(ParkingCandidate.of(0, 1, 2))
    assert outcome.success
    assert outcome.spot_of_driver == {1: 0, 2: 1, 3: 2}


def test_shared_favourite_moves_on():
    outcome = ClassicalService.park_simulate(ParkingCandidate.of(0, 0, 1))
    assert outcome.spot_of_driver == {1: 0, 2: 1, 3: 2}
    assert outcome.driver_at(1) == 2


def test_failure_names_driver():
    outcome = ClassicalService.park_simulate(ParkingCandidate.of(2, 2, 2))
    assert not outcome.success
    assert outcome.failing_driver == 2
    assert outcome.spot_of_driver is None
    assert not ClassicalService.park_simulate(ParkingCandidate.of(0, 5)).success


@pytest.mark.parametrize("n", range(1, 6))
def test_simulation_matches_complete_graph(n):
    graph = GraphModel.complete_graph(n)
    for values in product(range(n), repeat=n):
        b = ParkingCandidate(values)
        assert ClassicalService.park_simulate(b).success == ParkingService.is_parking_burning(graph, b).accepted


def test_spot_rule_examples():
    graph = GraphModel.complete_graph(3)
    assert ClassicalService.tree_from_spot_rule(ParkingCandidate.of(0, 0, 1)) == \
        TreeModel.from_parents(graph, {1: 0, 2: 0, 3: 1})
    assert ClassicalService.tree_from_spot_rule(ParkingCandidate.of(0, 0, 0)) == \
        TreeModel.from_parents(graph, {1: 0, 2: 0, 3: 0})
    chain = ClassicalService.tree_from_spot_rule(ParkingCandidate.of(0, 1, 2, 3))
    assert chain == TreeModel.from_parents(GraphModel.complete_graph(4), {1: 0, 2: 1, 3: 2, 4: 3})


def test_spot_rule_rejects_non_parking():
    with pytest.raises(NotParkingFunctionError):
        ClassicalService.tree_from_spot_rule(ParkingCandidate.of(2, 2, 2))


def test_rejection_reports_unattached_vertices():
    # driver 3 is the one left without a spot, but vertices 2 and 3 are both unattached
    with pytest.raises(NotParkingFunctionError) as info:
        ClassicalService.parking_to_dyck(ParkingCandidate.of(0, 2, 2))
    assert info.value.step == 2
    assert info.value.stuck == frozenset({2, 3})


def test_rejection_matches_phi_on_complete_graph():
    graph = GraphModel.complete_graph(3)
    for values in product(range(4), repeat=3):
        b = ParkingCandidate(values)
        if ClassicalService.park_simulate(b).success:
            continue
        with pytest.raises(NotParkingFunctionError) as from_phi:
            BijectionService.phi(graph, b, VertexAddingOrder())
        with pytest.raises(NotParkingFunctionError) as from_spots:
            ClassicalService.tree_from_spot_rule(b)
        assert (from_spots.value.step, from_spots.value.stuck) == (from_phi.value.step, from_phi.value.stuck)


@pytest.mark.parametrize("n", [3, 4])
def test_spot_rule_is_vertex_adding_phi(n):
    graph = GraphModel.complete_graph(n)
    for b in ParkingService.enumerate_parking_functions(graph):
        assert ClassicalService.tree_from_spot_rule(b) == BijectionService.phi(graph, b, VertexAddingOrder()).tree


def test_dyck_encoding_examples():
    path = ClassicalService.parking_to_dyck(ParkingCandidate.of(0, 0, 1))
    assert str(path) == "E(1) E(2) N E(3) N N"
    assert str(ClassicalService.parking_to_dyck(ParkingCandidate.of(0, 0, 0))) == "E(1) E(2) E(3) N N N"
    assert str(ClassicalService.parking_to_dyck(ParkingCandidate.of(2, 0, 1))) == "E(2) N E(3) N E(1) N"


def test_dyck_rejects_non_parking():
    with pytest.raises(NotParkingFunctionError):
        ClassicalService.parking_to_dyck(ParkingCandidate.of(1, 1))


def test_dyck_decoding_examples():
    graph = GraphModel.complete_graph(3)
    star = ClassicalService.tree_from_dyck(ClassicalService.parking_to_dyck(ParkingCandidate.of(0, 0, 0)))
    assert star == TreeModel.from_parents(graph, {1: 0, 2: 0, 3: 0})
    tree = ClassicalService.tree_from_dyck(ClassicalModel.parse_dyck("E(1) E(2) N E(3) N N"))
    assert tree == TreeModel.from_parents(graph, {1: 0, 2: 0, 3: 2})


@pytest.mark.parametrize("n", [3, 4])
def test_dyck_round_trip_is_right_to_left_phi(n):
    graph = GraphModel.complete_graph(n)
    policy = DepthFirstOrder(right_to_left=True)
    for b in ParkingService.enumerate_parking_functions(graph):
        path = ClassicalService.parking_to_dyck(b)
        assert path.to_candidate() == b
        assert ClassicalService.tree_from_dyck(path) == BijectionService.phi(graph, b, policy).tree


@pytest.mark.parametrize("text", [
    "E(1) N N",
    "N E(1)",
    "E(2) E(1) N N",
    "E(1) E(1) N N",
    "E(1) X",
    "E(0) N",
    "E(1)\x00E(2) N N",
    "E(\x011) N",
])
def test_invalid_dyck_paths(text):
    with pytest.raises(ValidationError):
        ClassicalModel.parse_dyck(text)


def test_dyck_rows():
    path = LabeledDyckPath((east(1), east(3), NORTH, NORTH, east(2), NORTH))
    assert path.rows() == [[1, 3], [], [2]]
    assert path.to_candidate() == ParkingCandidate.of(0, 2, 0)
    assert ClassicalModel.format_dyck(path) == "E(1) E(3) N N E(2) N"
