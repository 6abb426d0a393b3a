from typing import Dict, List

from core.models.classical_model import NORTH, LabeledDyckPath, ParkOutcome, east
from core.models.graph_model import ROOT, EdgeRef, GraphModel
from core.models.order_model import DepthFirstOrder
from core.models.parking_model import NotParkingFunctionError, ParkingCandidate
from core.models.tree_model import RootedTree, TreeModel
from core.services.log_service import LogService
from core.services.order_service import OrderService
from core.services.parking_service import ParkingService
from core.utils.validators import ValidationError


class ClassicalService:
    """Drivers and spots: the complete-graph case of parking functions"""

    @staticmethod
    def park_simulate(candidate: ParkingCandidate) -> ParkOutcome:
        """Driver i tries spot b_i, then the next free spot; spots are 0..n-1"""
        n = candidate.n
        taken: List[bool] = [False] * n
        spot_of_driver: Dict[int, int] = {}
        for driver, favourite in enumerate(candidate, 1):
            spot = favourite
            while spot < n and taken[spot]:
                spot += 1
            if spot >= n:
                LogService.log_rejection("Parking sequence", f"b=({candidate}) driver {driver} found no spot")
                return ParkOutcome(False, None, driver)
            taken[spot] = True
            spot_of_driver[driver] = spot
        return ParkOutcome(True, spot_of_driver)

    @staticmethod
    def tree_from_spot_rule(candidate: ParkingCandidate) -> RootedTree:
        """Parent of i is the driver parked at spot b_i - 1, or the root when b_i = 0"""
        outcome = ClassicalService._require_parked(candidate)
        graph = GraphModel.complete_graph(candidate.n)
        parents = {
            i: ROOT if b == 0 else outcome.driver_at(b - 1)
            for i, b in enumerate(candidate, 1)
        }
        return TreeModel.from_parents(graph, parents)

    @staticmethod
    def parking_to_dyck(candidate: ParkingCandidate) -> LabeledDyckPath:
        """Row i holds the labels j with b_j = i; each row is its east run followed by one north"""
        ClassicalService._require_parked(candidate)
        steps = []
        for row in range(candidate.n):
            steps.extend(east(j) for j, b in enumerate(candidate, 1) if b == row)
            steps.append(NORTH)
        return LabeledDyckPath(tuple(steps))

    @staticmethod
    def tree_from_dyck(path: LabeledDyckPath) -> RootedTree:
        """Walk the steps with a current vertex starting at the root.

        An east step attaches its label to the current vertex; a north step
        moves to the successor of the current vertex in the right-to-left
        depth-first order of the tree built so far.
        """
        graph = GraphModel.complete_graph(path.n)
        policy = DepthFirstOrder(right_to_left=True)
        tree = TreeModel.single_vertex(graph)
        current = ROOT
        for step in path.steps:
            if step.is_east:
                tree = tree.with_edge(EdgeRef(step.label, current))
                continue
            order = OrderService.compute_order(tree, policy)
            at = order.index(current)
            if at + 1 == len(order):
                raise ValidationError(f"No successor of vertex {current} in the tree built so far")
            current = order[at + 1]
        return tree

    @staticmethod
    def _require_parked(candidate: ParkingCandidate) -> ParkOutcome:
        outcome = ClassicalService.park_simulate(candidate)
        if not outcome.success:
            # Same step and unattached set as phi on the complete graph
            burn = ParkingService.is_parking_burning(GraphModel.complete_graph(candidate.n), candidate)
            raise NotParkingFunctionError(candidate.n - len(burn.stuck) + 1, burn.stuck)
        return outcome
