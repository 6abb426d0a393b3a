from typing import Dict, List

from core.models.graph_model import EdgeRef, Multigraph
from core.models.order_model import OrderPolicy, PolicyDefectError
from core.models.parking_model import NotParkingFunctionError, ParkingCandidate, ParkingModel
from core.models.report_model import BijectionReport, ParkingPair, PhiResult, PhiStep, PhiTrace
from core.models.tree_model import RootedTree, TreeModel
from core.services.enumeration_service import EnumerationService
from core.services.log_service import LogService
from core.services.order_service import OrderService
from core.services.parking_service import ParkingService
from core.utils.settings import get_settings
from core.utils.validators import ValidationError


def _edge_key(rank: Dict[int, int], edge: EdgeRef):
    """Out-edges of one vertex ranked by the order of their heads, parallel copies by copy index"""
    return rank[edge.head], edge.copy


class BijectionService:
    """The tree -> parking function map theta and its inverse phi"""

    @staticmethod
    def theta(graph: Multigraph, tree: RootedTree, policy: OrderPolicy) -> ParkingCandidate:
        """b_j counts the out-edges of j that come before j's tree edge"""
        if not tree.is_spanning():
            raise ValidationError(f"Tree {tree} does not span the graph")
        rank = OrderService.positions(tree, policy)
        values = []
        for j in graph.non_root_vertices:
            own = _edge_key(rank, tree.edge_of(j))
            values.append(sum(1 for e in graph.out_edges(j) if _edge_key(rank, e) < own))
        return ParkingCandidate(tuple(values))

    @staticmethod
    def phi(graph: Multigraph, candidate: ParkingCandidate, policy: OrderPolicy) -> PhiResult:
        """Grow the tree from the root one vertex per step.

        Each step attaches every ready vertex j (at least b_j + 1 edges into the
        current tree) by its (b_j + 1)-th smallest such edge, then keeps only the
        one that comes first in the grown tree's order.
        """
        ParkingModel.check_length(candidate, graph.n)
        tree = TreeModel.single_vertex(graph)
        steps = []

        for m in range(1, graph.n + 1):
            unattached = frozenset(v for v in graph.non_root_vertices if not tree.contains(v))
            rank = OrderService.positions(tree, policy)

            chosen_edges: Dict[int, EdgeRef] = {}
            for j in sorted(unattached):
                into = graph.edges_into(j, tree.members)
                b_j = candidate.value(j)
                if len(into) > b_j:
                    into.sort(key=lambda e: _edge_key(rank, e))
                    chosen_edges[j] = into[b_j]

            if not chosen_edges:
                LogService.log_rejection("Parking candidate", f"b=({candidate}) stuck at step {m}")
                raise NotParkingFunctionError(m, unattached)

            grown_rank = OrderService.positions(tree.with_edges(chosen_edges.values()), policy)
            attached = min(chosen_edges, key=grown_rank.__getitem__)
            steps.append(PhiStep(
                m=m,
                unattached=unattached,
                ready=frozenset(chosen_edges),
                candidate_edges=tuple(chosen_edges[j] for j in sorted(chosen_edges)),
                chosen=attached,
                chosen_edge=chosen_edges[attached],
            ))
            tree = tree.with_edge(chosen_edges[attached])

        return PhiResult(tree, PhiTrace(tuple(steps)))

    @staticmethod
    def enumerate_pairs(graph: Multigraph, policy: OrderPolicy) -> List[ParkingPair]:
        """Every parking function with its tree, sorted by parking function"""
        return [
            ParkingPair(b, BijectionService.phi(graph, b, policy).tree)
            for b in ParkingService.enumerate_parking_functions(graph)
        ]

    @staticmethod
    def verify_bijection(graph: Multigraph, policy: OrderPolicy) -> BijectionReport:
        """Exhaustively check both round trips and the attachment order of every phi run"""
        get_settings().require_size("bijection verification", graph.n)
        report = BijectionReport(policy.name)
        try:
            trees = EnumerationService.enumerate_spanning_trees(graph)
            parking_functions = ParkingService.enumerate_parking_functions(graph)
            report.trees = len(trees)
            report.parking_functions = len(parking_functions)

            for b in parking_functions:
                try:
                    result = BijectionService.phi(graph, b, policy)
                except NotParkingFunctionError as e:
                    report.failures.append(f"phi rejected parking function ({b}): {e}")
                    continue
                back = BijectionService.theta(graph, result.tree, policy)
                if back != b:
                    report.failures.append(f"theta(phi({b})) = ({back})")
                    continue
                rank = OrderService.positions(result.tree, policy)
                attached = [0] + result.trace.attached
                if any(rank[u] >= rank[v] for u, v in zip(attached, attached[1:])):
                    report.failures.append(f"attachment order {attached} for ({b}) is not ascending")
                    continue
                report.theta_phi_passed += 1

            for tree in trees:
                b = BijectionService.theta(graph, tree, policy)
                if not ParkingService.is_parking(graph, b):
                    report.failures.append(f"theta({tree}) = ({b}) is not a parking function")
                    continue
                try:
                    back = BijectionService.phi(graph, b, policy).tree
                except NotParkingFunctionError as e:
                    report.failures.append(f"phi rejected theta({tree}) = ({b}): {e}")
                    continue
                if back != tree:
                    report.failures.append(f"phi(theta({tree})) = {back}")
                    continue
                report.phi_theta_passed += 1
        except PolicyDefectError as e:
            report.policy_defect = str(e)

        LogService.log_verification("Bijection", policy.name, report.passed, report.summary())
        return report
