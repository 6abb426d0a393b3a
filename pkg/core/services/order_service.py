from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from core.models.graph_model import ROOT, EdgeRef, Multigraph
from core.models.order_model import Comparison, OrderPolicy, PathComparator, PolicyDefectError
from core.models.tree_model import RootedTree, TreeModel, TreePath
from core.services.enumeration_service import EnumerationService
from core.services.log_service import LogService
from core.utils.settings import get_settings


@dataclass(frozen=True)
class ProperSetReport:
    """Result of checking both proper-set conditions on enumerated subtrees"""
    valid: bool
    policy_name: str
    trees_checked: int
    violation: Optional[str] = None
    tree: Optional[RootedTree] = None
    edge: Optional[EdgeRef] = None


@dataclass(frozen=True)
class InducibilityReport:
    """A directed cycle of required path relations, or none found"""
    policy_name: str
    constraints: int
    cycle: Tuple[TreePath, ...] = field(default_factory=tuple)

    @property
    def contradiction(self) -> bool:
        return bool(self.cycle)


class OrderService:
    """Tree orders: computation, path comparison and validation of order policies"""

    @staticmethod
    def compute_order(tree: RootedTree, policy: OrderPolicy) -> List[int]:
        """Vertices of the tree ascending in the policy's order"""
        try:
            order = list(policy.order(tree))
        except PolicyDefectError as e:
            LogService.log_policy_defect(policy.name, e.detail)
            raise
        if sorted(order) != sorted(tree.members) or (order and order[0] != ROOT):
            detail = f"order {order} for {tree} is not a permutation starting at the root"
            LogService.log_policy_defect(policy.name, detail)
            raise PolicyDefectError(policy.name, detail)
        return order

    @staticmethod
    def positions(tree: RootedTree, policy: OrderPolicy) -> Dict[int, int]:
        """Vertex -> rank in the order"""
        return {v: i for i, v in enumerate(OrderService.compute_order(tree, policy))}

    @staticmethod
    def compare_paths(a: TreePath, b: TreePath, comparator: PathComparator) -> Comparison:
        return comparator.compare(a, b)

    @staticmethod
    def tree_path(tree: RootedTree, v: int) -> TreePath:
        return TreeModel.tree_path(tree, v)

    @staticmethod
    def validate_proper_set(graph: Multigraph, policy: OrderPolicy, max_subtree_size: int) -> ProperSetReport:
        """Check children-after-parents on every subtree and consistency under every leaf removal"""
        checked = 0
        try:
            for tree in EnumerationService.enumerate_subtrees(graph, max_subtree_size):
                checked += 1
                order = OrderService.compute_order(tree, policy)
                rank = {v: i for i, v in enumerate(order)}

                for edge in tree.edges:
                    if rank[edge.head] > rank[edge.tail]:
                        return OrderService._violation(
                            policy, checked, tree,
                            f"edge {edge} of {tree} but {edge.tail} precedes {edge.head}", edge,
                        )

                for leaf in tree.leaves():
                    subtree = tree.without_leaf(leaf)
                    restricted = [v for v in order if v != leaf]
                    sub_order = OrderService.compute_order(subtree, policy)
                    if restricted != sub_order:
                        return OrderService._violation(
                            policy, checked, tree,
                            f"order {sub_order} of {subtree} is not the restriction {restricted} of {tree}",
                        )
        except PolicyDefectError as e:
            return ProperSetReport(False, policy.name, checked, violation=str(e))

        LogService.log_verification("Proper set", policy.name, True, f"{checked} subtrees")
        return ProperSetReport(True, policy.name, checked)

    @staticmethod
    def check_inducibility(graph: Multigraph, policy: OrderPolicy) -> InducibilityReport:
        """Search for a cycle among the path relations every spanning tree's order demands.

        Finding no cycle does not prove the policy comes from a path order.
        """
        constraints = nx.DiGraph()
        count = 0
        for tree in EnumerationService.enumerate_spanning_trees(graph):
            order = OrderService.compute_order(tree, policy)
            paths = [TreeModel.tree_path(tree, v) for v in order]
            constraints.add_nodes_from(paths)
            for i, smaller in enumerate(paths):
                for larger in paths[i + 1:]:
                    constraints.add_edge(smaller, larger)
                    count += 1

        try:
            cycle_edges = nx.find_cycle(constraints)
        except nx.NetworkXNoCycle:
            LogService.log_activity("No inducibility contradiction", f"policy={policy.name} constraints={count}")
            return InducibilityReport(policy.name, count)

        cycle = [u for u, _ in cycle_edges]
        # Rotate so the report starts at the smallest path
        start = min(range(len(cycle)), key=lambda i: cycle[i].edges)
        cycle = cycle[start:] + cycle[:start]
        LogService.log_suspicious_activity(
            "Inducibility contradiction", f"policy={policy.name} cycle={' -> '.join(map(str, cycle))}"
        )
        return InducibilityReport(policy.name, count, tuple(cycle))

    @staticmethod
    def _violation(policy: OrderPolicy, checked: int, tree: RootedTree, detail: str,
                   edge: Optional[EdgeRef] = None) -> ProperSetReport:
        LogService.log_verification("Proper set", policy.name, False, detail)
        return ProperSetReport(False, policy.name, checked, violation=detail, tree=tree, edge=edge)
