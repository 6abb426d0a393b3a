from collections import Counter
from itertools import permutations
from typing import List, Optional, Set

import networkx as nx

from core.models.graph_model import ROOT, GraphModel, Multigraph
from core.models.order_model import BreadthFirstOrder, OrderModel, PolicyDefectError
from core.models.parking_model import NotParkingFunctionError, ParkingCandidate, ParkingModel
from core.models.sandpile_model import (
    LevelReport, Pair, SandpileConfig, SeparationReport, UndirectedEdgeOrder, undirected,
)
from core.models.tree_model import RootedTree, TreeModel
from core.services.bijection_service import BijectionService
from core.services.enumeration_service import EnumerationService
from core.services.log_service import LogService
from core.services.parking_service import ParkingService
from core.utils.settings import get_settings
from core.utils.validators import InputValidator, ValidationError


class SandpileService:
    """Sandpile-side views of parking functions and the external-activity statistic"""

    @staticmethod
    def to_allowed_config(graph: Multigraph, candidate: ParkingCandidate) -> SandpileConfig:
        """u_i = d_i - b_i"""
        ParkingModel.check_length(candidate, graph.n)
        return SandpileConfig(tuple(graph.out_degree(i) - b for i, b in enumerate(candidate, 1)))

    @staticmethod
    def from_allowed_config(graph: Multigraph, config: SandpileConfig) -> ParkingCandidate:
        """b_i = d_i - u_i; fails when some u_i exceeds the out-degree"""
        InputValidator.validate_candidate_length(config.values, graph.n)
        return ParkingCandidate(tuple(graph.out_degree(i) - u for i, u in enumerate(config, 1)))

    @staticmethod
    def is_allowed(graph: Multigraph, config: SandpileConfig) -> bool:
        InputValidator.validate_candidate_length(config.values, graph.n)
        if any(u > graph.out_degree(i) for i, u in enumerate(config, 1)):
            return False
        return ParkingService.is_parking(graph, SandpileService.from_allowed_config(graph, config))

    @staticmethod
    def allowed_equals_recurrent(graph: Multigraph) -> bool:
        """Every non-root vertex has out-degree at least its in-degree"""
        in_degree = Counter(e.head for e in graph.edges())
        return all(graph.out_degree(v) >= in_degree[v] for v in graph.non_root_vertices)

    @staticmethod
    def burning_waves_match_heights(graph: Multigraph, candidate: ParkingCandidate) -> bool:
        """Burning wave i equals the set of height-i vertices of the breadth-first tree"""
        SandpileService._require_symmetric(graph, "Wave comparison")
        burn = ParkingService.is_parking_burning(graph, candidate)
        if not burn.accepted:
            raise NotParkingFunctionError(len(burn.waves), burn.stuck)

        tree = BijectionService.phi(graph, candidate, BreadthFirstOrder()).tree
        levels: List[Set[int]] = []
        for v, h in tree.heights().items():
            while len(levels) <= h:
                levels.append(set())
            levels[h].add(v)

        matched = [frozenset(level) for level in levels] == list(burn.waves)
        if not matched:
            LogService.log_suspicious_activity(
                "Burning waves differ from tree heights", f"b=({candidate}) waves={len(burn.waves)} levels={len(levels)}"
            )
        return matched

    @staticmethod
    def external_activity(graph: Multigraph, tree: RootedTree, order: UndirectedEdgeOrder) -> int:
        """Non-tree edges that are the smallest edge of the cycle they close with the tree"""
        SandpileService._require_simple_symmetric(graph, "External activity")
        if not tree.is_spanning():
            raise ValidationError(f"Tree {tree} does not span the graph")

        tree_pairs = {undirected(e.tail, e.head) for e in tree.edges}
        tree_graph = nx.Graph(list(tree_pairs))
        active = 0
        for i, j in UndirectedEdgeOrder.adjacent_pairs(graph) - tree_pairs:
            own = order.rank(i, j)
            if all(own < order.rank(*pair) for pair in SandpileService._tree_path_pairs(tree_graph, i, j)):
                active += 1
        return active

    @staticmethod
    def greedy_min_path(graph: Multigraph, order: UndirectedEdgeOrder) -> RootedTree:
        """Extend a path from the root, always by the smallest edge at its far end to an unused vertex"""
        SandpileService._require_symmetric(graph, "Greedy path")
        path = [ROOT]
        while len(path) < graph.vertex_count:
            end = path[-1]
            options = [e.head for e in graph.out_edges(end) if e.head not in path]
            if not options:
                raise ValidationError(f"Greedy path dead-ends at vertex {end} after {path}")
            path.append(min(options, key=lambda w: order.rank(end, w)))
        return TreeModel.from_parents(graph, dict(zip(path[1:], path)))

    @staticmethod
    def hamiltonian_paths(n: int) -> List[RootedTree]:
        """Spanning trees of K_{n+1} that are paths starting at the root"""
        get_settings().require_size("Hamiltonian path enumeration", n)
        graph = GraphModel.complete_graph(n)
        return [
            TreeModel.from_parents(graph, dict(zip(walk, (ROOT,) + walk)))
            for walk in permutations(range(1, n + 1))
        ]

    @staticmethod
    def separation_experiment(n: int) -> SeparationReport:
        """Check on K_{n+1} that every built-in theta sends Hamiltonian paths to permutations,
        and that the greedy path has no active edge while some other path has one."""
        n = InputValidator.validate_integer(str(n), min_val=2, field_name="n")
        graph = GraphModel.complete_graph(n)
        paths = SandpileService.hamiltonian_paths(n)
        policies = OrderModel.builtin_policies()
        expected = list(range(n))

        failures = []
        for policy in policies:
            for path in paths:
                try:
                    b = BijectionService.theta(graph, path, policy)
                except PolicyDefectError as e:
                    failures.append(f"{policy.name}: {e}")
                    continue
                if sorted(b.values) != expected:
                    failures.append(f"{policy.name}: theta({path}) = ({b}) is not a permutation")

        order = UndirectedEdgeOrder.lex(graph)
        greedy = SandpileService.greedy_min_path(graph, order)
        witness: Optional[RootedTree] = None
        witness_activity = 0
        for path in paths:
            activity = SandpileService.external_activity(graph, path, order)
            if activity > witness_activity:
                witness, witness_activity = path, activity

        report = SeparationReport(
            n=n,
            policies=tuple(p.name for p in policies),
            paths_checked=len(paths),
            permutation_failures=tuple(failures),
            greedy_path=greedy,
            greedy_activity=SandpileService.external_activity(graph, greedy, order),
            witness_path=witness,
            witness_activity=witness_activity,
        )
        LogService.log_verification(
            "Separation", "built-in policies", report.holds,
            f"n={n} paths={len(paths)} greedy={report.greedy_activity} witness={witness_activity}",
        )
        return report

    @staticmethod
    def level_distribution(graph: Multigraph, order: Optional[UndirectedEdgeOrder] = None) -> LevelReport:
        """Count parking functions by |E| - n - sum(b) and spanning trees by external activity"""
        SandpileService._require_simple_symmetric(graph, "Level distribution")
        order = order or UndirectedEdgeOrder.lex(graph)
        genus = graph.edge_count // 2 - graph.n
        parking = Counter(genus - b.total() for b in ParkingService.enumerate_parking_functions(graph))
        activity = Counter(
            SandpileService.external_activity(graph, tree, order)
            for tree in EnumerationService.enumerate_spanning_trees(graph)
        )
        report = LevelReport.from_counts(parking, activity)
        LogService.log_verification("Level distribution", "external activity", report.matches, str(report.parking_levels))
        return report

    @staticmethod
    def _tree_path_pairs(tree_graph: nx.Graph, i: int, j: int) -> List[Pair]:
        """Undirected edges of the tree path between i and j"""
        walk = nx.shortest_path(tree_graph, i, j)
        return [undirected(a, b) for a, b in zip(walk, walk[1:])]

    @staticmethod
    def _require_symmetric(graph: Multigraph, operation: str) -> None:
        if not graph.is_symmetric():
            raise ValidationError(f"{operation} needs a symmetric graph")

    @staticmethod
    def _require_simple_symmetric(graph: Multigraph, operation: str) -> None:
        SandpileService._require_symmetric(graph, operation)
        if graph.max_multiplicity() > 1:
            raise ValidationError(f"{operation} is not defined here for parallel edges")
