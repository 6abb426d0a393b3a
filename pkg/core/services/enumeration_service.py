from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Set

from sympy import Matrix

from core.models.graph_model import ROOT, EdgeRef, Multigraph
from core.models.tree_model import RootedTree
from core.services.log_service import LogService
from core.utils.settings import get_settings
from core.utils.validators import InputValidator


class EnumerationService:
    """Exhaustive generators for rooted trees and the exact Matrix-Tree count"""

    @staticmethod
    def enumerate_spanning_trees(graph: Multigraph) -> List[RootedTree]:
        """Every spanning tree rooted at 0; parallel copies give distinct trees"""
        get_settings().require_size("spanning tree enumeration", graph.n)
        trees = list(EnumerationService._arborescences(graph, list(graph.non_root_vertices), set(graph.vertices)))
        LogService.log_activity("Enumerated spanning trees", f"n={graph.n} count={len(trees)}")
        return trees

    @staticmethod
    def enumerate_subtrees(graph: Multigraph, max_size: int) -> Iterator[RootedTree]:
        """Subtrees rooted at 0 with at most max_size vertices, smallest first"""
        max_size = InputValidator.validate_integer(
            str(max_size), min_val=1, max_val=graph.vertex_count, field_name="max_size"
        )
        get_settings().require_size("subtree enumeration", max_size - 1)
        others = list(graph.non_root_vertices)
        for size in range(1, max_size + 1):
            for chosen in combinations(others, size - 1):
                yield from EnumerationService._arborescences(graph, list(chosen), set(chosen) | {ROOT})

    @staticmethod
    def reduced_laplacian(graph: Multigraph) -> Matrix:
        """Rows and columns 1..n: d_j on the diagonal, -m(j,i) off it"""
        vertices = list(graph.non_root_vertices)
        return Matrix([
            [graph.out_degree(j) if i == j else -graph.multiplicity(j, i) for i in vertices]
            for j in vertices
        ])

    @staticmethod
    def count_spanning_trees(graph: Multigraph) -> int:
        """Matrix-Tree count by fraction-free (Bareiss) elimination"""
        if graph.n == 0:
            return 1
        count = int(EnumerationService.reduced_laplacian(graph).det(method="bareiss"))
        LogService.log_activity("Counted spanning trees", f"n={graph.n} count={count}")
        return count

    @staticmethod
    def _arborescences(graph: Multigraph, vertices: Sequence[int], allowed: Set[int]) -> Iterator[RootedTree]:
        """Trees on allowed (which contains the root) choosing one parent edge per vertex by backtracking"""
        parent: Dict[int, EdgeRef] = {}

        def closes_cycle(v: int, head: int) -> bool:
            u = head
            while u != ROOT and u in parent:
                if u == v:
                    return True
                u = parent[u].head
            return u == v

        def extend(index: int) -> Iterator[RootedTree]:
            if index == len(vertices):
                yield RootedTree(graph, parent.values())
                return
            v = vertices[index]
            for edge in graph.edges_into(v, allowed):
                if closes_cycle(v, edge.head):
                    continue
                parent[v] = edge
                yield from extend(index + 1)
                del parent[v]

        yield from extend(0)
