from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from core.services.log_service import LogService
from core.utils.validators import GraphFormatError, InputValidator, ValidationError

ROOT = 0


@dataclass(frozen=True, order=True)
class EdgeRef:
    """One copy of a directed edge tail -> head"""
    tail: int
    head: int
    copy: int = 0

    def __str__(self) -> str:
        if self.copy:
            return f"({self.tail},{self.head})#{self.copy}"
        return f"({self.tail},{self.head})"


class Multigraph:
    """Directed multigraph on vertices 0..n, root 0, parallel edges ordered by copy index.

    Instances are immutable after construction.
    """

    __slots__ = ("_vertex_count", "_multiplicity", "_out_degree", "_out_edges", "_edge_index")

    def __init__(self, vertex_count: int, multiplicity: Optional[Mapping[Tuple[int, int], int]] = None):
        if isinstance(vertex_count, bool) or not isinstance(vertex_count, int) or vertex_count < 1:
            raise ValidationError("A graph needs at least the root vertex")

        counts: Dict[Tuple[int, int], int] = {}
        for (tail, head), m in sorted((multiplicity or {}).items()):
            InputValidator.validate_vertex(tail, vertex_count, "Edge tail")
            InputValidator.validate_vertex(head, vertex_count, "Edge head")
            if tail == head:
                raise ValidationError(f"Loop at vertex {tail} is not allowed")
            if m < 0:
                raise ValidationError(f"Negative multiplicity for ({tail},{head})")
            if m:
                counts[(tail, head)] = m

        out_edges: List[List[EdgeRef]] = [[] for _ in range(vertex_count)]
        for (tail, head), m in counts.items():
            out_edges[tail].extend(EdgeRef(tail, head, c) for c in range(m))

        self._vertex_count = vertex_count
        self._multiplicity = counts
        self._out_edges = tuple(tuple(edges) for edges in out_edges)
        self._out_degree = tuple(len(edges) for edges in out_edges)
        self._edge_index = {
            edge: idx for idx, edge in enumerate(e for edges in self._out_edges for e in edges)
        }

    @property
    def vertex_count(self) -> int:
        return self._vertex_count

    @property
    def n(self) -> int:
        """Number of non-root vertices"""
        return self._vertex_count - 1

    @property
    def vertices(self) -> range:
        return range(self._vertex_count)

    @property
    def non_root_vertices(self) -> range:
        return range(1, self._vertex_count)

    @property
    def edge_count(self) -> int:
        return len(self._edge_index)

    def multiplicity(self, tail: int, head: int) -> int:
        return self._multiplicity.get((tail, head), 0)

    def multiplicities(self) -> Dict[Tuple[int, int], int]:
        """Copy of the non-zero multiplicity map"""
        return dict(self._multiplicity)

    def out_degree(self, v: int) -> int:
        return self._out_degree[v]

    @property
    def out_degrees(self) -> Tuple[int, ...]:
        """d_0..d_n"""
        return self._out_degree

    def out_edges(self, v: int) -> List[EdgeRef]:
        """Edges with tail v ordered by head, then copy"""
        InputValidator.validate_vertex(v, self._vertex_count)
        return list(self._out_edges[v])

    def edges(self) -> List[EdgeRef]:
        """All edges in canonical (tail, head, copy) order"""
        return list(self._edge_index)

    def has_edge(self, edge: EdgeRef) -> bool:
        return edge in self._edge_index

    def edge_index(self, edge: EdgeRef) -> int:
        """Position of an edge in canonical order"""
        try:
            return self._edge_index[edge]
        except KeyError:
            raise ValidationError(f"Edge {edge} is not in the graph")

    def edges_into(self, tail: int, targets: Union[Set[int], frozenset]) -> List[EdgeRef]:
        """Edges from tail whose head lies in targets"""
        return [e for e in self._out_edges[tail] if e.head in targets]

    def count_edges_into(self, tail: int, targets) -> int:
        """Number of edges from tail whose head lies in targets"""
        return sum(1 for e in self._out_edges[tail] if e.head in targets)

    def is_symmetric(self) -> bool:
        return all(self.multiplicity(head, tail) == m for (tail, head), m in self._multiplicity.items())

    def max_multiplicity(self) -> int:
        return max(self._multiplicity.values(), default=0)

    def relabel(self, permutation: Sequence[int]) -> "Multigraph":
        """Graph with vertex v renamed permutation[v]; the root must stay fixed"""
        if sorted(permutation) != list(self.vertices) or permutation[ROOT] != ROOT:
            raise ValidationError("Relabeling must be a permutation of the vertices fixing the root")
        return Multigraph(
            self._vertex_count,
            {(permutation[t], permutation[h]): m for (t, h), m in self._multiplicity.items()},
        )

    def to_networkx(self) -> nx.MultiDiGraph:
        """Export with one keyed edge per copy"""
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for edge in self._edge_index:
            graph.add_edge(edge.tail, edge.head, key=edge.copy)
        return graph

    def reaches_root(self) -> Set[int]:
        """Vertices with a directed path to the root"""
        return nx.ancestors(self.to_networkx(), ROOT) | {ROOT}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertex_count == other._vertex_count and self._multiplicity == other._multiplicity

    def __hash__(self) -> int:
        return hash((self._vertex_count, tuple(self._multiplicity.items())))

    def __repr__(self) -> str:
        return f"Multigraph(vertex_count={self._vertex_count}, edges={self.edge_count})"


class GraphModel:
    """Construction, parsing and serialization of multigraphs"""

    @staticmethod
    def complete_graph(n: int) -> Multigraph:
        """K_{n+1}: one edge (i,j) for every ordered pair i != j"""
        n = InputValidator.validate_integer(str(n), min_val=1, field_name="n")
        return Multigraph(
            n + 1, {(i, j): 1 for i in range(n + 1) for j in range(n + 1) if i != j}
        )

    @staticmethod
    def from_edges(vertex_count: int, edges: Iterable[Tuple[int, int]]) -> Multigraph:
        """Each listed pair adds one more copy"""
        counts: Dict[Tuple[int, int], int] = {}
        for tail, head in edges:
            counts[(tail, head)] = counts.get((tail, head), 0) + 1
        return Multigraph(vertex_count, counts)

    @staticmethod
    def parse_graph(text: Union[bytes, str], source: str = "<inline>") -> Multigraph:
        """Parse the `vertices N` / `edge TAIL HEAD` format"""
        try:
            if isinstance(text, bytes):
                text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise GraphFormatError(1, f"not UTF-8 text ({e.reason})")

        vertex_count: Optional[int] = None
        counts: Dict[Tuple[int, int], int] = {}

        for line_number, raw in enumerate(text.splitlines(), 1):
            line = InputValidator.format_line(raw, line_number)
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            keyword = tokens[0]

            if keyword == "vertices":
                if vertex_count is not None:
                    raise GraphFormatError(line_number, "duplicate 'vertices' header")
                if len(tokens) != 2:
                    raise GraphFormatError(line_number, "expected 'vertices N'")
                vertex_count = GraphModel._parse_int(tokens[1], line_number, "vertex count")
                if vertex_count < 1:
                    raise GraphFormatError(line_number, "vertex count must be at least 1")
                continue

            if vertex_count is None:
                raise GraphFormatError(line_number, "missing 'vertices' header")

            if keyword != "edge" or len(tokens) != 3:
                raise GraphFormatError(line_number, f"malformed line {line!r}")
            tail = GraphModel._parse_int(tokens[1], line_number, "edge tail")
            head = GraphModel._parse_int(tokens[2], line_number, "edge head")
            for v in (tail, head):
                if not 0 <= v < vertex_count:
                    raise GraphFormatError(line_number, f"vertex {v} out of range 0..{vertex_count - 1}")
            if tail == head:
                raise GraphFormatError(line_number, f"loop at vertex {tail}")
            counts[(tail, head)] = counts.get((tail, head), 0) + 1

        if vertex_count is None:
            raise GraphFormatError(1, "missing 'vertices' header")

        graph = Multigraph(vertex_count, counts)
        LogService.log_graph_loaded(source, graph.vertex_count, graph.edge_count)
        return graph

    @staticmethod
    def serialize_graph(graph: Multigraph) -> bytes:
        """Canonical form: header then edges sorted by (tail, head, copy)"""
        lines = [f"vertices {graph.vertex_count}"]
        lines.extend(f"edge {e.tail} {e.head}" for e in graph.edges())
        return ("\n".join(lines) + "\n").encode("utf-8")

    @staticmethod
    def _parse_int(token: str, line_number: int, field_name: str) -> int:
        try:
            return int(token)
        except ValueError:
            raise GraphFormatError(line_number, f"{field_name} must be an integer, got {token!r}")
