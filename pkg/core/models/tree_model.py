from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from core.models.graph_model import ROOT, EdgeRef, Multigraph
from core.utils.validators import GraphFormatError, InputValidator, ValidationError


class RootedTree:
    """Subtree of a multigraph rooted at 0, stored as one parent edge per non-root member.

    Equality and hashing use the parent edges only; two trees that pick
    different parallel copies are different trees.
    """

    __slots__ = ("_graph", "_parent_edge", "_members", "_children", "_key")

    def __init__(self, graph: Multigraph, parent_edges: Iterable[EdgeRef] = ()):
        parent_edge: Dict[int, EdgeRef] = {}
        for edge in parent_edges:
            if not graph.has_edge(edge):
                raise ValidationError(f"Tree edge {edge} is not an edge of the graph")
            if edge.tail == ROOT:
                raise ValidationError("The root has no parent edge")
            if edge.tail in parent_edge:
                raise ValidationError(f"Vertex {edge.tail} has two parent edges")
            parent_edge[edge.tail] = edge

        members = frozenset(parent_edge) | {ROOT}
        for v, edge in parent_edge.items():
            if edge.head not in members:
                raise ValidationError(f"Parent {edge.head} of vertex {v} is not in the tree")

        # Following parents from any member must reach the root without revisiting
        for start in parent_edge:
            seen = {start}
            v = parent_edge[start].head
            while v != ROOT:
                if v in seen:
                    raise ValidationError(f"Tree edges contain a cycle through vertex {v}")
                seen.add(v)
                v = parent_edge[v].head

        children: Dict[int, List[int]] = {v: [] for v in members}
        for v, edge in sorted(parent_edge.items()):
            children[edge.head].append(v)

        self._graph = graph
        self._parent_edge = parent_edge
        self._members = members
        self._children = {v: tuple(c) for v, c in children.items()}
        self._key = tuple(sorted(parent_edge.values()))

    @property
    def graph(self) -> Multigraph:
        return self._graph

    @property
    def parent_edge(self) -> Mapping[int, EdgeRef]:
        return dict(self._parent_edge)

    @property
    def members(self) -> FrozenSet[int]:
        return self._members

    @property
    def edges(self) -> Tuple[EdgeRef, ...]:
        """Parent edges sorted by tail"""
        return self._key

    @property
    def size(self) -> int:
        return len(self._members)

    def is_spanning(self) -> bool:
        return self.size == self._graph.vertex_count

    def contains(self, v: int) -> bool:
        return v in self._members

    def edge_of(self, v: int) -> EdgeRef:
        """Parent edge of a non-root member"""
        try:
            return self._parent_edge[v]
        except KeyError:
            raise ValidationError(f"Vertex {v} has no parent edge in this tree")

    def parent(self, v: int) -> Optional[int]:
        if v == ROOT:
            return None
        return self.edge_of(v).head

    def children(self, v: int) -> Tuple[int, ...]:
        """Children in ascending label order"""
        return self._children.get(v, ())

    def height(self, v: int) -> int:
        """Number of edges on the path from v to the root"""
        self._require_member(v)
        h = 0
        while v != ROOT:
            v = self._parent_edge[v].head
            h += 1
        return h

    def heights(self) -> Dict[int, int]:
        return {v: self.height(v) for v in self._members}

    def path_edges(self, v: int) -> Tuple[EdgeRef, ...]:
        """Edges of the path from v to the root, listed from the root outwards"""
        self._require_member(v)
        edges = []
        while v != ROOT:
            edge = self._parent_edge[v]
            edges.append(edge)
            v = edge.head
        return tuple(reversed(edges))

    def branch(self, v: int) -> FrozenSet[int]:
        """Members whose path to the root passes through v"""
        self._require_member(v)
        stack, found = [v], set()
        while stack:
            u = stack.pop()
            found.add(u)
            stack.extend(self.children(u))
        return frozenset(found)

    def leaves(self) -> List[int]:
        """Non-root members without children"""
        return sorted(v for v in self._parent_edge if not self._children[v])

    def without_leaf(self, v: int) -> "RootedTree":
        if v not in self._parent_edge or self._children[v]:
            raise ValidationError(f"Vertex {v} is not a leaf of the tree")
        return RootedTree(self._graph, (e for u, e in self._parent_edge.items() if u != v))

    def with_edge(self, edge: EdgeRef) -> "RootedTree":
        """Attach a new vertex by one edge into the tree"""
        if edge.tail in self._members:
            raise ValidationError(f"Vertex {edge.tail} is already in the tree")
        return RootedTree(self._graph, self._key + (edge,))

    def with_edges(self, edges: Iterable[EdgeRef]) -> "RootedTree":
        return RootedTree(self._graph, self._key + tuple(edges))

    def restricted_to(self, vertices: Iterable[int]) -> List[int]:
        return [v for v in vertices if v in self._members]

    def _require_member(self, v: int) -> None:
        if v not in self._members:
            raise ValidationError(f"Vertex {v} is not in the tree")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other: "RootedTree") -> bool:
        return self._key < other._key

    def __repr__(self) -> str:
        return "RootedTree(" + ", ".join(str(e) for e in self._key) + ")"


@dataclass(frozen=True)
class TreePath:
    """Path from a vertex to the root, as its edges listed from the root outwards.

    ``vertices`` is the sequence <s_1, ..., s_l>: s_1 is adjacent to the root
    and s_l is the far endpoint. The empty path is the root alone.
    """
    edges: Tuple[EdgeRef, ...]
    graph: Optional[Multigraph] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        previous = ROOT
        seen = set()
        for edge in self.edges:
            if edge.head != previous:
                raise ValidationError(f"Path edges are not consecutive at {edge}")
            if edge.tail == ROOT or edge.tail in seen:
                raise ValidationError("Path vertices must be distinct and non-root")
            if self.graph is not None and not self.graph.has_edge(edge):
                raise ValidationError(f"Path edge {edge} is not in the graph")
            seen.add(edge.tail)
            previous = edge.tail

    @staticmethod
    def from_vertices(graph: Multigraph, vertices: Iterable[int], copies: Optional[Iterable[int]] = None) -> "TreePath":
        """Build <s_1..s_l>; copy indices default to 0"""
        vertices = list(vertices)
        copies = list(copies) if copies is not None else [0] * len(vertices)
        heads = [ROOT] + vertices[:-1]
        return TreePath(tuple(EdgeRef(v, h, c) for v, h, c in zip(vertices, heads, copies)), graph)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(e.tail for e in self.edges)

    @property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(e.tail for e in self.edges)

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def endpoint(self) -> int:
        return self.edges[-1].tail if self.edges else ROOT

    def common_prefix_length(self, other: "TreePath") -> int:
        k = 0
        for a, b in zip(self.edges, other.edges):
            if a != b:
                break
            k += 1
        return k

    def is_prefix_of(self, other: "TreePath") -> bool:
        return self.common_prefix_length(other) == self.length

    def intersects(self, other: "TreePath") -> bool:
        """The shared part of two paths is itself a path from the root"""
        k = self.common_prefix_length(other)
        shared = self.vertex_set & other.vertex_set
        return shared == frozenset(e.tail for e in self.edges[:k])

    def __str__(self) -> str:
        # Non-zero copy indices are shown so parallel paths stay distinguishable
        return "<" + ",".join(f"{e.tail}#{e.copy}" if e.copy else str(e.tail) for e in self.edges) + ">"


class TreeModel:
    """Text format for trees: one `treeedge V HEAD COPY` line per non-root member"""

    @staticmethod
    def tree_path(tree: RootedTree, v: int) -> TreePath:
        """The unique path in the tree from v to the root"""
        return TreePath(tree.path_edges(v), tree.graph)

    @staticmethod
    def single_vertex(graph: Multigraph) -> RootedTree:
        return RootedTree(graph, ())

    @staticmethod
    def from_parents(graph: Multigraph, parents: Mapping[int, int]) -> RootedTree:
        """Tree from a vertex -> parent map using copy 0 of every edge"""
        return RootedTree(graph, (EdgeRef(v, p, 0) for v, p in parents.items()))

    @staticmethod
    def parse_tree(graph: Multigraph, text: Union[bytes, str]) -> RootedTree:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        edges = []
        for line_number, raw in enumerate(text.splitlines(), 1):
            line = InputValidator.format_line(raw, line_number)
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if tokens[0] != "treeedge" or len(tokens) != 4:
                raise GraphFormatError(line_number, f"expected 'treeedge V HEAD COPY', got {line!r}")
            try:
                v, head, copy = (int(t) for t in tokens[1:])
            except ValueError:
                raise GraphFormatError(line_number, "tree edge fields must be integers")
            edge = EdgeRef(v, head, copy)
            if not graph.has_edge(edge):
                raise GraphFormatError(line_number, f"{edge} is not an edge of the graph")
            edges.append(edge)
        return RootedTree(graph, edges)

    @staticmethod
    def serialize_tree(tree: RootedTree) -> str:
        return "".join(f"treeedge {e.tail} {e.head} {e.copy}\n" for e in tree.edges)
