import heapq
from enum import Enum
from functools import cmp_to_key
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from core.models.graph_model import ROOT, EdgeRef, Multigraph
from core.models.tree_model import RootedTree, TreeModel, TreePath
from core.utils.validators import GraphFormatError, InputValidator, ValidationError


class PolicyDefectError(Exception):
    """An order policy failed to produce a total order on a tree"""

    def __init__(self, policy_name: str, detail: str):
        self.policy_name = policy_name
        self.detail = detail
        super().__init__(f"policy {policy_name}: {detail}")


class Comparison(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    def flipped(self) -> "Comparison":
        if self is Comparison.LESS:
            return Comparison.GREATER
        if self is Comparison.GREATER:
            return Comparison.LESS
        return self


def _compare_keys(a, b) -> Comparison:
    if a < b:
        return Comparison.LESS
    if b < a:
        return Comparison.GREATER
    # Distinct paths with equal keys are left unordered
    return Comparison.INCOMPARABLE


# ---------------------------------------------------------------------------
# Path comparators
# ---------------------------------------------------------------------------

class PathComparator:
    """Partial order on paths from the root; identical paths compare equal"""

    name = "abstract"

    def compare(self, a: TreePath, b: TreePath) -> Comparison:
        if a.edges == b.edges:
            return Comparison.EQUAL
        return self._compare(a, b)

    def _compare(self, a: TreePath, b: TreePath) -> Comparison:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class LexComparator(PathComparator):
    """Vertex sequences compared lexicographically; a proper prefix is smaller"""

    name = "lex"

    def _compare(self, a: TreePath, b: TreePath) -> Comparison:
        return _compare_keys(a.vertices, b.vertices)


class LengthThenEndpointComparator(PathComparator):
    """Shorter first, then smaller far endpoint"""

    name = "length_then_endpoint"

    def _compare(self, a: TreePath, b: TreePath) -> Comparison:
        return _compare_keys((a.length, a.endpoint), (b.length, b.endpoint))


class MaxOfDifferenceComparator(PathComparator):
    """For intersecting paths: the one whose private part has the smaller maximum is smaller.

    The maximum of an empty private part is -1, below every vertex label.
    """

    name = "max_of_difference"

    def _compare(self, a: TreePath, b: TreePath) -> Comparison:
        if not a.intersects(b):
            return Comparison.INCOMPARABLE
        max_a = max(a.vertex_set - b.vertex_set, default=-1)
        max_b = max(b.vertex_set - a.vertex_set, default=-1)
        return _compare_keys(max_a, max_b)


class IncreasingRearrangementComparator(PathComparator):
    """Vertex sets sorted increasingly and read as 0/1 incidence words.

    The path holding the smallest vertex of the symmetric difference is the
    larger one, so every proper prefix compares smaller.
    """

    name = "increasing_rearrangement_lex"

    def _compare(self, a: TreePath, b: TreePath) -> Comparison:
        difference = a.vertex_set ^ b.vertex_set
        if not difference:
            return Comparison.INCOMPARABLE
        return Comparison.LESS if min(difference) in b.vertex_set else Comparison.GREATER


class SumThenEndpointComparator(PathComparator):
    """Smaller vertex sum first, then smaller far endpoint"""

    name = "sum_then_endpoint"

    def _compare(self, a: TreePath, b: TreePath) -> Comparison:
        return _compare_keys((sum(a.vertices), a.endpoint), (sum(b.vertices), b.endpoint))


class EdgeLabelLexComparator(PathComparator):
    """Paths read as sequences of edge numbers from the root outwards, compared lexicographically.

    Edges are numbered in canonical graph order unless an explicit numbering is given.
    """

    name = "edge_label_lex"

    def __init__(self, numbering: Optional[Mapping[EdgeRef, int]] = None):
        if numbering is not None and len(set(numbering.values())) != len(numbering):
            raise ValidationError("Edge numbering must assign distinct numbers")
        self.numbering = dict(numbering) if numbering is not None else None

    def _number(self, path: TreePath, edge: EdgeRef) -> int:
        if self.numbering is not None:
            try:
                return self.numbering[edge]
            except KeyError:
                raise ValidationError(f"Edge {edge} has no number")
        if path.graph is None:
            raise ValidationError("Edge numbering needs the host graph of the path")
        return path.graph.edge_index(edge)

    def _compare(self, a: TreePath, b: TreePath) -> Comparison:
        key_a = tuple(self._number(a, e) for e in a.edges)
        key_b = tuple(self._number(b, e) for e in b.edges)
        return _compare_keys(key_a, key_b)


COMPARATORS: Dict[str, type] = {
    "lex": LexComparator,
    "bf": LengthThenEndpointComparator,
    "va": MaxOfDifferenceComparator,
    "incr": IncreasingRearrangementComparator,
    "sum": SumThenEndpointComparator,
    "edgelex": EdgeLabelLexComparator,
}


# ---------------------------------------------------------------------------
# Order policies
# ---------------------------------------------------------------------------

class OrderPolicy:
    """Produces a total order on the vertices of every subtree"""

    name = "abstract"

    def order(self, tree: RootedTree) -> List[int]:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class BreadthFirstOrder(OrderPolicy):
    """By height, then by label"""

    name = "bf"

    def order(self, tree: RootedTree) -> List[int]:
        heights = tree.heights()
        return sorted(tree.members, key=lambda v: (heights[v], v))


class DepthFirstOrder(OrderPolicy):
    """Preorder; children visited by ascending label, or descending when right_to_left"""

    def __init__(self, right_to_left: bool = False):
        self.right_to_left = right_to_left
        self.name = "df-rtl" if right_to_left else "df"

    def order(self, tree: RootedTree) -> List[int]:
        result = []
        stack = [ROOT]
        while stack:
            v = stack.pop()
            result.append(v)
            children = tree.children(v)
            # Stack pops last-in first, so push the first child to visit last
            stack.extend(children if self.right_to_left else reversed(children))
        return result


class VertexAddingOrder(OrderPolicy):
    """Grow from the root, always adding the smallest label joined by a tree edge to the current set"""

    name = "va"

    def order(self, tree: RootedTree) -> List[int]:
        result = []
        available = [ROOT]
        while available:
            v = heapq.heappop(available)
            result.append(v)
            for child in tree.children(v):
                heapq.heappush(available, child)
        return result


class PathOrder(OrderPolicy):
    """Vertices sorted by a comparator applied to their paths to the root"""

    def __init__(self, comparator: PathComparator, name: Optional[str] = None):
        self.comparator = comparator
        self.name = name or f"path:{comparator.name}"

    def order(self, tree: RootedTree) -> List[int]:
        paths = {v: TreeModel.tree_path(tree, v) for v in tree.members}

        def compare(u: int, v: int) -> int:
            if u == v:
                return 0
            result = self.comparator.compare(paths[u], paths[v])
            if result is Comparison.LESS:
                return -1
            if result is Comparison.GREATER:
                return 1
            raise PolicyDefectError(
                self.name, f"paths {paths[u]} and {paths[v]} of one tree compared {result.value}"
            )

        return sorted(tree.members, key=cmp_to_key(compare))


TableKey = Tuple[EdgeRef, ...]


class TablePolicy(OrderPolicy):
    """Explicit order per tree, keyed by the tree's sorted parent edges"""

    def __init__(self, graph: Multigraph, entries: Optional[Mapping[TableKey, Sequence[int]]] = None,
                 name: str = "table"):
        self.graph = graph
        self.name = name
        self.entries: Dict[TableKey, Tuple[int, ...]] = {}
        for key, order in (entries or {}).items():
            self.add(RootedTree(graph, key), order)

    def add(self, tree: RootedTree, order: Sequence[int]) -> None:
        order = tuple(order)
        if sorted(order) != sorted(tree.members):
            raise ValidationError(f"Order {order} is not a permutation of the vertices of {tree}")
        self.entries[tree.edges] = order

    def order(self, tree: RootedTree) -> List[int]:
        try:
            return list(self.entries[tree.edges])
        except KeyError:
            raise PolicyDefectError(self.name, f"no order listed for tree {tree}")

    def complete_by_restriction(self) -> "TablePolicy":
        """Fill missing subtrees of listed trees by restricting the listed orders"""
        listed = list(self.entries.items())
        for key, order in listed:
            pending = [RootedTree(self.graph, key)]
            seen = set()
            while pending:
                tree = pending.pop()
                for leaf in tree.leaves():
                    subtree = tree.without_leaf(leaf)
                    if subtree.edges in seen:
                        continue
                    seen.add(subtree.edges)
                    restricted = tuple(v for v in order if subtree.contains(v))
                    existing = self.entries.get(subtree.edges)
                    if existing is None:
                        self.entries[subtree.edges] = restricted
                    elif existing != restricted:
                        raise PolicyDefectError(
                            self.name,
                            f"listed orders disagree on subtree {subtree}: {existing} vs {restricted}",
                        )
                    pending.append(subtree)
        return self


BUILTIN_POLICIES = (
    "bf", "df", "df-rtl", "va",
    "path:lex", "path:bf", "path:va", "path:incr", "path:sum", "path:edgelex",
)


class OrderModel:
    """Policy names and the table-policy text format"""

    @staticmethod
    def policy_from_name(name: str) -> OrderPolicy:
        """Built-in policy by CLI name; table policies are loaded from files elsewhere"""
        name = InputValidator.sanitize_input(name)
        if name == "bf":
            return BreadthFirstOrder()
        if name == "df":
            return DepthFirstOrder()
        if name == "df-rtl":
            return DepthFirstOrder(right_to_left=True)
        if name == "va":
            return VertexAddingOrder()
        if name.startswith("path:"):
            comparator = COMPARATORS.get(name[len("path:"):])
            if comparator is not None:
                return PathOrder(comparator(), name=name)
        raise ValidationError(
            f"Unknown policy {name!r}; expected one of {', '.join(BUILTIN_POLICIES)} or table:FILE"
        )

    @staticmethod
    def builtin_policies() -> List[OrderPolicy]:
        return [OrderModel.policy_from_name(name) for name in BUILTIN_POLICIES]

    @staticmethod
    def parse_table_policy(graph: Multigraph, text: Union[str, bytes], name: str = "table",
                           complete: bool = True) -> TablePolicy:
        """Blocks of `treeedge` lines, each closed by `order v0 v1 ... vk`"""
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        table = TablePolicy(graph, name=name)
        block: List[str] = []
        for line_number, raw in enumerate(text.splitlines(), 1):
            line = InputValidator.format_line(raw, line_number)
            if not line or line.startswith("#"):
                continue
            if line.startswith("order"):
                tree = TreeModel.parse_tree(graph, "\n".join(block))
                try:
                    order = [int(t) for t in line.split()[1:]]
                except ValueError:
                    raise GraphFormatError(line_number, "order entries must be integers")
                if tree.edges in table.entries:
                    raise GraphFormatError(line_number, f"tree {tree} listed twice")
                try:
                    table.add(tree, order)
                except ValidationError as e:
                    raise GraphFormatError(line_number, str(e))
                block = []
            elif line.startswith("treeedge"):
                block.append(line)
            else:
                raise GraphFormatError(line_number, f"malformed line {line!r}")
        if block:
            raise GraphFormatError(len(text.splitlines()), "tree block without a closing 'order' line")
        return table.complete_by_restriction() if complete else table

    @staticmethod
    def serialize_table_policy(table: TablePolicy) -> str:
        blocks = []
        for key in sorted(table.entries, key=lambda k: (len(k), k)):
            tree = RootedTree(table.graph, key)
            blocks.append(TreeModel.serialize_tree(tree) + "order " + " ".join(map(str, table.entries[key])) + "\n")
        return "".join(blocks)
