from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from core.models.graph_model import Multigraph
from core.models.tree_model import RootedTree
from core.utils.validators import GraphFormatError, InputValidator, ValidationError

Pair = Tuple[int, int]


def undirected(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class SandpileConfig:
    """Grain counts u_1..u_n on the non-root vertices"""
    values: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        for u in self.values:
            if isinstance(u, bool) or not isinstance(u, int):
                raise ValidationError(f"Configuration values must be integers, got {u!r}")

    @property
    def n(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __str__(self) -> str:
        return " ".join(str(u) for u in self.values)


class UndirectedEdgeOrder:
    """Distinct ranks on the adjacent pairs {i,j} of a symmetric graph"""

    __slots__ = ("_rank",)

    def __init__(self, graph: Multigraph, ranks: Mapping[Pair, int]):
        adjacent = UndirectedEdgeOrder.adjacent_pairs(graph)
        rank: Dict[Pair, int] = {}
        for (i, j), r in ranks.items():
            pair = undirected(i, j)
            if pair not in adjacent:
                raise ValidationError(f"{{{i},{j}}} is not an edge of the graph")
            if pair in rank:
                raise ValidationError(f"Edge {{{i},{j}}} ranked twice")
            rank[pair] = r
        if len(set(rank.values())) != len(rank):
            raise ValidationError("Edge ranks must be distinct")
        missing = sorted(adjacent - set(rank))
        if missing:
            raise ValidationError(f"Edge order does not rank {{{missing[0][0]},{missing[0][1]}}}")
        self._rank = rank

    @staticmethod
    def adjacent_pairs(graph: Multigraph) -> frozenset:
        return frozenset(undirected(e.tail, e.head) for e in graph.edges())

    @staticmethod
    def from_sequence(graph: Multigraph, pairs: Iterable[Pair]) -> "UndirectedEdgeOrder":
        """Ranks 0, 1, ... in the given sequence"""
        return UndirectedEdgeOrder(graph, {pair: r for r, pair in enumerate(pairs)})

    @staticmethod
    def lex(graph: Multigraph) -> "UndirectedEdgeOrder":
        return UndirectedEdgeOrder.from_sequence(graph, sorted(UndirectedEdgeOrder.adjacent_pairs(graph)))

    @staticmethod
    def reverse_lex(graph: Multigraph) -> "UndirectedEdgeOrder":
        return UndirectedEdgeOrder.from_sequence(
            graph, sorted(UndirectedEdgeOrder.adjacent_pairs(graph), reverse=True)
        )

    def rank(self, i: int, j: int) -> int:
        try:
            return self._rank[undirected(i, j)]
        except KeyError:
            raise ValidationError(f"{{{i},{j}}} is not ranked")

    def pairs(self) -> List[Pair]:
        """Pairs ascending by rank"""
        return sorted(self._rank, key=self._rank.__getitem__)

    def __len__(self) -> int:
        return len(self._rank)


@dataclass(frozen=True)
class SeparationReport:
    """The two facts checked on the Hamiltonian paths of a complete graph"""
    n: int
    policies: Tuple[str, ...]
    paths_checked: int
    permutation_failures: Tuple[str, ...]
    greedy_path: RootedTree
    greedy_activity: int
    witness_path: Optional[RootedTree]
    witness_activity: int

    @property
    def all_permutations(self) -> bool:
        return not self.permutation_failures

    @property
    def greedy_inactive_witness_active(self) -> bool:
        return self.greedy_activity == 0 and self.witness_path is not None and self.witness_activity >= 1

    @property
    def holds(self) -> bool:
        return self.all_permutations and self.greedy_inactive_witness_active


@dataclass(frozen=True)
class LevelReport:
    """Level counts of parking functions next to external-activity counts of spanning trees"""
    parking_levels: Dict[int, int] = field(default_factory=dict)
    activity_levels: Dict[int, int] = field(default_factory=dict)

    @staticmethod
    def from_counts(parking: Counter, activity: Counter) -> "LevelReport":
        return LevelReport(dict(sorted(parking.items())), dict(sorted(activity.items())))

    @property
    def matches(self) -> bool:
        return self.parking_levels == self.activity_levels


class SandpileModel:
    """Edge-order file format: one `rank I J` line per adjacent pair"""

    @staticmethod
    def parse_edge_order(graph: Multigraph, text: Union[str, bytes]) -> UndirectedEdgeOrder:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        ranks: Dict[Pair, int] = {}
        for line_number, raw in enumerate(text.splitlines(), 1):
            line = InputValidator.format_line(raw, line_number)
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 3:
                raise GraphFormatError(line_number, f"expected 'rank I J', got {line!r}")
            try:
                r, i, j = (int(t) for t in tokens)
            except ValueError:
                raise GraphFormatError(line_number, "edge-order fields must be integers")
            pair = undirected(i, j)
            if pair in ranks:
                raise GraphFormatError(line_number, f"edge {{{i},{j}}} ranked twice")
            ranks[pair] = r
        return UndirectedEdgeOrder(graph, ranks)

    @staticmethod
    def serialize_edge_order(order: UndirectedEdgeOrder) -> str:
        return "".join(f"{order.rank(i, j)} {i} {j}\n" for i, j in order.pairs())

    @staticmethod
    def parse_config(text: str) -> SandpileConfig:
        return SandpileConfig(tuple(InputValidator.parse_integer_tokens(text, "Configuration value")))
