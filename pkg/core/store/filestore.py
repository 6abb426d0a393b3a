import os
from typing import Union

from core.models.classical_model import ClassicalModel, LabeledDyckPath
from core.models.graph_model import GraphModel, Multigraph
from core.models.order_model import OrderModel, TablePolicy
from core.models.parking_model import ParkingCandidate, ParkingModel
from core.models.sandpile_model import SandpileModel, UndirectedEdgeOrder
from core.models.tree_model import RootedTree, TreeModel
from core.utils.validators import ValidationError


class FileStore:
    def __init__(self, base_dir: str = "."):
        self.base_dir = base_dir

    def resolve(self, path: str) -> str:
        """Relative paths are taken from the base directory"""
        return path if os.path.isabs(path) else os.path.join(self.base_dir, path)

    def exists(self, path: str) -> bool:
        return os.path.isfile(self.resolve(path))

    def read_bytes(self, path: str) -> bytes:
        try:
            with open(self.resolve(path), "rb") as f:
                return f.read()
        except OSError as e:
            raise ValidationError(f"Cannot read {path}: {e.strerror}")

    def read_text(self, path: str) -> str:
        try:
            return self.read_bytes(path).decode("utf-8")
        except UnicodeDecodeError:
            raise ValidationError(f"{path} is not UTF-8 text")

    def read_or_inline(self, arg: str) -> str:
        """File contents when arg names an existing file, otherwise arg itself"""
        return self.read_text(arg) if self.exists(arg) else arg

    def load_graph(self, path: str) -> Multigraph:
        return GraphModel.parse_graph(self.read_bytes(path), source=path)

    def load_tree(self, graph: Multigraph, path: str) -> RootedTree:
        return TreeModel.parse_tree(graph, self.read_text(path))

    def load_candidate(self, arg: str) -> ParkingCandidate:
        return ParkingModel.parse_candidate(self.read_or_inline(arg))

    def load_table_policy(self, graph: Multigraph, path: str) -> TablePolicy:
        return OrderModel.parse_table_policy(graph, self.read_text(path), name=f"table:{path}")

    def load_edge_order(self, graph: Multigraph, path: str) -> UndirectedEdgeOrder:
        return SandpileModel.parse_edge_order(graph, self.read_text(path))

    def load_dyck(self, arg: str) -> LabeledDyckPath:
        return ClassicalModel.parse_dyck(self.read_or_inline(arg))


# Global file store instance
store = FileStore()
