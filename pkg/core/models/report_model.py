from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

from core.models.graph_model import EdgeRef
from core.models.parking_model import ParkingCandidate
from core.models.tree_model import RootedTree


@dataclass(frozen=True)
class PhiStep:
    """One round of tree growth"""
    m: int
    unattached: FrozenSet[int]
    ready: FrozenSet[int]
    candidate_edges: Tuple[EdgeRef, ...]
    chosen: int
    chosen_edge: EdgeRef

    def describe(self) -> str:
        edges = ", ".join(str(e) for e in self.candidate_edges)
        return (
            f"step {self.m}: U={_fmt(self.unattached)} V={_fmt(self.ready)} "
            f"edges [{edges}] -> attach {self.chosen} by {self.chosen_edge}"
        )


@dataclass(frozen=True)
class PhiTrace:
    steps: Tuple[PhiStep, ...] = ()

    @property
    def attached(self) -> List[int]:
        """p_1..p_n in attachment order"""
        return [step.chosen for step in self.steps]

    def describe(self) -> List[str]:
        return [step.describe() for step in self.steps]


@dataclass(frozen=True)
class PhiResult:
    tree: RootedTree
    trace: PhiTrace


@dataclass
class BijectionReport:
    """Outcome of checking both round trips on every tree and parking function"""
    policy_name: str
    trees: int = 0
    parking_functions: int = 0
    theta_phi_passed: int = 0
    phi_theta_passed: int = 0
    failures: List[str] = field(default_factory=list)
    policy_defect: Optional[str] = None

    @property
    def passed(self) -> bool:
        return (
            self.policy_defect is None
            and not self.failures
            and self.trees == self.parking_functions
            and self.theta_phi_passed == self.parking_functions
            and self.phi_theta_passed == self.trees
        )

    def summary(self) -> str:
        if self.policy_defect is not None:
            return f"policy defect: {self.policy_defect}"
        return (
            f"theta(phi(b)) = b: {self.theta_phi_passed}/{self.parking_functions}; "
            f"phi(theta(T)) = T: {self.phi_theta_passed}/{self.trees}"
        )


@dataclass(frozen=True)
class ParkingPair:
    candidate: ParkingCandidate
    tree: RootedTree


def _fmt(vertices) -> str:
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"
