from itertools import combinations, product
from typing import FrozenSet, List

from core.models.graph_model import ROOT, Multigraph
from core.models.parking_model import BurnReport, DefinitionalVerdict, ParkingCandidate, ParkingModel
from core.services.log_service import LogService
from core.utils.settings import get_settings


class ParkingService:
    """Recognition and enumeration of G-parking functions"""

    @staticmethod
    def is_parking_definitional(graph: Multigraph, candidate: ParkingCandidate) -> DefinitionalVerdict:
        """Check every non-empty U of non-root vertices for a vertex with more than b_j edges leaving U.

        Subsets are scanned from the largest down, so a rejection carries the
        largest violating U (violating sets are closed under union).
        """
        ParkingModel.check_length(candidate, graph.n)
        get_settings().require_size("definitional parking check", graph.n)

        vertices = list(graph.non_root_vertices)
        for size in range(len(vertices), 0, -1):
            for subset in combinations(vertices, size):
                inside = frozenset(subset)
                if not any(
                    graph.out_degree(j) - graph.count_edges_into(j, inside) > candidate.value(j)
                    for j in subset
                ):
                    LogService.log_rejection(
                        "Parking candidate", f"b=({candidate}) violated by U={ParkingModel.format_vertex_set(inside)}"
                    )
                    return DefinitionalVerdict(False, inside)
        return DefinitionalVerdict(True)

    @staticmethod
    def is_parking_burning(graph: Multigraph, candidate: ParkingCandidate) -> BurnReport:
        """Burn in waves from the root; v burns once its edges into the burnt set exceed b_v"""
        ParkingModel.check_length(candidate, graph.n)

        marked = {ROOT}
        waves: List[FrozenSet[int]] = [frozenset({ROOT})]
        unmarked = set(graph.non_root_vertices)
        while unmarked:
            wave = frozenset(
                v for v in unmarked
                if graph.count_edges_into(v, marked) > candidate.value(v)
            )
            if not wave:
                break
            waves.append(wave)
            marked |= wave
            unmarked -= wave

        report = BurnReport(accepted=not unmarked, waves=tuple(waves), stuck=frozenset(unmarked))
        if not report.accepted:
            LogService.log_rejection(
                "Parking candidate", f"b=({candidate}) left U={ParkingModel.format_vertex_set(unmarked)} unburnt"
            )
        return report

    @staticmethod
    def is_parking(graph: Multigraph, candidate: ParkingCandidate) -> bool:
        return ParkingService.is_parking_burning(graph, candidate).accepted

    @staticmethod
    def candidate_box(graph: Multigraph) -> List[ParkingCandidate]:
        """All candidates with 0 <= b_j <= d_j - 1 (singleton U forces b_j < d_j)"""
        ranges = [range(graph.out_degree(j)) for j in graph.non_root_vertices]
        return [ParkingCandidate(values) for values in product(*ranges)]

    @staticmethod
    def enumerate_parking_functions(graph: Multigraph) -> List[ParkingCandidate]:
        """Every G-parking function, in lexicographic order"""
        get_settings().require_size("parking function enumeration", graph.n)
        found = [b for b in ParkingService.candidate_box(graph) if ParkingService.is_parking(graph, b)]
        LogService.log_activity("Enumerated parking functions", f"n={graph.n} count={len(found)}")
        return found
