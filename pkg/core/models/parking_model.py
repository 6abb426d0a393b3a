from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from core.utils.validators import InputValidator, ValidationError


class NotParkingFunctionError(Exception):
    """Tree growth got stuck: no remaining vertex has enough edges into the tree"""

    def __init__(self, step: int, stuck: FrozenSet[int]):
        self.step = step
        self.stuck = frozenset(stuck)
        super().__init__(
            f"not a parking function: stuck at step {step} with U={{{', '.join(map(str, sorted(self.stuck)))}}}"
        )


@dataclass(frozen=True, order=True)
class ParkingCandidate:
    """Values b_1..b_n; index j of the vertex is position j-1 of ``values``"""
    values: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        for b in self.values:
            if isinstance(b, bool) or not isinstance(b, int) or b < 0:
                raise ValidationError(f"Parking candidate values must be non-negative integers, got {b!r}")

    @staticmethod
    def of(*values: int) -> "ParkingCandidate":
        return ParkingCandidate(tuple(values))

    @property
    def n(self) -> int:
        return len(self.values)

    def value(self, j: int) -> int:
        """b_j for a non-root vertex j"""
        if not 1 <= j <= len(self.values):
            raise ValidationError(f"Vertex {j} has no value in a candidate of length {len(self.values)}")
        return self.values[j - 1]

    def total(self) -> int:
        return sum(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return " ".join(str(b) for b in self.values)


@dataclass(frozen=True)
class BurnReport:
    """Outcome of the burning algorithm"""
    accepted: bool
    waves: Tuple[FrozenSet[int], ...]
    stuck: FrozenSet[int] = field(default_factory=frozenset)

    def wave_of(self, v: int) -> Optional[int]:
        for i, wave in enumerate(self.waves):
            if v in wave:
                return i
        return None


@dataclass(frozen=True)
class DefinitionalVerdict:
    """Outcome of the subset-by-subset check; ``witness`` is the largest violating U"""
    accepted: bool
    witness: FrozenSet[int] = field(default_factory=frozenset)

    def __bool__(self) -> bool:
        return self.accepted


class ParkingModel:
    """Parking-candidate text format: whitespace-separated b_1 .. b_n"""

    @staticmethod
    def parse_candidate(text: Union[str, bytes]) -> ParkingCandidate:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        lines = [
            line for line in (
                InputValidator.format_line(raw, line_number) for line_number, raw in enumerate(text.splitlines(), 1)
            )
            if line and not line.startswith("#")
        ]
        if len(lines) > 1:
            raise ValidationError("A parking candidate is a single line of integers")
        values = InputValidator.parse_integer_tokens(lines[0] if lines else "", "Parking value", min_val=0)
        return ParkingCandidate(tuple(values))

    @staticmethod
    def format_candidate(candidate: ParkingCandidate) -> str:
        return str(candidate)

    @staticmethod
    def check_length(candidate: ParkingCandidate, n: int) -> None:
        InputValidator.validate_candidate_length(candidate.values, n)

    @staticmethod
    def format_vertex_set(vertices: Sequence[int]) -> str:
        return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"
