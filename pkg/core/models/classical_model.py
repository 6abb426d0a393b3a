from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union

from core.models.parking_model import ParkingCandidate
from core.utils.validators import InputValidator, ValidationError


@dataclass(frozen=True)
class ParkOutcome:
    """Result of letting drivers 1..n park on spots 0..n-1 in order"""
    success: bool
    spot_of_driver: Optional[Dict[int, int]] = None
    failing_driver: Optional[int] = None

    def driver_at(self, spot: int) -> int:
        """Driver parked at a spot of a successful outcome"""
        if not self.success:
            raise ValidationError("Parking failed, no spot assignment exists")
        for driver, taken in self.spot_of_driver.items():
            if taken == spot:
                return driver
        raise ValidationError(f"No driver parked at spot {spot}")


@dataclass(frozen=True)
class DyckStep:
    """An east step carrying a driver label, or a north step (label None)"""
    label: Optional[int] = None

    @property
    def is_east(self) -> bool:
        return self.label is not None

    def __str__(self) -> str:
        return f"E({self.label})" if self.is_east else "N"


NORTH = DyckStep()


def east(label: int) -> DyckStep:
    return DyckStep(label)


@dataclass(frozen=True)
class LabeledDyckPath:
    """Staircase walk in the n x n square with labeled east steps.

    The k-th north step must have at least k east steps before it, and the
    labels inside a run of consecutive east steps increase.
    """
    steps: Tuple[DyckStep, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        labels = [s.label for s in self.steps if s.is_east]
        n = len(labels)
        norths = len(self.steps) - n
        if norths != n:
            raise ValidationError(f"Dyck path has {n} east steps but {norths} north steps")
        if sorted(labels) != list(range(1, n + 1)):
            raise ValidationError(f"East labels {labels} are not a permutation of 1..{n}")

        easts_seen, norths_seen, previous = 0, 0, None
        for step in self.steps:
            if step.is_east:
                if previous is not None and previous >= step.label:
                    raise ValidationError(f"Labels in an east run must increase, got {previous} then {step.label}")
                previous = step.label
                easts_seen += 1
            else:
                norths_seen += 1
                previous = None
                if easts_seen < norths_seen:
                    raise ValidationError(f"North step {norths_seen} crosses below the diagonal")

    @property
    def n(self) -> int:
        return len(self.steps) // 2

    def rows(self) -> List[List[int]]:
        """Labels of each row, bottom-up"""
        rows: List[List[int]] = [[]]
        for step in self.steps:
            if step.is_east:
                rows[-1].append(step.label)
            else:
                rows.append([])
        return rows[: self.n]

    def to_candidate(self) -> ParkingCandidate:
        """b_j is the row of label j"""
        values = [0] * self.n
        for row, labels in enumerate(self.rows()):
            for j in labels:
                values[j - 1] = row
        return ParkingCandidate(tuple(values))

    def __str__(self) -> str:
        return " ".join(str(step) for step in self.steps)


class ClassicalModel:
    """Text form of labeled Dyck paths: space-separated `E(label)` and `N` tokens"""

    @staticmethod
    def dyck_from_steps(steps: Iterable[DyckStep]) -> LabeledDyckPath:
        return LabeledDyckPath(tuple(steps))

    @staticmethod
    def parse_dyck(text: Union[str, bytes]) -> LabeledDyckPath:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        steps = []
        tokens = [
            token
            for line_number, raw in enumerate(text.splitlines(), 1)
            for token in InputValidator.format_line(raw, line_number).split()
        ]
        for token in tokens:
            if token == "N":
                steps.append(NORTH)
            elif token.startswith("E(") and token.endswith(")"):
                label = InputValidator.validate_integer(token[2:-1], min_val=1, field_name="East label")
                steps.append(east(label))
            else:
                raise ValidationError(f"Unknown Dyck step {token!r}, expected E(label) or N")
        return LabeledDyckPath(tuple(steps))

    @staticmethod
    def format_dyck(path: LabeledDyckPath) -> str:
        return str(path)
