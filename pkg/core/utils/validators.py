from typing import List, Optional, Sequence


class ValidationError(Exception):
    """Custom exception for validation errors"""
    pass


class GraphFormatError(ValidationError):
    """Malformed line in one of the text formats"""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        self.message = message
        super().__init__(f"line {line_number}: {message}")


class LimitExceededError(ValidationError):
    """Exponential operation requested past the configured size cap"""

    def __init__(self, operation: str, n: int, cap: int):
        self.operation = operation
        self.n = n
        self.cap = cap
        super().__init__(
            f"{operation} is exponential in n; n={n} exceeds GPF_MAX_N={cap}"
        )


class InputValidator:
    """Input validation using whitelisting approach"""

    @staticmethod
    def sanitize_input(input_str: str) -> str:
        """General input sanitization"""
        if not isinstance(input_str, str):
            return str(input_str)

        # Remove null bytes and control characters
        sanitized = input_str.replace('\x00', '')
        sanitized = ''.join(char for char in sanitized if ord(char) >= 32 or char in '\n\r\t')

        return sanitized.strip()

    @staticmethod
    def format_line(raw: str, line_number: int) -> str:
        """One line of a text format; control characters are an error there, not noise"""
        for char in raw:
            if ord(char) < 32 and char not in '\t\r':
                raise GraphFormatError(line_number, f"control character {char!r} in line")
        return raw.strip()

    @staticmethod
    def validate_integer(value: str, min_val: Optional[int] = None, max_val: Optional[int] = None,
                         field_name: str = "Value") -> int:
        """Validate integer input with optional range"""
        if value is None or str(value).strip() == "":
            raise ValidationError(f"{field_name} cannot be empty")

        value = str(value).replace('\x00', '').strip()

        try:
            int_val = int(value)
        except ValueError:
            raise ValidationError(f"{field_name} must be a valid integer, got {value!r}")

        if min_val is not None and int_val < min_val:
            raise ValidationError(f"{field_name} must be at least {min_val}")

        if max_val is not None and int_val > max_val:
            raise ValidationError(f"{field_name} must be at most {max_val}")

        return int_val

    @staticmethod
    def validate_vertex(value: int, vertex_count: int, field_name: str = "Vertex") -> int:
        """Validate a vertex index against a graph on 0..vertex_count-1"""
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{field_name} must be an integer")
        if not 0 <= value < vertex_count:
            raise ValidationError(f"{field_name} {value} out of range 0..{vertex_count - 1}")
        return value

    @staticmethod
    def validate_candidate_length(values: Sequence[int], n: int) -> None:
        """A candidate carries exactly one value per non-root vertex"""
        if len(values) != n:
            raise ValidationError(
                f"candidate has {len(values)} values but the graph has {n} non-root vertices"
            )

    @staticmethod
    def parse_integer_tokens(text: str, field_name: str = "Value", min_val: Optional[int] = None) -> List[int]:
        """Parse whitespace-separated integers"""
        tokens = [
            token
            for line_number, raw in enumerate(text.splitlines(), 1)
            for token in InputValidator.format_line(raw, line_number).split()
        ]
        return [InputValidator.validate_integer(token, min_val=min_val, field_name=field_name) for token in tokens]
