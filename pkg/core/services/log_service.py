import logging
import sys
from typing import Optional

LOGGER_NAME = "gpf"
logger = logging.getLogger(LOGGER_NAME)


class LogService:
    """Activity logging for graph, tree and parking-function operations"""

    _handler: Optional[logging.Handler] = None

    @staticmethod
    def configure(level: str = "WARNING") -> None:
        """Install a single handler on the current stderr at the given level"""
        try:
            old = LogService._handler
            if old is None or old.stream is not sys.stderr:
                # The previous stream may already be closed, so it is dropped without a flush
                if old is not None:
                    logger.removeHandler(old)
                handler = logging.StreamHandler(sys.stderr)
                handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
                logger.addHandler(handler)
                LogService._handler = handler
            logger.setLevel(getattr(logging, level.upper(), logging.WARNING))
        except Exception as e:
            print(f"Logging error: {e}", file=sys.stderr)

    @staticmethod
    def log_activity(description: str, additional_info: str = "", suspicious: bool = False):
        """Log an operation"""
        try:
            message = f"{description} | {additional_info}" if additional_info else description
            if suspicious:
                logger.warning(message)
            else:
                logger.info(message)
        except Exception as e:
            # Logging must never break the operation being logged
            print(f"Logging error: {e}", file=sys.stderr)

    @staticmethod
    def log_suspicious_activity(description: str, additional_info: str = ""):
        """Log failed or rejected operations"""
        LogService.log_activity(description, additional_info, suspicious=True)

    @staticmethod
    def log_graph_loaded(source: str, vertex_count: int, edge_count: int):
        """Log graph parsing"""
        LogService.log_activity(
            "Graph loaded", f"source={source} vertices={vertex_count} edges={edge_count}"
        )

    @staticmethod
    def log_rejection(what: str, reason: str):
        """Log a candidate rejected by a recognition method"""
        LogService.log_activity(f"{what} rejected", reason)

    @staticmethod
    def log_policy_defect(policy_name: str, detail: str):
        """Log an order policy that failed to produce a proper order"""
        LogService.log_suspicious_activity(f"Policy defect in {policy_name}", detail)

    @staticmethod
    def log_verification(subject: str, policy_name: str, passed: bool, detail: str = ""):
        """Log the outcome of an exhaustive verification"""
        description = f"{subject} verification {'passed' if passed else 'FAILED'} for {policy_name}"
        LogService.log_activity(description, detail, suspicious=not passed)

    @staticmethod
    def log_limit_exceeded(operation: str, n: int, cap: int):
        """Log an exponential operation refused by the size cap"""
        LogService.log_suspicious_activity(f"{operation} refused", f"n={n} cap={cap}")
