"""
Environment settings, input validation, logging and file access
"""

import io
import logging
import sys

import pytest

from core.models.parking_model import ParkingCandidate
from core.services.log_service import LogService
from core.store.filestore import FileStore
from core.utils.settings import DEFAULT_MAX_N, Settings
from core.utils.validators import GraphFormatError, InputValidator, LimitExceededError, ValidationError


def test_defaults(monkeypatch):
    monkeypatch.delenv("GPF_MAX_N", raising=False)
    monkeypatch.delenv("GPF_LOG_LEVEL", raising=False)
    assert Settings.from_env() == Settings(max_n=DEFAULT_MAX_N, log_level="WARNING")
    assert DEFAULT_MAX_N == 12


def test_environment_values(monkeypatch):
    monkeypatch.setenv("GPF_MAX_N", "7")
    monkeypatch.setenv("GPF_LOG_LEVEL", "info")
    assert Settings.from_env() == Settings(max_n=7, log_level="INFO")


@pytest.mark.parametrize("raw", ["seven", "-1", "3.5"])
def test_invalid_max_n_falls_back(monkeypatch, raw):
    monkeypatch.setenv("GPF_MAX_N", raw)
    assert Settings.from_env().max_n == DEFAULT_MAX_N


def test_invalid_log_level_falls_back(monkeypatch):
    monkeypatch.setenv("GPF_LOG_LEVEL", "LOUD")
    assert Settings.from_env().log_level == "WARNING"


def test_require_size():
    Settings(max_n=4).require_size("enumeration", 4)
    with pytest.raises(LimitExceededError) as info:
        Settings(max_n=4).require_size("enumeration", 5)
    assert info.value.cap == 4
    assert "n=5 exceeds GPF_MAX_N=4" in str(info.value)
    assert isinstance(info.value, ValidationError)


def test_validators():
    assert InputValidator.sanitize_input(" 0\x00 1\x07 ") == "0 1"
    assert InputValidator.validate_integer("12", min_val=0, max_val=20) == 12
    with pytest.raises(ValidationError):
        InputValidator.validate_integer("", field_name="n")
    with pytest.raises(ValidationError):
        InputValidator.validate_integer("30", max_val=20)
    with pytest.raises(ValidationError):
        InputValidator.validate_vertex(True, 3)
    with pytest.raises(ValidationError):
        InputValidator.validate_candidate_length([0, 0], 3)
    assert InputValidator.parse_integer_tokens("3 1  4") == [3, 1, 4]
    assert InputValidator.format_line("\tedge 1 0\r", 4) == "edge 1 0"
    with pytest.raises(GraphFormatError) as info:
        InputValidator.format_line("edge 1\x012 0", 4)
    assert info.value.line_number == 4
    with pytest.raises(ValidationError):
        InputValidator.parse_integer_tokens("1\x002")


def test_log_service_levels(caplog):
    caplog.set_level(logging.INFO, logger="gpf")
    LogService.log_activity("Counted spanning trees", "n=3 count=16")
    LogService.log_policy_defect("table", "no order listed")
    records = [(r.levelname, r.getMessage()) for r in caplog.records]
    assert ("INFO", "Counted spanning trees | n=3 count=16") in records
    assert ("WARNING", "Policy defect in table | no order listed") in records


def test_configure_moves_to_new_stderr_after_old_one_closed(monkeypatch):
    stale = io.StringIO()
    monkeypatch.setattr(sys, "stderr", stale)
    LogService.configure("INFO")
    stale.close()

    current = io.StringIO()
    monkeypatch.setattr(sys, "stderr", current)
    LogService.configure("INFO")
    LogService.log_activity("Graph loaded", "source=k3.graph")
    assert "Graph loaded | source=k3.graph" in current.getvalue()
    LogService.configure("WARNING")


def test_file_store(tmp_path):
    (tmp_path / "b.pf").write_text("0 1\n")
    store = FileStore(str(tmp_path))
    assert store.exists("b.pf")
    assert store.load_candidate("b.pf") == ParkingCandidate.of(0, 1)
    assert store.load_candidate("1 0") == ParkingCandidate.of(1, 0)
    with pytest.raises(ValidationError):
        store.read_text("missing.graph")
    (tmp_path / "bad.graph").write_bytes(b"\xff\xfe")
    with pytest.raises(ValidationError):
        store.read_text("bad.graph")
