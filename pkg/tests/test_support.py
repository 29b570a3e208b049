import json
import logging

import pytest

from snark_toolkit.config import config
from snark_toolkit.exceptions import BridgeError, handle_exception
from snark_toolkit.monitoring.logger import (
    add_json_logging,
    get_logging_stats,
    log_with_context,
    set_log_dir,
    setup_logger,
)
from snark_toolkit.utils import Timer, bytes_to_human_readable, format_duration, parallel_map


def _square(x):
    return x * x


def test_parallel_map_keeps_order():
    items = list(range(20))
    assert parallel_map(_square, items, threads=1) == [x * x for x in items]
    assert parallel_map(_square, items, threads=2) == [x * x for x in items]
    assert parallel_map(_square, [], threads=4) == []


def test_formatting_helpers():
    assert format_duration(0.25) == "250ms"
    assert format_duration(12.34) == "12.3s"
    assert format_duration(90) == "1.5m"
    assert bytes_to_human_readable(512) == "512.0 B"
    assert bytes_to_human_readable(3 * 1024 * 1024) == "3.0 MB"


def test_timer_context():
    with Timer() as timer:
        pass
    assert timer.elapsed() >= 0


def test_config_validation(monkeypatch):
    assert config.validate()
    monkeypatch.setattr(config.search, "THREADS", 0)
    with pytest.raises(ValueError):
        config.validate()


def test_handle_exception():
    error = handle_exception(BridgeError("pmi", 3), context="pmi")
    assert error["error"] == "BridgeError"
    assert error["details"]["context"] == "pmi"

    error = handle_exception(FileNotFoundError("x.g6"), context="load")
    assert error["error"] == "FileNotFoundError"
    assert error["suggestions"]


def test_json_logging_with_context(tmp_path):
    path = tmp_path / "log.json"
    name = "snark_toolkit.tests.json"
    add_json_logging(str(path), name)
    logger = setup_logger(name)
    logger.setLevel(logging.INFO)
    with log_with_context(logger, step="criterion-1") as log:
        log.info("开始检查")
    for handler in logger.handlers:
        handler.flush()
    records = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
    assert records[-1]["message"].endswith("开始检查")
    assert records[-1]["step"] == "criterion-1"
    stats = get_logging_stats()
    assert any(h.get("file") == str(path) for h in stats["handlers"])


def test_log_dir_override_moves_the_file_handler(tmp_path, monkeypatch):
    monkeypatch.setattr(config.logging, "LOG_FILE", None)
    monkeypatch.setattr(config.logging, "LOG_DIR", None)
    log_dir = tmp_path / "logs"
    handler = set_log_dir(str(log_dir))
    try:
        logger = setup_logger("snark_toolkit.tests.dir")
        logger.warning("目录已切换")
        handler.flush()
        assert (log_dir / "snark_toolkit.log").read_text(encoding="utf-8").rstrip().endswith("目录已切换")
        assert config.logging.LOG_DIR == str(log_dir)
    finally:
        logging.getLogger("snark_toolkit").removeHandler(handler)
        handler.close()
