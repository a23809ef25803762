"""Tests for the console logger and the standard-logging bridge."""

import io
import logging

import pytest

from gentlecalc.logger import Level, Logger
from gentlecalc.logging_bridge import (
    GentleCalcLogHandler,
    configure_stdlib_logging,
    reset_stdlib_logging,
)


@pytest.fixture
def stream():
    return io.StringIO()


class TestLogger:
    """Test console and file output."""

    def test_plain_line(self, stream):
        log = Logger(timestamps=False, color=False, stream=stream)
        log.info("resolving")
        log.warn("slow")
        assert stream.getvalue() == "[INFO] resolving\n[WARN] slow\n"

    def test_debug_hidden_by_default(self, stream):
        Logger(timestamps=False, color=False, stream=stream).debug("hidden")
        assert stream.getvalue() == ""
        Logger(timestamps=False, color=False, stream=stream, level=Level.DEBUG).debug("shown")
        assert stream.getvalue() == "[DEBUG] shown\n"

    def test_color(self, stream):
        Logger(timestamps=False, color=True, stream=stream).error("bad")
        assert stream.getvalue() == "\033[31m[ERROR] bad\033[0m\n"

    def test_auto_color_off_for_non_tty(self, stream):
        Logger(timestamps=False, stream=stream).info("x")
        assert "\033[" not in stream.getvalue()

    def test_timestamps(self, stream):
        Logger(color=False, stream=stream).info("x")
        assert stream.getvalue().endswith(" [INFO] x\n")
        assert len(stream.getvalue()) > len("[INFO] x\n")

    def test_log_file(self, stream, tmp_path):
        """Test that the file follows the level threshold and gets a closing line."""
        with Logger(timestamps=False, color=False, stream=stream, log_dir=str(tmp_path)) as log:
            path = log.log_file_path
            log.info("kept")
            log.debug("dropped")
        assert log.log_file_path is None
        text = open(path, encoding="utf-8").read()
        assert "gentle-calculus log" in text
        assert "[INFO] kept" in text
        assert "dropped" not in text
        assert "Log ended:" in text

    def test_unwritable_log_dir(self, stream, tmp_path, capsys):
        blocker = tmp_path / "file"
        blocker.write_text("", encoding="utf-8")
        log = Logger(stream=stream, log_dir=str(blocker / "logs"))
        assert log.log_file_path is None
        assert "File logging disabled" in capsys.readouterr().err

    def test_close_twice(self, tmp_path):
        log = Logger(stream=io.StringIO(), log_dir=str(tmp_path))
        log.close()
        log.close()

    def test_threshold_above_info(self, stream):
        log = Logger(timestamps=False, color=False, stream=stream, level="warning")
        log.info("quiet")
        log.log("ERROR", "loud")
        assert stream.getvalue() == "[ERROR] loud\n"

    def test_debug_reaches_file_when_enabled(self, stream, tmp_path):
        with Logger(stream=stream, log_dir=str(tmp_path), level=Level.DEBUG) as log:
            path = log.log_file_path
            log.debug("traced")
        assert "[DEBUG] traced" in open(path, encoding="utf-8").read()

    def test_timed(self, stream):
        log = Logger(timestamps=False, color=False, stream=stream, level=Level.DEBUG)
        with log.timed("resolve"):
            pass
        line = stream.getvalue()
        assert line.startswith("[DEBUG] resolve: ")
        assert line.endswith(" s\n")

    def test_timed_logs_on_error(self, stream):
        log = Logger(timestamps=False, color=False, stream=stream, level=Level.DEBUG)
        with pytest.raises(RuntimeError):
            with log.timed("ext"):
                raise RuntimeError("boom")
        assert stream.getvalue().startswith("[DEBUG] ext: ")


class TestLevel:
    @pytest.mark.parametrize(
        "name, level",
        [
            ("debug", Level.DEBUG),
            (" Info ", Level.INFO),
            ("WARNING", Level.WARN),
            ("warn", Level.WARN),
        ],
    )
    def test_parse(self, name, level):
        assert Level.parse(name) is level

    def test_parse_unknown(self):
        with pytest.raises(ValueError, match="unknown log level"):
            Level.parse("loud")

    def test_matches_stdlib_numbers(self):
        assert Level.WARN == logging.WARNING
        assert Level.ERROR == logging.ERROR


class TestBridge:
    """Test forwarding standard logging records."""

    def test_named_logger(self, stream):
        target = Logger(timestamps=False, color=False, stream=stream, level=Level.DEBUG)
        handler = configure_stdlib_logging(
            target, level=logging.DEBUG, logger_names=["gentlecalc.test"]
        )
        try:
            log = logging.getLogger("gentlecalc.test")
            log.debug("d")
            log.info("i")
            log.warning("w")
            log.error("e")
            assert isinstance(handler, GentleCalcLogHandler)
        finally:
            reset_stdlib_logging(["gentlecalc.test"])
        assert stream.getvalue().splitlines() == [
            "[DEBUG] [gentlecalc.test] d",
            "[INFO] [gentlecalc.test] i",
            "[WARN] [gentlecalc.test] w",
            "[ERROR] [gentlecalc.test] e",
        ]

    def test_reset_removes_handler(self, stream):
        target = Logger(timestamps=False, color=False, stream=stream)
        configure_stdlib_logging(target, logger_names=["gentlecalc.reset"])
        reset_stdlib_logging(["gentlecalc.reset"])
        log = logging.getLogger("gentlecalc.reset")
        assert not any(isinstance(h, GentleCalcLogHandler) for h in log.handlers)
        assert log.propagate
        log.warning("after reset")
        assert stream.getvalue() == ""

    def test_level_filters(self, stream):
        target = Logger(timestamps=False, color=False, stream=stream)
        configure_stdlib_logging(target, level=logging.WARNING, logger_names=["gentlecalc.lvl"])
        try:
            logging.getLogger("gentlecalc.lvl").info("quiet")
            logging.getLogger("gentlecalc.lvl").warning("loud")
        finally:
            reset_stdlib_logging(["gentlecalc.lvl"])
        assert stream.getvalue() == "[WARN] [gentlecalc.lvl] loud\n"

    def test_critical_logs_as_error(self, stream):
        target = Logger(timestamps=False, color=False, stream=stream)
        configure_stdlib_logging(target, logger_names=["gentlecalc.crit"])
        try:
            logging.getLogger("gentlecalc.crit").critical("down")
        finally:
            reset_stdlib_logging(["gentlecalc.crit"])
        assert stream.getvalue() == "[ERROR] [gentlecalc.crit] down\n"
