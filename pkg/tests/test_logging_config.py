import io
import logging

from app.core.logging_config import setup_logging


class TestSetupLogging:
    """Tests for the shared logging setup"""

    def test_repeated_setup_keeps_one_handler_pair(self):
        """Test that calling setup twice replaces the engine handlers instead of stacking them"""
        setup_logging(stream=io.StringIO())
        setup_logging(stream=io.StringIO())
        engine_handlers = [h for h in logging.getLogger().handlers if getattr(h, "_engine_handler", False)]
        assert len(engine_handlers) == 2

    def test_console_level_and_stream(self):
        """Test that engine records reach the given stream at the requested level"""
        stream = io.StringIO()
        setup_logging(logging.WARNING, stream=stream)
        logger = logging.getLogger("app.services.structure")
        logger.info("hidden")
        logger.warning("shown")
        assert "shown" in stream.getvalue()
        assert "hidden" not in stream.getvalue()
        assert logging.getLogger("uvicorn").level == logging.INFO
