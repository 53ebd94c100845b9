import logging
import sys
from pathlib import Path

from app.core.config import get_settings


def setup_logging(level: int = logging.INFO, stream=None) -> None:
    """Configure logging for the engine, the CLI and the API."""
    logs_dir = Path(get_settings().LOG_DIR)
    logs_dir.mkdir(exist_ok=True)

    formatter = logging.Formatter(
        fmt="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    console_handler = logging.StreamHandler(stream or sys.stdout)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)

    file_handler = logging.FileHandler(logs_dir / "app.log")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    for handler in list(root_logger.handlers):
        if getattr(handler, "_engine_handler", False):
            root_logger.removeHandler(handler)
    for handler in (console_handler, file_handler):
        handler._engine_handler = True
        root_logger.addHandler(handler)

    logging.getLogger("uvicorn").setLevel(logging.INFO)
