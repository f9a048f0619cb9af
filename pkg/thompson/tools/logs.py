from __future__ import annotations

import logging

from rich.console import Console
from rich.logging import RichHandler

LOG_FORMAT = "%(name)s: %(message)s"


def setup_logging(level: str = "WARNING") -> None:
    """Корневой логгер пишет через RichHandler в stderr, stdout остаётся для JSON."""
    logging.basicConfig(
        level=level.upper(),
        format=LOG_FORMAT,
        handlers=[RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=False)],
        force=True,
    )
