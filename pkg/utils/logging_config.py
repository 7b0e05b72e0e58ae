# utils/logging_config.py

import logging

logger = logging.getLogger("sset_kit")
ch = logging.StreamHandler()
formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')
ch.setFormatter(formatter)
if not logger.handlers:
    logger.addHandler(ch)

# package loggers (analysis.*, covering.*, ...) report through the root handler
_PACKAGES = ("analysis", "covering", "mixtures", "commands", "tasks", "utils")


def configure_logging(level: str = "WARNING") -> None:
    """Attach the shared stderr handler to every package logger at `level`."""
    numeric = getattr(logging, str(level).upper(), logging.WARNING)
    logger.setLevel(numeric)
    for name in _PACKAGES:
        pkg_logger = logging.getLogger(name)
        pkg_logger.setLevel(numeric)
        if ch not in pkg_logger.handlers:
            pkg_logger.addHandler(ch)
