# logging helper
#
# Every module of the package logs through a child of the "MSutils" logger,
# which owns a single stream handler.
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

import logging
from typing import Any

LOG_FORMAT = "[%(levelname)s %(asctime)s] %(name)s: %(message)s"
DATE_FORMAT = "%m-%d %H:%M:%S"
ROOT_NAME = "MSutils"


def get_logger(name: str, level: int = logging.INFO) -> logging.Logger:
    """Get a logger.

    Loggers below the package root propagate to the root package logger, which
    owns the single stream handler. Other names get their own handler.

    Args:
        name: The name of the logger, normally ``__name__``.
        level: The level at which to actually log. Logs below this level of
            importance will be discarded.

    Returns:
        The logging.Logger object.
    """
    logger = logging.getLogger(name)
    if name == ROOT_NAME or not name.startswith(ROOT_NAME + "."):
        if not any(getattr(h, "_ms_handler", False) for h in logger.handlers):
            logger.addHandler(build_stream_handler())
        logger.setLevel(level)
    else:
        get_logger(ROOT_NAME)
    return logger


def build_stream_handler(level: int = logging.DEBUG) -> logging.StreamHandler:
    """Build the default stream handler used for most logging."""
    console = logging.StreamHandler()
    console.setLevel(level=level)
    console.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
    console._ms_handler = True
    return console


def set_package_level(level: Any) -> None:
    """Set the level of the package root logger (accepts names or numbers)."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    get_logger(ROOT_NAME).setLevel(level)
