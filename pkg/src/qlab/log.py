"""Logging configuration helpers."""

import logging
from enum import Enum
from typing import Optional, Union

from . import settings


class LogLevel(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"

    @property
    def value_int(self) -> int:
        return logging.getLevelName(self.value)


class LogFormat(str, Enum):
    SIMPLE = "simple"
    VERBOSE = "verbose"
    RICH = "rich"


_FORMATS = {
    LogFormat.SIMPLE: "%(levelname)s %(name)s: %(message)s",
    LogFormat.VERBOSE: "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    LogFormat.RICH: "%(message)s",
}


def _coerce_level(level: Optional[Union[int, str, LogLevel]]) -> LogLevel:
    if level is None:
        level = settings.LOG_LEVEL
    if isinstance(level, LogLevel):
        return level
    if isinstance(level, int):
        name = logging.getLevelName(level)
        return LogLevel[name] if name in LogLevel.__members__ else LogLevel.WARNING
    name = str(level).upper()
    return LogLevel[name] if name in LogLevel.__members__ else LogLevel.WARNING


def _coerce_format(fmt: Optional[Union[str, LogFormat]]) -> LogFormat:
    if fmt is None:
        fmt = settings.LOG_FORMAT
    if isinstance(fmt, LogFormat):
        return fmt
    try:
        return LogFormat(str(fmt).lower())
    except ValueError:
        return LogFormat.SIMPLE


def configure_logging(
    level: Optional[Union[int, str, LogLevel]] = None,
    format: Optional[Union[str, LogFormat]] = None,
) -> None:
    """Configure the ``qlab`` logger hierarchy.

    Args:
        level: Logging level as an int, string, or LogLevel. Defaults to
            ``QLAB_LOG_LEVEL``.
        format: Log format as a string or LogFormat. Defaults to
            ``QLAB_LOG_FORMAT``. ``rich`` installs a RichHandler.
    """
    lvl = _coerce_level(level)
    fmt = _coerce_format(format)

    root = logging.getLogger("qlab")
    for handler in list(root.handlers):
        root.removeHandler(handler)

    if fmt is LogFormat.RICH:
        from rich.logging import RichHandler

        handler: logging.Handler = RichHandler(show_path=False, markup=False)
    else:
        handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(_FORMATS[fmt]))
    root.addHandler(handler)
    root.setLevel(lvl.value_int)
    root.debug("qlab logging configured at level %s", lvl.value)
