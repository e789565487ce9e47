import sys
from contextlib import suppress

from loguru import logger

_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} - {name} - {level} - {message}"
_sink_id: int | None = None


def setup_logging(level: str = "WARNING"):
    """
    Route pinsim logs to stderr at the given level.

    stdout is left to data output. Calling this again replaces the previous sink.

    Args:
        level: loguru level name

    Returns:
        The configured loguru logger
    """
    global _sink_id
    if _sink_id is None:
        # Drop loguru's default DEBUG sink the first time through
        logger.remove()
    else:
        with suppress(ValueError):
            logger.remove(_sink_id)
    _sink_id = logger.add(sys.stderr, level=level.upper(), format=_FORMAT)
    return logger
