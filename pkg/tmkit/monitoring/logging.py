# tmkit/monitoring/logging.py
"""CLI logging setup: log records go to stderr through click."""
import logging

import click

_LEVELS = {0: logging.WARNING, 1: logging.INFO}


class ClickHandler(logging.Handler):
    def emit(self, record: logging.LogRecord) -> None:
        try:
            click.echo(self.format(record), err=True)
        except Exception:
            self.handleError(record)


def configure_logging(verbosity: int = 0) -> logging.Logger:
    """Install a single stderr handler on the ``tmkit`` logger.

    ``verbosity`` 0 shows warnings, 1 info, 2 or more debug.
    """
    logger = logging.getLogger("tmkit")
    for handler in list(logger.handlers):
        if isinstance(handler, ClickHandler):
            logger.removeHandler(handler)
    handler = ClickHandler()
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(_LEVELS.get(verbosity, logging.DEBUG))
    logger.propagate = False
    return logger
