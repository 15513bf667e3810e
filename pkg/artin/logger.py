"""
Library logger.  Besides the usual levels there is a VERBOSE level below DEBUG which the normal form and ball
builders use for one line per rewrite step or per ball vertex; it makes logs very long, so it is normally off.

The library never installs handlers itself; the command line entry point calls :func:`attach_stderr` and tests
install their own handler in ``tests/__init__.py``.
"""
import logging
import sys

logger = logging.getLogger('artin')

VERBOSE_LOG_LEVEL = int(logging.DEBUG / 2)
logging.addLevelName(VERBOSE_LOG_LEVEL, "VERBOSE")


def log_verbose(*args, **kwargs):
    logger.log(VERBOSE_LOG_LEVEL, *args, stacklevel=2, **kwargs)


logger.verbose = log_verbose
logger.VERBOSE_LOG_LEVEL = VERBOSE_LOG_LEVEL

_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG, VERBOSE_LOG_LEVEL]


def attach_stderr(verbosity: int = 0) -> logging.Handler:
    """
    Route diagnostics to stderr so that stdout carries only machine readable output.

    :param verbosity: number of ``-v`` flags given; 0 warnings only, 3 or more verbose.
    :return: the installed handler (callers remove it again when done).
    """
    level = _LEVELS[min(max(verbosity, 0), len(_LEVELS) - 1)]
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level)
    return handler
