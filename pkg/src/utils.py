import sys
import logging
from pathlib import Path
from typing import Optional

from .log_level import LogLevel

STEP = 15  # Between DEBUG (10) and INFO (20)
PROGRESS = 25  # Between INFO (20) and WARNING (30)

logging.addLevelName(STEP, 'STEP')
logging.addLevelName(PROGRESS, 'PROGRESS')

# Add convenience methods
def step(self, message, *args, **kwargs):
    if self.isEnabledFor(STEP):
        self._log(STEP, message, args, **kwargs)

def progress(self, message, *args, **kwargs):
    if self.isEnabledFor(PROGRESS):
        self._log(PROGRESS, message, args, **kwargs)


logging.Logger.step = step
logging.Logger.progress = progress

LOG_FILE = "qmap.log"

def setup_logging(log_dir: Optional[Path], log_level: LogLevel) -> logging.Logger:
    """Configure logging for the command-line front end.

    Every module logs through ``logging.getLogger(__name__)`` under the
    ``src`` package, so the handlers are installed once on that logger.

    Args:
        log_dir: Directory for log files, or None for console-only logging
        log_level: LogLevel enum specifying logging verbosity

    Returns:
        The package logger
    """
    logger = logging.getLogger(__package__)

    # Clear any existing handlers
    for handler in logger.handlers:
        handler.close()
    logger.handlers = []
    logger.propagate = False

    level_map = {
        LogLevel.NONE: logging.CRITICAL + 1,
        LogLevel.ERRORS_ONLY: logging.ERROR,
        LogLevel.PROGRESS: PROGRESS,
        LogLevel.STEP: STEP,
        LogLevel.DEBUG: logging.DEBUG
    }
    logger.setLevel(level_map.get(log_level, PROGRESS))

    if log_level == LogLevel.NONE:
        return logger

    # stdout carries command output, diagnostics go to stderr
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter('%(levelname)s - %(message)s'))
    logger.addHandler(console_handler)

    if log_dir is not None:
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_dir / LOG_FILE, encoding='utf-8')
        file_handler.setFormatter(
            logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        )
        logger.addHandler(file_handler)

    return logger
