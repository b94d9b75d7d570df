import logging
import os
from contextlib import contextmanager
from logging.handlers import TimedRotatingFileHandler
from typing import Any, Iterator

import structlog

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
DEGLOCI_LOG_LEVEL = os.getenv("DEGLOCI_LOG_LEVEL", "INFO").upper()

handlers: list[logging.Handler] = [logging.StreamHandler()]
log_file = os.getenv("LOG_FILE")
if log_file:
    handlers.append(TimedRotatingFileHandler(log_file, when="midnight", backupCount=7))

logging.basicConfig(format="%(message)s", level=LOG_LEVEL, handlers=handlers)

# Summary mode: keep the per-step engine events quiet, report only solver outcomes
if DEGLOCI_LOG_LEVEL == "SUMMARY":
    logging.getLogger("degloci.kronecker").setLevel(logging.WARNING)
    logging.getLogger("degloci.upoly").setLevel(logging.WARNING)
    logging.getLogger("degloci").setLevel(logging.INFO)
elif DEGLOCI_LOG_LEVEL == "DEBUG":
    logging.getLogger("degloci").setLevel(logging.DEBUG)


def _exact(value: Any) -> Any:
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_exact(v) for v in value]
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        num, den = int(value.numerator), int(value.denominator)
        return num if den == 1 else f"{num}/{den}"
    return value


def render_rationals(_, __, event_dict: dict) -> dict:
    """Write QQ elements as ``num/den`` so the JSON renderer can take them."""
    return {key: _exact(value) for key, value in event_dict.items()}


structlog.configure(
    processors=[
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.contextvars.merge_contextvars,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        render_rationals,
        structlog.processors.JSONRenderer(),
    ],
    logger_factory=structlog.stdlib.LoggerFactory(),
)


@contextmanager
def solver_context(**values: Any) -> Iterator[None]:
    """Attach seed, prime, attempt or chart to every event logged inside the block."""
    bound = {key: value for key, value in values.items() if value is not None}
    with structlog.contextvars.bound_contextvars(**bound):
        yield


def get_logger(name: str = "degloci"):
    return structlog.get_logger(name)
