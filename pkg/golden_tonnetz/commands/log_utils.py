import json
import logging
from typing import Any, Dict, Optional

# Get a logger specific to the command layer
logger = logging.getLogger("golden_tonnetz.commands")


def log_activity(command: str, status: str, message: str,
                 data: Optional[Dict[str, Any]] = None,
                 atlas_hash: Optional[str] = None) -> None:
    """Log a command event to stderr-bound logging, never to stdout"""
    log_prefix = f"[{command}] [{status.upper()}]"
    log_reference = f"[Atlas: {atlas_hash}]" if atlas_hash else ""
    log_message = f"{log_prefix} {message} {log_reference}".rstrip()

    status = status.lower()
    if status == "error":
        log_func = logger.error
    elif status == "warning":
        log_func = logger.warning
    else:
        log_func = logger.info
    log_func(log_message)

    # Additional data goes out as JSON at debug level
    if data:
        try:
            logger.debug(f"{log_prefix} Additional data: {json.dumps(data, default=str, sort_keys=True)}")
        except (TypeError, ValueError) as data_err:
            logger.warning(f"{log_prefix} Could not serialize log data: {data_err}")
