#!/usr/bin/env python3
"""
Logging middleware for the raomvn command line
"""

import time
import logging
from typing import Any, Callable, Dict

from models.result_models import CommandOutput

logger = logging.getLogger(__name__)


class CommandLoggingMiddleware:
    """Logs every command invocation and its outcome."""

    def dispatch(self, command: str, options: Dict[str, Any], call_next: Callable[[], CommandOutput]) -> CommandOutput:
        start_time = time.time()
        self._log_command(command, options)

        result = call_next()

        process_time = time.time() - start_time
        self._log_result(command, result, process_time)
        return result

    def _log_command(self, command: str, options: Dict[str, Any]):
        try:
            shown = {k: v for k, v in options.items() if v is not None and k != "command"}
            source = shown.get("input")
            if isinstance(source, str) and source.strip().startswith("{"):
                shown["input"] = f"<inline JSON, {len(source)} chars>"
            logger.info(f"COMMAND: {command} | Options: {shown}")
        except Exception as e:
            logger.error(f"Error logging command: {e}")

    def _log_result(self, command: str, result: CommandOutput, process_time: float):
        try:
            log_message = (
                f"RESULT: {command} | "
                f"Exit: {result.exit_code} | "
                f"Process Time: {process_time:.3f}s | "
                f"Output Size: {len(result.text)} chars"
            )
            if result.exit_code >= 2:
                logger.warning(log_message)
            elif result.exit_code == 1:
                logger.error(log_message)
            else:
                logger.info(log_message)
        except Exception as e:
            logger.error(f"Error logging result: {e}")
