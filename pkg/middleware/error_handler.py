import logging
import sys
from typing import Callable, Optional, TextIO

from models.result_models import CommandOutput
from utils.error_handler import (
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL_ERROR,
    RaoMVNException,
    create_error_response,
    log_error,
)

logger = logging.getLogger(__name__)


class CommandErrorHandler:
    """Turns exceptions raised by a command into an exit code and a one-line diagnostic."""

    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream

    def _emit(self, code: str, message: str):
        # one line, machine-parseable
        text = " ".join(str(message).split())
        print(f"error: {code}: {text}", file=self.stream or sys.stderr)

    def domain_exception_handler(self, command: str, exc: RaoMVNException) -> CommandOutput:
        log_error(exc, command)
        response = create_error_response(exc.exit_code, exc.message, exc.error_code, command=command)
        self._emit(response["error"]["code"], response["error"]["message"])
        return CommandOutput(exit_code=exc.exit_code)

    def io_exception_handler(self, command: str, exc: OSError) -> CommandOutput:
        log_error(exc, command)
        self._emit("IO_ERROR", f"{exc.strerror or exc}: {exc.filename or ''}")
        return CommandOutput(exit_code=EXIT_INPUT_ERROR)

    def general_exception_handler(self, command: str, exc: Exception) -> CommandOutput:
        log_error(exc, command)
        self._emit("INTERNAL_ERROR", f"{type(exc).__name__}: {exc}")
        return CommandOutput(exit_code=EXIT_INTERNAL_ERROR)

    def guard(self, command: str, call: Callable[[], CommandOutput]) -> CommandOutput:
        try:
            return call()
        except RaoMVNException as exc:
            return self.domain_exception_handler(command, exc)
        except OSError as exc:
            return self.io_exception_handler(command, exc)
        except Exception as exc:
            return self.general_exception_handler(command, exc)
