"""
Centralized logging controller for codedensity

Provides unified logging that respects the debug_enabled setting.
All messages go to stderr so stdout only carries machine-readable records.
"""

import logging
import sys
import threading
from pathlib import Path
from typing import Optional

LOG_FORMAT = '[%(levelname)s] [%(name)s] [%(asctime)s] %(message)s'
LOG_DATEFMT = '%Y-%m-%d %H:%M:%S'

# Libraries that log a lot at INFO/DEBUG when imported
NOISY_LOGGERS = ('numba', 'galois', 'matplotlib')


class LogController:
    """
    Centralized logging controller.

    Rules:
    - ERROR, WARNING: Always shown
    - INFO: Always shown (progress and summaries)
    - DEBUG: Only shown if debug_enabled = True
    """

    _instance: Optional['LogController'] = None
    _lock = threading.Lock()

    def __init__(self):
        """Initialize the logging controller."""
        self._debug_enabled = False
        self._file_handler: Optional[logging.FileHandler] = None
        self._loggers = {}
        self._setup_logging()

    @classmethod
    def get_instance(cls) -> 'LogController':
        """Get singleton instance of LogController."""
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = cls()
        return cls._instance

    def _setup_logging(self) -> None:
        """Setup standard Python logging configuration."""
        root = logging.getLogger('codedensity')
        root.setLevel(logging.INFO)
        root.propagate = False
        if not root.handlers:
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
            root.addHandler(handler)

        for name in NOISY_LOGGERS:
            logging.getLogger(name).setLevel(logging.WARNING)

    def configure(self, debug_enabled: bool = False, log_file: Optional[str] = None) -> None:
        """
        Configure the log controller from the loaded configuration.

        Args:
            debug_enabled: Show DEBUG messages
            log_file: Optional path of an additional log file
        """
        self._debug_enabled = bool(debug_enabled)
        root = logging.getLogger('codedensity')
        root.setLevel(logging.DEBUG if self._debug_enabled else logging.INFO)

        if self._file_handler is not None:
            root.removeHandler(self._file_handler)
            self._file_handler.close()
            self._file_handler = None

        if log_file:
            try:
                path = Path(log_file)
                path.parent.mkdir(parents=True, exist_ok=True)
                self._file_handler = logging.FileHandler(path, encoding='utf-8')
                self._file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
                root.addHandler(self._file_handler)
            except OSError as e:
                self._fallback_print(f"Could not open log file {log_file}: {e}")

    def _get_logger(self, module_name: str) -> logging.Logger:
        """Get or create logger for specific module."""
        if module_name not in self._loggers:
            self._loggers[module_name] = logging.getLogger(f'codedensity.{module_name}')
        return self._loggers[module_name]

    def _fallback_print(self, message: str) -> None:
        """Fallback print method if logging system fails."""
        print(f"[FALLBACK] {message}", file=sys.stderr)

    def _get_caller_module(self) -> str:
        """Extract module name from call stack."""
        import inspect

        frame = inspect.currentframe()
        try:
            # 0: _get_caller_module, 1: _log, 2: public method, 3: convenience function, 4: caller
            caller_frame = frame.f_back.f_back.f_back.f_back
            if caller_frame:
                module_name = caller_frame.f_globals.get('__name__', 'unknown')
                return module_name.split('.')[-1] if '.' in module_name else module_name
        except AttributeError:
            pass
        finally:
            del frame

        return 'unknown'

    def _log(self, level: str, message: str, *args) -> None:
        """
        Internal logging method with level checking.

        Args:
            level: Log level (debug, info, warning, error)
            message: Message to log
            *args: Arguments for %-style message formatting
        """
        if level == 'debug' and not self._debug_enabled:
            return
        try:
            logger = self._get_logger(self._get_caller_module())
            formatted_message = message % args if args else message
            getattr(logger, level, logger.info)(formatted_message)
        except Exception as e:
            self._fallback_print(f"Logging failed: {e} - Original message: [{level.upper()}] {message}")

    def debug(self, message: str, *args) -> None:
        """Log debug message (only if debug_enabled = True)."""
        self._log('debug', message, *args)

    def info(self, message: str, *args) -> None:
        """Log info message (always shown)."""
        self._log('info', message, *args)

    def warning(self, message: str, *args) -> None:
        """Log warning message (always shown)."""
        self._log('warning', message, *args)

    def error(self, message: str, *args) -> None:
        """Log error message (always shown)."""
        self._log('error', message, *args)

    def is_debug_enabled(self) -> bool:
        """Check if debug logging is currently enabled."""
        return self._debug_enabled


# Global instance for easy access throughout the application
log = LogController.get_instance()


def configure_logging(debug_enabled: bool = False, log_file: Optional[str] = None) -> None:
    """
    Configure the global logging controller.

    This function should be called once during application startup.
    """
    log.configure(debug_enabled=debug_enabled, log_file=log_file)


def get_log_controller() -> LogController:
    """Get the global logging controller instance."""
    return log


# Convenience functions for direct access
def debug(message: str, *args) -> None:
    """Log debug message."""
    log.debug(message, *args)


def info(message: str, *args) -> None:
    """Log info message."""
    log.info(message, *args)


def warning(message: str, *args) -> None:
    """Log warning message."""
    log.warning(message, *args)


def error(message: str, *args) -> None:
    """Log error message."""
    log.error(message, *args)


def is_debug_enabled() -> bool:
    """Check if debug logging is enabled."""
    return log.is_debug_enabled()
