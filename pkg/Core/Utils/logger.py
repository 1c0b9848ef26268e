import logging
import os
import sys
from datetime import datetime

FORMAT = "%(asctime)s [%(levelname)s] %(name)s - %(message)s"


class Logger:
    _logger = None

    @classmethod
    def get_logger(cls, name: str = "TheoryKernel") -> logging.Logger:
        """Singleton logger; TTK_LOG_DIR="" turns the log file off."""
        if cls._logger is None:
            cls._logger = logging.getLogger(name)
            cls._logger.setLevel(logging.DEBUG)
            cls._logger.propagate = False
            formatter = logging.Formatter(FORMAT, datefmt="%Y-%m-%d %H:%M:%S")

            # File Handler, one file per day
            log_dir = os.getenv("TTK_LOG_DIR", "Logs")
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
                log_file = os.path.join(log_dir, f"{datetime.now().strftime('%Y-%m-%d')}.log")
                fh = logging.FileHandler(log_file, encoding="utf-8")
                fh.setLevel(logging.DEBUG)
                fh.setFormatter(formatter)
                cls._logger.addHandler(fh)

            # Console Handler on stderr; stdout carries reports
            ch = logging.StreamHandler(sys.stderr)
            ch.setLevel(os.getenv("TTK_LOG_LEVEL", "INFO").upper())
            ch.setFormatter(formatter)
            cls._logger.addHandler(ch)

        return cls._logger
