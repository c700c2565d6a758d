"""Logging setup: human-readable summaries and stage traces go to stderr,
machine-readable results are written by strauslab.report.
"""
import logging
import sys


class LoggerConfig():
    """Root logger configuration with two message formats:

    plain: '%(message)s' (info and warning level)
    debug: '%(asctime)-15s: [%(name)s] %(message)s'
    """

    FORMAT_PLAIN = '%(message)s'
    FORMAT_DEBUG = '%(asctime)-15s: [%(name)s] %(message)s'

    def __init__(self, stream=None):
        """Attach a single stderr handler to the root logger, level info

        Params:
            stream: optional text stream replacing sys.stderr
        """
        self.__handler = logging.StreamHandler(stream or sys.stderr)
        logging.getLogger().addHandler(self.__handler)
        self.info()

    def __switch(self, level, fmt):
        logging.getLogger().setLevel(level)
        self.__handler.setFormatter(logging.Formatter(fmt))

    def debug(self):
        """Debug level, messages carry time and logger name (stage traces)
        """
        self.__switch(logging.DEBUG, self.FORMAT_DEBUG)

    def info(self):
        """Info level, plain messages (summaries)"""
        self.__switch(logging.INFO, self.FORMAT_PLAIN)

    def warning(self):
        """Warnings and errors only"""
        self.__switch(logging.WARNING, self.FORMAT_PLAIN)

    def detach(self):
        """Remove the handler from the root logger"""
        logging.getLogger().removeHandler(self.__handler)
