"""Straus colorings, their verification, and the stage constructions that
extract DNC / {0,1}-valued functions from bad colorings.

- Define package version
- Initialize Python logging framework
"""

from strauslab.log import LoggerConfig

__version__ = '0.3.0'


# Singleton of the LoggerConfig; the CLI switches levels through it
LOGCONFIG = LoggerConfig()
