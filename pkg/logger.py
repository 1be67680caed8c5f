#!/usr/bin/env python3
"""
Module for compacting bulky fields in log messages.

Polynomials, sample points and matrix rows can be thousands of
characters long. The `compact_fields` function shortens the values of
selected `key=value` fields in a log message so progress logs stay
readable, and `CompactingFormatter` applies it to every record.

Messages are expected in the form "key=value;key=value;".
"""

import logging
import re
import sys
from typing import List

from config import config


BULKY_FIELDS = ("poly", "point", "diff", "pieces", "row")


class CompactingFormatter(logging.Formatter):
    """ Compacting Formatter class"""

    ELLIPSIS = "..."
    FORMAT = "[quiverlab] %(name)s %(levelname)s %(asctime)-15s: %(message)s"
    SEPARATOR = ";"

    def __init__(self, fields: List[str], limit: int = 120):
        self.fields = fields
        self.limit = limit
        super(CompactingFormatter, self).__init__(self.FORMAT)

    def format(self, record: logging.LogRecord) -> str:
        """
        Format a log record, shortening the bulky fields of its message.

        Example:
            With limit 8 the message
                "s=++-+--;poly=x12^2 + 2*x12*x13 + x13^2;"
            becomes
                "s=++-+--;poly=x12^2 + ...(25 chars);"
        """
        record.msg = compact_fields(
            self.fields,
            self.limit,
            record.getMessage(),
            self.SEPARATOR
        )
        record.args = ()

        return super(CompactingFormatter, self).format(record)


def compact_fields(
        fields: List[str], limit: int,
        message: str, separator: str
) -> str:
    """
    Shorten values of specific fields in a log message.

    Arguments:
        fields (List[str]): Field names (keys) whose values may be long.
        limit (int): Longest value kept verbatim.
        message (str): The log message.
        separator (str): The character that separates fields.

    Returns:
        str: The message with every long value cut to `limit`
            characters followed by the original length.
    """
    pattern = f"({'|'.join(fields)})=([^{separator}]*)"

    def shorten(match: re.Match) -> str:
        value = match.group(2)
        if len(value) <= limit:
            return match.group(0)
        return (f"{match.group(1)}={value[:limit]}"
                f"{CompactingFormatter.ELLIPSIS}({len(value)} chars)")

    return re.sub(pattern, shorten, message)


def get_logger(name: str = "quiverlab") -> logging.Logger:
    """
    Configure and return a lab logger.

    The logger writes to standard error through a `CompactingFormatter`,
    so standard output stays free for command reports. Propagation is
    disabled and the handler is attached only once per logger name.

    Returns:
        logging.Logger: The configured logger instance.
    """
    logger = logging.getLogger(name)
    logger.setLevel(config.LOG_LEVEL.upper())
    logger.propagate = False

    if not logger.handlers:
        stream_handler = logging.StreamHandler(sys.stderr)
        stream_handler.setFormatter(
            CompactingFormatter(list(BULKY_FIELDS), config.LOG_FIELD_LIMIT)
        )
        logger.addHandler(stream_handler)

    return logger
