#!/usr/bin/env python3
"""
utils Module

Small helpers shared across the lab.

Functions:
    override:
        Decorator to enforce that a method must be overridden
        in a subclass.
    parse_int_str:
        Parses a string into an integer, returning a default value
        if parsing fails.
    parse_bool_str:
        Parses the usual truthy spellings of an environment flag.
    parse_vertex_list:
        Parses a comma separated vertex sequence such as "4,2,2".
"""
import functools
from typing import List


def override(method):
    """
    Decorator to enforce that a method must be overridden in a subclass.

    If the subclass does not provide its own implementation of the
    decorated method, calling it raises NotImplementedError.

    Args:
        method (function): The method to be decorated.

    Returns:
        function: The wrapper function that enforces the override.

    Raises:
        NotImplementedError: If the method is not overridden in the subclass.
    """
    @functools.wraps(method)
    def wrapper(self, *args, **kwargs):
        implementation = type(self).__dict__.get(method.__name__)
        if implementation is None or implementation is wrapper:
            raise NotImplementedError(
                f"The method `{method.__name__}` "
                f"must be overridden in the subclass "
                f"`{self.__class__.__name__}`."
            )
        return method(self, *args, **kwargs)

    return wrapper


def parse_int_str(value: str, default: int = 0) -> int:
    """
    Parse a string into an integer, or return a default value if
    parsing fails.

    Args:
        value (str): The string value to parse.
        default (int): The default value to return if parsing fails.

    Returns:
        int: Parsed integer value or the default value.
    """
    try:
        return int(value)
    except (ValueError, TypeError):
        return default


def parse_bool_str(value: str, default: bool = False) -> bool:
    """
    Parse an environment flag.

    Args:
        value (str): "1", "true", "yes" or "on" (any case) mean True;
            "0", "false", "no", "off" and "" mean False.
        default (bool): Returned for anything else, including None.

    Returns:
        bool: The parsed flag.
    """
    if not isinstance(value, str):
        return default
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off", ""):
        return False
    return default


def parse_vertex_list(value: str) -> List[int]:
    """
    Parse a comma separated list of vertices.

    An empty or blank string is the empty sequence.

    Raises:
        ValueError: If an item is not an integer.
    """
    if value is None or not value.strip():
        return []
    return [int(item) for item in value.split(",")]
