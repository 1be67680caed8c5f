#!/usr/bin/env python3
"""
Config Module

This module provides a singleton configuration class for the
quiver invariants lab. The `Config` class uses the `@dataclass`
decorator for immutability while allowing dynamic default values
read from the environment through `field(default_factory=...)`.

Features:
- Singleton pattern ensures a single instance of the configuration
    is used throughout the application.
- Environment variables are optional; every setting has a default.
- Integer and boolean settings are parsed with the helpers in `utils`.

Usage:
    from config import config
    print(config.COMPONENT_CAP)  # 5 unless QUIVERLAB_COMPONENT_CAP is set

Raises:
    TypeError: If the `Config` class is instantiated directly
        instead of using the `get_instance` method.
"""

import os
from dataclasses import dataclass, field
from typing import Optional
from utils import parse_int_str, parse_bool_str


@dataclass(frozen=True)
class Config:
    """Singleton configuration for the lab, backed by the environment."""

    LOG_LEVEL: str = field(
        default_factory=lambda: os.getenv("QUIVERLAB_LOG_LEVEL", "WARNING")
    )
    LOG_FIELD_LIMIT: int = field(
        default_factory=lambda: parse_int_str(
            os.getenv("QUIVERLAB_LOG_FIELD_LIMIT", "120"), 120
        )
    )
    # Largest n for which the carriage flip graph is enumerated.
    COMPONENT_CAP: int = field(
        default_factory=lambda: parse_int_str(
            os.getenv("QUIVERLAB_COMPONENT_CAP", "5"), 5
        )
    )
    SEED: int = field(
        default_factory=lambda: parse_int_str(
            os.getenv("QUIVERLAB_SEED", "0")
        )
    )
    WITNESS_ATTEMPTS: int = field(
        default_factory=lambda: parse_int_str(
            os.getenv("QUIVERLAB_WITNESS_ATTEMPTS", "200"), 200
        )
    )
    UNGUARDED: bool = field(
        default_factory=lambda: parse_bool_str(
            os.getenv("QUIVERLAB_UNGUARDED", "false")
        )
    )

    _instance: Optional["Config"] = field(
        default=None, init=False, repr=False
    )  # Singleton instance

    def __new__(cls, *args, **kwargs):
        if cls._instance is not None:
            raise TypeError(
                "Config class is a singleton."
                "Use `Config.get_instance()` to access the instance."
            )
        return super().__new__(cls)

    @classmethod
    def get_instance(cls) -> "Config":
        """Return the singleton instance of the Config class."""
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance


config = Config.get_instance()
