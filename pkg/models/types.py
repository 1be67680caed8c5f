#!/usr/bin/env python3
"""
Types module for defining generic types used throughout the project.

`JsonModelType` stands for any `JsonModel` subclass in signatures of
the shared persistence helpers; `JsonDict` is the decoded form of a
JSON object.
"""
from typing import Any, Dict, TypeVar

JsonModelType = TypeVar('JsonModelType', bound='JsonModel')
JsonDict = Dict[str, Any]
