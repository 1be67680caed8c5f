#!/usr/bin/env python3
"""
Base module providing JSON serialization and file persistence for the
lab's value objects (quivers, carriage-wise polynomials, bases, walk
reports and orbit summaries).

Classes:
    - JsonModel: Mixin for objects that round-trip through a JSON
      object. Subclasses implement `to_json` and `from_json`; the mixin
      supplies canonical dumping and file loading.

Files are written with a fixed key order, two-space indentation and a
trailing newline, so equal objects always produce identical bytes.
"""
import json
from typing import Any, Dict, Type

from errors import FormatError
from models.types import JsonDict, JsonModelType
from utils import override


class JsonModel:
    """
    Base class for objects persisted as a single JSON object.

    Attributes:
        REQUIRED_KEYS (tuple): Keys `from_json` expects; checked by
            `require_keys` before decoding.
    """

    REQUIRED_KEYS: tuple = ()

    @override
    def to_json(self) -> JsonDict:
        """Convert the object to its JSON representation."""
        pass

    @classmethod
    def from_json(cls: Type[JsonModelType], data: JsonDict) -> JsonModelType:
        """Build an object from its JSON representation."""
        raise NotImplementedError(
            f"`from_json` must be implemented by `{cls.__name__}`."
        )

    @classmethod
    def require_keys(cls, data: Any) -> Dict[str, Any]:
        """
        Check that `data` is a JSON object holding REQUIRED_KEYS.

        Raises:
            FormatError: If `data` is not an object or a key is missing.
        """
        if not isinstance(data, dict):
            raise FormatError(
                f"{cls.__name__}: expected a JSON object, "
                f"got {type(data).__name__}"
            )
        missing = [key for key in cls.REQUIRED_KEYS if key not in data]
        if missing:
            raise FormatError(
                f"{cls.__name__}: missing keys {', '.join(missing)}"
            )
        return data

    def dumps(self) -> str:
        """Return the canonical text of the object."""
        return dump_json(self.to_json())

    @classmethod
    def loads(cls: Type[JsonModelType], text: str) -> JsonModelType:
        """Parse an object from its text form."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise FormatError(f"{cls.__name__}: invalid JSON: {err}")
        try:
            return cls.from_json(data)
        except FormatError:
            raise
        except (KeyError, TypeError, ValueError) as err:
            raise FormatError(f"{cls.__name__}: {err}")

    def save_to_file(self, file_path: str) -> None:
        """Write the object to `file_path`."""
        with open(file_path, "w", encoding="utf-8") as f:
            f.write(self.dumps())

    @classmethod
    def load_from_file(
            cls: Type[JsonModelType], file_path: str
    ) -> JsonModelType:
        """
        Load an object from `file_path`.

        Raises:
            FormatError: If the file cannot be read or decoded.
        """
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as err:
            raise FormatError(f"cannot read {file_path}: {err.strerror}")
        return cls.loads(text)


def dump_json(data: Any) -> str:
    """Canonical JSON text: insertion key order, indent 2, final newline."""
    return json.dumps(data, indent=2, ensure_ascii=True) + "\n"
