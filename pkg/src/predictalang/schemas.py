"""Shipped JSON Schemas for the CLI's machine-readable outputs."""

from __future__ import annotations

import json
from importlib import resources

SCHEMA_NAMES = ("entropy", "patterns", "evaluate", "compare", "manifest")


def load_schema(name: str) -> dict:
    """Load one of the shipped output schemas by stem name."""
    if name not in SCHEMA_NAMES:
        raise ValueError(f"unknown schema {name!r}; available: {SCHEMA_NAMES}")
    text = (
        resources.files("predictalang.data")
        .joinpath(f"schemas/{name}.schema.json")
        .read_text("utf-8")
    )
    return json.loads(text)
