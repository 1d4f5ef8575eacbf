"""The shared UPOS reduction table.

The table is the external interface between this adapter and the
analysis toolkit: both sides load the same JSON resource
(``predictalang/data/upos_reduction.json``), so the category mapping has
a single source of truth. A different table can be supplied explicitly
for experiments.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path


def load_reduction(path: str | Path | None = None) -> tuple[list[str], dict[str, str]]:
    """Return (tag names, UPOS -> reduced-name map)."""
    if path is None:
        text = (
            resources.files("predictalang.data")
            .joinpath("upos_reduction.json")
            .read_text("utf-8")
        )
    else:
        text = Path(path).read_text("utf-8")
    table = json.loads(text)
    tags = list(table["tags"])
    reduction = {upos.upper(): coarse for upos, coarse in table["reduction"].items()}
    unknown_targets = set(reduction.values()) - set(tags)
    if unknown_targets:
        raise ValueError(f"reduction targets outside the tag set: {unknown_targets}")
    return tags, reduction
