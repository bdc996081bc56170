"""Bundled problem configurations, shipped as JSON package data."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path


def _preset_dir():
    return resources.files(__package__) / "presets"


def preset_names() -> tuple[str, ...]:
    return tuple(
        sorted(p.name[: -len(".json")] for p in _preset_dir().iterdir()
               if p.name.endswith(".json"))
    )


def preset_path(name: str) -> Path:
    candidate = _preset_dir() / f"{name}.json"
    if not candidate.is_file():
        raise KeyError(f"no bundled preset named {name!r}; have {preset_names()}")
    return Path(str(candidate))


def load_preset(name: str) -> dict:
    with open(preset_path(name)) as fh:
        return json.load(fh)
