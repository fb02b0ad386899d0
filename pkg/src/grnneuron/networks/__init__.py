"""Bundled example networks (``.grn``)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

NAMES = ("single_neuron", "toggle", "two_layer_or", "two_layer_and")


def path(name: str) -> Path:
    """Filesystem path of a bundled network, e.g. ``path("two_layer_or")``."""
    if name not in NAMES:
        raise KeyError(f"unknown bundled network {name!r}; choose from {', '.join(NAMES)}")
    return Path(str(resources.files(__name__).joinpath(f"{name}.grn")))


def load(name: str):
    from ..netdef import load as _load
    return _load(path(name))


def spec(name: str):
    from ..netdef import validate
    return validate(load(name))
