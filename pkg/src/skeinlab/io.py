"""Packaged data, JSON schemas and deterministic report envelopes."""

from __future__ import annotations

import hashlib
import json
from importlib import resources

import jsonschema

from . import CONVENTIONS_VERSION, __version__


def schema(name: str) -> dict:
    text = resources.files("skeinlab").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(data, name: str) -> None:
    """Raise ``jsonschema.ValidationError`` if ``data`` does not match the named schema."""
    jsonschema.validate(data, schema(name))


def data_path(name: str):
    return resources.files("skeinlab").joinpath("data", name)


def corpus_triangulations() -> dict[str, str]:
    """Packaged triangulation documents keyed by surface name."""
    out = {}
    for entry in sorted(resources.files("skeinlab").joinpath("data").iterdir(),
                        key=lambda p: p.name):
        if entry.name.endswith(".json"):
            out[entry.name[:-5]] = entry.read_text()
    return out


def file_digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def manifest(command: str, inputs=(), seed: int | None = None) -> dict:
    return {
        "command": command,
        "inputs": {str(p): file_digest(p) for p in inputs},
        "seed": seed,
        "tool_version": __version__,
        "conventions_version": CONVENTIONS_VERSION,
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def envelope(command: str, result, inputs=(), seed: int | None = None, ok: bool = True) -> dict:
    env = {"manifest": manifest(command, inputs, seed), "result": result, "ok": ok}
    validate(env, "report")
    return env
