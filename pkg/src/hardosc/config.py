"""Flat ``key = value`` parameter files.

Blank lines and ``#`` comments are ignored (a ``#`` anywhere starts a
comment).  Recognized keys: omega, eps1, eps2, c, nu, cutoff.
"""
from __future__ import annotations

from pathlib import Path

from .model import HardParams

KEYS = ("omega", "eps1", "eps2", "c", "nu", "cutoff")


class ConfigError(ValueError):
    """Malformed configuration; the message names the key or line."""


def parse_config_text(text: str, source: str = "<config>") -> dict:
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep or not key:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        if key not in KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            if key == "cutoff":
                out[key] = int(value)
            else:
                out[key] = float(value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {value!r}") from None
    return out


def parse_config(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text, str(path))


def hard_params(cfg: dict) -> HardParams:
    for key in ("eps1", "eps2"):
        if key not in cfg:
            raise ConfigError(f"missing required key {key!r}")
    try:
        return HardParams(eps1=cfg["eps1"], eps2=cfg["eps2"], c=cfg.get("c", 1.0), omega=cfg.get("omega", 0.0))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
