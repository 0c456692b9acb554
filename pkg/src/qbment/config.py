"""Line-oriented ``key = value`` sweep configuration files."""

from dataclasses import replace

from .errors import ConfigError, ParameterError
from .harness import SweepConfig
from .model import SystemParams

PARAM_KEYS = {"omega": "omega", "gamma": "gamma", "lambda_cutoff": "cutoff",
              "temperature": "temperature"}
SWEEP_KEYS = ("r", "t_start", "t_end", "steps", "quad_tol")
KNOWN_KEYS = tuple(PARAM_KEYS) + SWEEP_KEYS


def parse_value(key, raw):
    """Convert the text of one setting, raising :class:`ConfigError` naming ``key``."""
    if key not in KNOWN_KEYS:
        raise ConfigError(f"unknown key {key!r}", key=key)
    text = str(raw).strip()
    try:
        if key == "steps":
            return int(text)
        value = float(text)
    except ValueError:
        kind = "an integer" if key == "steps" else "a number"
        raise ConfigError(f"{key}: expected {kind}, got {text!r}", key=key) from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ConfigError(f"{key}: value must be finite, got {text!r}", key=key)
    return value


def parse_config_text(text, source="<config>"):
    """Parse config text into a dict of typed values."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: missing key")
        try:
            values[key] = parse_value(key, raw)
        except ConfigError as exc:
            raise ConfigError(f"{source}:{lineno}: {exc}", key=exc.key) from None
    return values


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read(), source=str(path))


def build_config(values, base=None, outputs=None):
    """Overlay ``values`` on ``base`` (default :class:`SweepConfig`) and validate."""
    base = SweepConfig() if base is None else base
    pkw = {PARAM_KEYS[k]: v for k, v in values.items() if k in PARAM_KEYS}
    skw = {k: v for k, v in values.items() if k in SWEEP_KEYS}
    unknown = set(values) - set(KNOWN_KEYS)
    if unknown:
        key = sorted(unknown)[0]
        raise ConfigError(f"unknown key {key!r}", key=key)
    try:
        params = replace(base.params, **pkw)
    except ParameterError as exc:
        key = next((k for k, v in PARAM_KEYS.items() if v == exc.name), exc.name)
        raise ConfigError(str(exc), key=key) from None
    if outputs is not None:
        skw["outputs"] = frozenset(outputs)
    return replace(base, params=params, **skw)
