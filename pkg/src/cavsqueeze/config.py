"""Plain-text key=value configuration files.

One ``key = value`` pair per line, ``#`` starts a comment, blank lines
ignored.  Complex values are written as ``re`` or ``re+imj``, e.g.
``omega3 = 0+1.5j``.  Unknown keys are an error so typos never pass
silently.
"""

from __future__ import annotations

from .params import SystemParams, _COMPLEX_FIELDS, _REAL_FIELDS


class ConfigError(ValueError):
    """Malformed configuration; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


PARAM_KEYS = tuple(_COMPLEX_FIELDS) + tuple(_REAL_FIELDS)
_REQUIRED = tuple(k for k in PARAM_KEYS if k not in ("mu1", "mu2"))


def parse_value(text: str, key: str, line: int) -> complex:
    try:
        value = complex(text.replace(" ", ""))
    except ValueError:
        raise ConfigError(f"cannot parse value {text!r} for {key}", line) from None
    return value


def parse_pairs(text: str, known_keys, source: str = "<config>") -> dict[str, complex]:
    """Parse key=value lines into a dict, validating keys as we go."""
    pairs: dict[str, complex] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in known_keys:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in pairs:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        pairs[key] = parse_value(value.strip(), key, lineno)
    return pairs


def params_from_pairs(pairs: dict[str, complex]) -> SystemParams:
    missing = [k for k in _REQUIRED if k not in pairs]
    if missing:
        raise ConfigError("missing required keys: " + ", ".join(sorted(missing)))
    kwargs: dict[str, complex | float] = {}
    for key, value in pairs.items():
        if key in _REAL_FIELDS:
            if value.imag != 0.0:
                raise ConfigError(f"{key} must be real, got {value}")
            kwargs[key] = value.real
        else:
            kwargs[key] = value
    return SystemParams(**kwargs)


def parse_params_text(text: str, source: str = "<config>") -> SystemParams:
    return params_from_pairs(parse_pairs(text, PARAM_KEYS, source))


def load_params(path) -> SystemParams:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_params_text(fh.read(), source=str(path))
