"""Flat ``key = value`` run configuration.

Lines are ``key = value``; ``#`` starts a comment; blank lines are ignored.
Every key has a default (see :class:`RunConfig`) and unknown keys are
rejected.  Booleans accept true/false/yes/no/1/0.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .errors import ParseError
from .train import TrainConfig


@dataclass
class RunConfig(TrainConfig):
    reviews: str = ""
    format: str = ""
    glove: str = ""
    embedding_dim: int = 100
    stopwords: str = ""
    pos_lexicon: str = ""
    pos_filter: bool = True
    stemming: bool = True
    min_freq: int = 1
    dedup: bool = False
    train_ratio: float = 0.8
    val_ratio: float = 0.1
    record_timing: bool = False

    @property
    def archs(self) -> list[str]:
        """``arch`` may name several comma-separated architectures."""
        return [a.strip() for a in self.arch.split(",") if a.strip()]

    def validate(self) -> None:
        for arch in self.archs or [""]:
            self.train_config(arch).validate()

    def train_config(self, arch: str | None = None) -> TrainConfig:
        names = {f.name for f in fields(TrainConfig)}
        cfg = TrainConfig(**{k: v for k, v in asdict(self).items() if k in names})
        if arch is not None:
            cfg.arch = arch
        return cfg

    def dumps(self) -> str:
        return "".join(f"{k} = {_format(v)}\n" for k, v in asdict(self).items())


_TRUE = {"true", "yes", "1", "on"}
_FALSE = {"false", "no", "0", "off"}


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def coerce(key: str, raw: str, template):
    if isinstance(template, bool):
        low = raw.strip().lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ValueError(f"{key}: expected a boolean, got {raw!r}")
    if isinstance(template, int):
        return int(raw)
    if isinstance(template, float):
        return float(raw)
    return raw


def parse_config(text: str, source: str = "<config>") -> dict:
    """Parse config text into a dict of typed overrides."""
    defaults = asdict(RunConfig())
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected key = value", line=lineno, path=source)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in defaults:
            raise ParseError(f"unknown key {key!r}", line=lineno, path=source)
        try:
            out[key] = coerce(key, value, defaults[key])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno, path=source) from exc
    return out


def load_config(path: str | Path | None, **overrides) -> RunConfig:
    """Defaults, then the file, then non-None keyword overrides."""
    values = {}
    if path:
        values.update(parse_config(Path(path).read_text(encoding="utf-8"), str(path)))
    values.update({k: v for k, v in overrides.items() if v is not None})
    cfg = RunConfig(**values)
    cfg.validate()
    if not (0.0 < cfg.train_ratio < 1.0 and 0.0 <= cfg.val_ratio and cfg.train_ratio + cfg.val_ratio < 1.0):
        raise ValueError("need 0 < train_ratio, 0 <= val_ratio, train_ratio + val_ratio < 1")
    return cfg
