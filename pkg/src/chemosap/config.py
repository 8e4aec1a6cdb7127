"""Flat key=value experiment configuration.

Peaks use the compact syntax ``ampExpr@width@center[@centerZCoeff]`` where
``ampExpr`` is ``a0`` or ``a0+a1z`` (also ``a0-a1z``); several peaks are
separated by ``;``.  The same affine expression syntax is used for alpha.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ConfigurationError

__all__ = ["Peak", "SimConfig", "parse_config"]

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_AFFINE_RE = re.compile(rf"^({_NUM})(?:\s*([+-])\s*({_NUM})\s*\*?\s*z)?$")

MODELS = ("nonlocal", "local", "ks-limit")
UQ_MODES = ("gpc", "collocation", "deterministic")


@dataclass(frozen=True)
class Peak:
    amp0: float
    amp1: float
    width: float
    center0: float
    center1: float


@dataclass
class SimConfig:
    model: str
    eps: float
    t_end: float
    peaks: list[Peak]
    uq: str = "gpc"
    x_max: float = 1.0
    n_cells: int = 400
    v_max: float = 1.0
    n_v: int = 8
    gpc_order: int = 4
    colloc_nodes: int = 20
    alpha: tuple[float, float] = (1.0, 0.0)
    lambda_cfl: float = 0.02
    output_dir: str = "out"
    snapshot_times: list[float] = field(default_factory=list)

    @property
    def dx(self) -> float:
        return 2.0 * self.x_max / self.n_cells

    @property
    def dt(self) -> float:
        return self.lambda_cfl * self.dx

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ConfigurationError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.uq not in UQ_MODES:
            raise ConfigurationError(f"uq must be one of {UQ_MODES}, got {self.uq!r}")
        if self.eps < 0.0:
            raise ConfigurationError("eps must be >= 0")
        if self.model != "ks-limit" and self.eps == 0.0:
            raise ConfigurationError("kinetic models need eps > 0; use model=ks-limit")
        if not self.t_end > 0.0:
            raise ConfigurationError("t_end must be positive")
        if not self.dt > 0.0:
            raise ConfigurationError("lambda_cfl must be positive")
        if not self.peaks:
            raise ConfigurationError("at least one peak is required")
        if self.alpha[0] - abs(self.alpha[1]) <= 0.0:
            raise ConfigurationError("alpha must stay positive on z in [-1, 1]")
        for p in self.peaks:
            if p.amp0 - abs(p.amp1) < 0.0:
                raise ConfigurationError(
                    f"peak amplitude {p.amp0}+{p.amp1}z goes negative on z in [-1, 1]")
            if not p.width > 0.0:
                raise ConfigurationError("peak width must be positive")


def _parse_affine(text: str, where: str) -> tuple[float, float]:
    m = _AFFINE_RE.match(text.strip())
    if not m:
        raise ConfigurationError(f"{where}: cannot parse affine expression {text!r}")
    a0 = float(m.group(1))
    a1 = 0.0
    if m.group(3) is not None:
        a1 = float(m.group(3))
        if m.group(2) == "-":
            a1 = -a1
    return a0, a1


def _parse_peaks(text: str, where: str) -> list[Peak]:
    peaks = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        fields = part.split("@")
        if len(fields) not in (3, 4):
            raise ConfigurationError(
                f"{where}: peak {part!r} must be amp@width@center[@centerZCoeff]")
        amp0, amp1 = _parse_affine(fields[0], where)
        try:
            width = float(fields[1])
            center0 = float(fields[2])
            center1 = float(fields[3]) if len(fields) == 4 else 0.0
        except ValueError as exc:
            raise ConfigurationError(f"{where}: malformed number in peak {part!r}") from exc
        peaks.append(Peak(amp0=amp0, amp1=amp1, width=width,
                          center0=center0, center1=center1))
    return peaks


_FLOAT_KEYS = {"eps", "t_end", "x_max", "v_max", "lambda_cfl"}
_INT_KEYS = {"n_cells", "n_v", "gpc_order", "colloc_nodes"}
_STR_KEYS = {"model", "uq", "output_dir"}


def parse_config(text: str) -> SimConfig:
    """Parse key=value lines into a validated SimConfig."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        where = f"line {lineno} ({key})"
        if key in values:
            raise ConfigurationError(f"{where}: duplicate key")
        if key in _FLOAT_KEYS:
            try:
                values[key] = float(val)
            except ValueError as exc:
                raise ConfigurationError(f"{where}: malformed number {val!r}") from exc
        elif key in _INT_KEYS:
            try:
                values[key] = int(val)
            except ValueError as exc:
                raise ConfigurationError(f"{where}: malformed integer {val!r}") from exc
        elif key in _STR_KEYS:
            values[key] = val
        elif key == "alpha":
            values[key] = _parse_affine(val, where)
        elif key == "peaks":
            values[key] = _parse_peaks(val, where)
        elif key == "snapshot_times":
            try:
                values[key] = [float(t) for t in val.split(",") if t.strip()]
            except ValueError as exc:
                raise ConfigurationError(f"{where}: malformed time list {val!r}") from exc
        else:
            raise ConfigurationError(f"{where}: unknown key")

    missing = [k for k in ("model", "eps", "t_end", "peaks") if k not in values]
    if missing:
        raise ConfigurationError(f"missing required keys: {', '.join(missing)}")
    cfg = SimConfig(**values)
    cfg.validate()
    return cfg
