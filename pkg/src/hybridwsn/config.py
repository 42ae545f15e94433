"""Configuration files and named presets.

The file format is INI-style: ``[section]`` headers followed by
``key = value`` lines; ``#`` and ``;`` start comments. Every key is optional
and falls back to the defaults of the experimental setup::

    [network]
    n = 100
    m = 0.5
    alpha = 1
    e0 = 0.5 J
    p = 0.1
    seed = 1
    region_allocation = proportional      # or four counts: 19, 25, 31, 25

    [layout]
    field_width = 100
    field_height = 100
    r1_y_min = 80
    r3_x_min = 30
    r3_x_max = 70
    bs = 50, 120
    relay = 50, 80

    [energy]
    e_elec = 5 nJ/bit
    e_fs = 10 pJ/bit/m^2
    e_amp = 0.0013 pJ/bit/m^4
    e_da = 5 pJ/bit
    l = 4000

    [run]
    protocol = hybrid                     # leach | sep | snrp | hybrid
    max_rounds = 10000
    seeds = 1-10                          # ranges and comma lists

Energy values accept an optional ``J``/``mJ``/``uJ``/``nJ``/``pJ`` unit; a
trailing ``/bit...`` descriptor is ignored. Bare numbers are joules.
"""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass, field, fields, replace
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .engine import DEFAULT_MAX_ROUNDS
from .experiments import DEFAULT_SEEDS
from .netmodel import NetworkConfig, Position, RegionLayout
from .protocols import ProtocolKind
from .radio import EnergyParams

UNITS = {"j": 0, "mj": -3, "uj": -6, "µj": -6, "nj": -9, "pj": -12}  # decimal exponents
_ENERGY_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*([a-zA-Zµ]*)\s*(/.*)?$")

PRESETS: dict[str, dict[str, float]] = {
    "default": {},
    "paper-lifetime": {"m": 0.5, "alpha": 1.0},
    "paper-energy": {"m": 0.5, "alpha": 2.0},
}


@dataclass(frozen=True)
class RunConfig:
    network: NetworkConfig = field(default_factory=NetworkConfig)
    protocol: ProtocolKind = ProtocolKind.HYBRID
    max_rounds: int = DEFAULT_MAX_ROUNDS
    seeds: tuple[int, ...] = DEFAULT_SEEDS

    def __post_init__(self):
        object.__setattr__(self, "protocol", ProtocolKind(self.protocol))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        if not self.seeds:
            raise ValueError("seeds must be non-empty")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")


def parse_energy(text: str) -> float:
    match = _ENERGY_RE.match(text)
    if not match:
        raise ValueError(f"cannot parse energy value {text!r}")
    number, unit, _ = match.groups()
    unit = unit.lower() or "j"
    if unit not in UNITS:
        raise ValueError(f"unknown energy unit {unit!r} in {text!r}")
    try:
        # scale in decimal so "0.0013 pJ" is the nearest double to 1.3e-15
        return float(Decimal(number).scaleb(UNITS[unit]))
    except InvalidOperation:
        raise ValueError(f"cannot parse energy value {text!r}") from None


def parse_seeds(text: str) -> tuple[int, ...]:
    seeds: list[int] = []
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            seeds.extend(range(int(lo), int(hi) + 1))
        else:
            seeds.append(int(part))
    if not seeds:
        raise ValueError(f"no seeds in {text!r}")
    return tuple(seeds)


def _pair(text: str) -> Position:
    parts = [p for p in re.split(r"[,\s]+", text.strip().strip("()")) if p]
    if len(parts) != 2:
        raise ValueError(f"expected 'x, y', got {text!r}")
    return Position(float(parts[0]), float(parts[1]))


def apply_preset(rc: RunConfig, name: str) -> RunConfig:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return replace(rc, network=rc.network.with_(**PRESETS[name]))


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """Parse config text on top of ``base`` (defaults when omitted)."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.read_string(text)
    rc = base or RunConfig()
    known = {"network", "layout", "energy", "run"}
    unknown = set(parser.sections()) - known
    if unknown:
        raise ValueError(f"unknown config section(s): {', '.join(sorted(unknown))}")

    net = rc.network
    layout_kw, energy_kw, net_kw = {}, {}, {}
    if parser.has_section("layout"):
        valid = {f.name for f in fields(RegionLayout)}
        for key, value in parser.items("layout"):
            if key not in valid:
                raise ValueError(f"unknown key [layout] {key}")
            layout_kw[key] = _pair(value) if key in ("bs", "relay") else float(value)
    if parser.has_section("energy"):
        valid = {f.name for f in fields(EnergyParams)}
        for key, value in parser.items("energy"):
            if key not in valid:
                raise ValueError(f"unknown key [energy] {key}")
            energy_kw[key] = int(value) if key == "l" else parse_energy(value)
    if parser.has_section("network"):
        for key, value in parser.items("network"):
            if key in ("n", "seed"):
                net_kw[key] = int(value)
            elif key in ("m", "alpha", "p"):
                net_kw[key] = float(value)
            elif key == "e0":
                net_kw[key] = parse_energy(value)
            elif key == "region_allocation":
                v = value.strip()
                net_kw[key] = v if v == "proportional" else tuple(
                    int(c) for c in re.split(r"[,\s]+", v) if c)
            else:
                raise ValueError(f"unknown key [network] {key}")
    if layout_kw:
        net_kw["layout"] = replace(net.layout, **layout_kw)
    if energy_kw:
        net_kw["energy"] = replace(net.energy, **energy_kw)
    net = net.with_(**net_kw)

    run_kw = {}
    if parser.has_section("run"):
        for key, value in parser.items("run"):
            if key == "protocol":
                run_kw[key] = ProtocolKind(value.strip().lower())
            elif key == "max_rounds":
                run_kw[key] = int(value)
            elif key == "seeds":
                run_kw[key] = parse_seeds(value)
            else:
                raise ValueError(f"unknown key [run] {key}")
    return replace(rc, network=net, **run_kw)


def load_config(path, preset: str | None = None) -> RunConfig:
    rc = RunConfig()
    if preset:
        rc = apply_preset(rc, preset)
    if path is None:
        return rc
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text, rc)


def dump_config(rc: RunConfig) -> str:
    """Serialize a fully resolved configuration; parsing it gives ``rc`` back."""
    net, lay, en = rc.network, rc.network.layout, rc.network.energy
    alloc = net.region_allocation
    alloc_text = alloc if isinstance(alloc, str) else ", ".join(map(str, alloc))
    lines = [
        "[network]",
        f"n = {net.n}",
        f"m = {net.m!r}",
        f"alpha = {net.alpha!r}",
        f"e0 = {net.e0!r}",
        f"p = {net.p!r}",
        f"seed = {net.seed}",
        f"region_allocation = {alloc_text}",
        "",
        "[layout]",
        f"field_width = {lay.field_width!r}",
        f"field_height = {lay.field_height!r}",
        f"r1_y_min = {lay.r1_y_min!r}",
        f"r3_x_min = {lay.r3_x_min!r}",
        f"r3_x_max = {lay.r3_x_max!r}",
        f"bs = {lay.bs.x!r}, {lay.bs.y!r}",
        f"relay = {lay.relay.x!r}, {lay.relay.y!r}",
        "",
        "[energy]",
        f"e_elec = {en.e_elec!r}",
        f"e_fs = {en.e_fs!r}",
        f"e_amp = {en.e_amp!r}",
        f"e_da = {en.e_da!r}",
        f"l = {en.l}",
        "",
        "[run]",
        f"protocol = {rc.protocol.value}",
        f"max_rounds = {rc.max_rounds}",
        f"seeds = {', '.join(map(str, rc.seeds))}",
    ]
    return "\n".join(lines) + "\n"
