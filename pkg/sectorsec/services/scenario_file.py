"""
Scenario File Service
Parses the flat key-value (TOML) experiment files into a validated SweepSpec.
"""
import logging
import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, List, Optional

import pydantic

from sectorsec.core.exceptions import ConfigParseError, ValidationError
from sectorsec.models.schemas import SweepSpec

logger = logging.getLogger(__name__)

CHANNEL_KEYS = ("mu_s", "sigma_s", "mu_k", "sigma_k")
SCENARIO_KEYS = ("adversary", "capacity_mode", "n_sectors", "m_right", "u1_colluding", "rate_threshold")
GRID_KEYS = ("snr_grid", "snr_start", "snr_stop", "snr_step")
SWEEP_KEYS = ("name", "vary", "vary_values", "mc_trials", "seed", "weights", "correlation")
KNOWN_KEYS = set(CHANNEL_KEYS + SCENARIO_KEYS + GRID_KEYS + SWEEP_KEYS)

_TOML_LOCATION = re.compile(r"line (\d+), column (\d+)")


def snr_range(start: float, stop: float, step: float) -> List[float]:
    """Inclusive grid start, start + step, ..., stop"""
    if not step > 0:
        raise ValidationError("snr_step must be positive", fields=["snr_step"])
    if stop < start:
        return []
    count = int(round((stop - start) / step)) + 1
    grid = [round(start + i * step, 10) for i in range(count)]
    return [x for x in grid if x <= stop + 1e-9]


def fields_from_pydantic(exc: pydantic.ValidationError) -> List[str]:
    """Flatten pydantic error locations to the config key names users write"""
    fields: List[str] = []
    for error in exc.errors():
        loc = [part for part in error.get("loc", ()) if isinstance(part, str)]
        name = loc[-1] if loc else "scenario"
        if name not in fields:
            fields.append(name)
    return fields


def validation_error_from_pydantic(exc: pydantic.ValidationError, context: str) -> ValidationError:
    messages = "; ".join(
        f"{'.'.join(str(p) for p in e.get('loc', ())) or 'scenario'}: {e.get('msg')}" for e in exc.errors()
    )
    return ValidationError(f"{context}: {messages}", fields=fields_from_pydantic(exc))


def build_sweep_spec(raw: Dict[str, Any], name: str = "scenario", overrides: Optional[Dict[str, Any]] = None) -> SweepSpec:
    """Map flat keys onto the SweepSpec model; CLI overrides win over file values"""
    unknown = sorted(set(raw) - KNOWN_KEYS)
    if unknown:
        raise ValidationError(f"unknown config keys: {', '.join(unknown)}", fields=unknown)

    data = dict(raw)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value

    if "snr_grid" in data:
        snr_grid = data["snr_grid"]
        if not isinstance(snr_grid, list):
            raise ValidationError("snr_grid must be a list of dB values", fields=["snr_grid"])
    elif all(k in data for k in ("snr_start", "snr_stop", "snr_step")):
        snr_grid = snr_range(float(data["snr_start"]), float(data["snr_stop"]), float(data["snr_step"]))
    else:
        missing = [k for k in ("snr_start", "snr_stop", "snr_step") if k not in data]
        raise ValidationError("snr grid missing: give snr_grid or snr_start/snr_stop/snr_step", fields=missing)

    vary = data.get("vary")
    vary_values = data.get("vary_values", [])
    scenario = {k: data[k] for k in SCENARIO_KEYS if k in data}
    # The varied field may be left out of the base scenario
    if vary == "N" and vary_values and "n_sectors" not in scenario:
        scenario["n_sectors"] = vary_values[0]
    if vary == "U1" and vary_values and "u1_colluding" not in scenario:
        scenario["u1_colluding"] = vary_values[0]
    scenario["channel"] = {k: data[k] for k in CHANNEL_KEYS if k in data}

    spec_data: Dict[str, Any] = {
        "name": data.get("name", name),
        "base": scenario,
        "snr_grid": snr_grid,
        "vary": vary,
        "vary_values": vary_values,
    }
    for key, target in (("mc_trials", "mc_trials"), ("seed", "seed"), ("weights", "weights_choice"), ("correlation", "correlation")):
        if key in data:
            spec_data[target] = data[key]

    try:
        return SweepSpec.model_validate(spec_data)
    except pydantic.ValidationError as e:
        raise validation_error_from_pydantic(e, f"invalid scenario '{spec_data['name']}'") from e


def load_sweep_spec(path: Path, overrides: Optional[Dict[str, Any]] = None) -> SweepSpec:
    """Read and validate a scenario file"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigParseError(str(path), f"cannot read config: {e.strerror or e}") from e

    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        match = _TOML_LOCATION.search(str(e))
        line, column = (int(match.group(1)), int(match.group(2))) if match else (None, None)
        raise ConfigParseError(str(path), str(e), line=line, column=column) from e

    nested = sorted(k for k, v in raw.items() if isinstance(v, dict))
    if nested:
        raise ValidationError(f"config must be flat key = value pairs, found tables: {', '.join(nested)}", fields=nested)

    logger.info(f"Loaded scenario file {path}", extra={"scenario": path.stem})
    return build_sweep_spec(raw, name=path.stem, overrides=overrides)
