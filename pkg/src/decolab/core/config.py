"""Scenario configuration: per-experiment parameter schemas and the config container."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import yaml

from .errors import ConfigError, MissingKey, StorageError, UnknownKey, ValidationError


RESERVED_KEYS = ("experiment", "output_dir", "seed")
DEFAULT_OUTPUT_DIR = "decolab-output"

_TRUE_WORDS = {"true", "yes", "on", "1"}
_FALSE_WORDS = {"false", "no", "off", "0"}


def _deep_update(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Return a recursively merged dictionary copy."""

    result = dict(base)
    for key, value in overrides.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _deep_update(result[key], value)
        else:
            result[key] = value
    return result


@dataclass(frozen=True, slots=True)
class ParamSpec:
    """Type, default and domain of a single experiment parameter."""

    kind: str
    default: Any = None
    required: bool = False
    minimum: Optional[float] = None
    strict: bool = False
    choices: Sequence[str] = ()
    help: str = ""

    def coerce(self, key: str, raw: Any) -> Any:
        """Convert a raw (usually textual) value and check its domain."""

        try:
            value = self._convert(raw)
        except (TypeError, ValueError) as exc:
            raise ValidationError(key, f"expected {self.kind}, got {raw!r}") from exc

        if self.choices and value not in self.choices:
            raise ValidationError(key, f"'{value}' is not one of: {', '.join(self.choices)}")
        if self.minimum is not None:
            for number in value if isinstance(value, list) else [value]:
                self._check_minimum(key, number)
        return value

    def _convert(self, raw: Any) -> Any:
        if self.kind == "float":
            value = float(raw)
            if not math.isfinite(value):
                raise ValueError("non-finite")
            return value
        if self.kind == "int":
            if isinstance(raw, float) and not raw.is_integer():
                raise ValueError("fractional")
            return int(str(raw).strip()) if isinstance(raw, str) else int(raw)
        if self.kind == "bool":
            if isinstance(raw, bool):
                return raw
            word = str(raw).strip().lower()
            if word in _TRUE_WORDS:
                return True
            if word in _FALSE_WORDS:
                return False
            raise ValueError(word)
        if self.kind == "floats":
            if isinstance(raw, str):
                text = raw.strip().strip("[]")
                items = [chunk.strip() for chunk in text.split(",") if chunk.strip()]
            else:
                items = list(raw)
            return [float(item) for item in items]
        return str(raw).strip()

    def _check_minimum(self, key: str, number: float) -> None:
        if self.strict and not number > self.minimum:
            raise ValidationError(key, f"must be > {self.minimum:g}, got {number:g}")
        if not self.strict and number < self.minimum:
            raise ValidationError(key, f"must be >= {self.minimum:g}, got {number:g}")


def _positive(default: Any, kind: str = "float", help: str = "") -> ParamSpec:
    return ParamSpec(kind=kind, default=default, minimum=0.0, strict=True, help=help)


def _non_negative(default: Any, kind: str = "float", help: str = "") -> ParamSpec:
    return ParamSpec(kind=kind, default=default, minimum=0.0, help=help)


def _grid(n_points: int, x_min: float, x_max: float) -> Dict[str, ParamSpec]:
    return {
        "n_points": ParamSpec("int", n_points, minimum=8, help="grid points (power of two)"),
        "x_min": ParamSpec("float", x_min, help="left grid edge"),
        "x_max": ParamSpec("float", x_max, help="right grid edge"),
    }


def _plan(dt: float, n_steps: int, record_every: int) -> Dict[str, ParamSpec]:
    return {
        "dt": _positive(dt, help="time step"),
        "n_steps": ParamSpec("int", n_steps, minimum=1, help="number of steps"),
        "record_every": ParamSpec("int", record_every, minimum=1, help="steps between records"),
    }


_STATE_SPECS: Dict[str, ParamSpec] = {
    "separation": _positive(8.0, help="distance between the cat-state packets"),
    "width": _positive(1.0, help="packet width"),
    "level": _non_negative(9, kind="int", help="oscillator level"),
    "omega": _positive(1.0, help="oscillator frequency"),
    "lambda_t": _non_negative(0.0625, help="decoherence exponent Lambda*t"),
}

EXPERIMENT_SCHEMAS: Dict[str, Dict[str, ParamSpec]] = {
    "localize": {
        "state": ParamSpec("str", "cat", choices=("cat", "oscillator")),
        **_STATE_SPECS,
        **_grid(256, -16.0, 16.0),
    },
    "wigner": {
        "state": ParamSpec("str", "cat", choices=("gaussian", "cat", "oscillator")),
        **_STATE_SPECS,
        **_grid(256, -16.0, 16.0),
        "binary": ParamSpec("bool", True, help="also write .wig matrix dumps"),
    },
    "evolve-free": {
        "mass": _positive(1.0),
        "lambda": ParamSpec("float", required=True, minimum=0.0, help="localisation rate"),
        "state": ParamSpec("str", "gaussian", choices=("gaussian", "cat")),
        "width": _positive(1.0),
        "center": ParamSpec("float", 0.0),
        "momentum": ParamSpec("float", 0.0),
        "separation": _positive(8.0),
        **_grid(512, -64.0, 64.0),
        **_plan(0.05, 120, 2),
        "scheme": ParamSpec("str", "split-step", choices=("split-step", "rk4")),
    },
    "evolve-cl": {
        "mass": _positive(1.0),
        "gamma": ParamSpec("float", required=True, minimum=0.0, help="damping rate"),
        "temperature": ParamSpec("float", required=True, minimum=0.0),
        "width": _positive(1.0),
        "center": ParamSpec("float", 0.0),
        "momentum": ParamSpec("float", 1.0),
        **_grid(128, -24.0, 24.0),
        **_plan(0.01, 100, 10),
        "ratio_mass": _positive(1.0, help="mass in g for the CGS rate comparison"),
        "ratio_temperature": _positive(300.0, help="temperature in K for the CGS rate comparison"),
        "ratio_dx": _positive(1.0, help="separation in cm for the CGS rate comparison"),
    },
    "zeno-analytic": {
        "coupling": _non_negative(1.0, help="V in H = V sigma_x"),
        "time": _non_negative(1.0),
        "n_max": ParamSpec("int", 64, minimum=1),
        "decay_rate": _non_negative(1.0, help="classical decay rate"),
    },
    "zeno-pointer": {
        "transition": _non_negative(1.0, help="V"),
        "offset": ParamSpec("float", 0.0, help="E"),
        "meter_coupling": _non_negative(10.0, help="gamma"),
        "pointer_width": _positive(1.0),
        **_grid(1024, -32.0, 32.0),
        **_plan(1.0e-3, 1000, 10),
        "scan_gammas": ParamSpec("floats", [], minimum=0.0, help="run a coupling scan instead"),
        "scan_time": _positive(math.pi / 2.0),
        "workers": ParamSpec("int", 4, minimum=1),
    },
    "chiral": {
        "splitting": _positive(1.0, help="tunnelling splitting Delta"),
        "monitoring_rate": _non_negative(0.0, help="dephasing rate in the L/R basis"),
        "periods": _positive(10.0, help="run length in tunnelling periods"),
        "n_samples": ParamSpec("int", 201, minimum=2),
    },
    "qed": {
        "charge": ParamSpec("float", 1.0),
        "mass": _positive(1.0),
        "field": _non_negative(2.0),
        "volume": _positive(1.0),
        "times": ParamSpec("floats", [1.0, 10.0, 100.0, 1000.0], minimum=0.0),
    },
    "gravity": {
        "density": _positive(2.7e19, help="particles per cm^3"),
        "particle_mass": _positive(4.65e-23, help="g"),
        "temperature": _positive(300.0, help="K"),
        "box_size": _positive(1.0, help="cm"),
        "time": _positive(1.0, help="s"),
        "g_ref": _positive(981.0, help="cm/s^2"),
    },
    "table1": {
        "presets": ParamSpec("str", "", help="preset file (defaults to the bundled one)"),
    },
    "sweep": {
        "base": ParamSpec("str", required=True),
        "key": ParamSpec("str", required=True),
        "values": ParamSpec("floats", required=True),
        "workers": ParamSpec("int", 4, minimum=1),
    },
}

EXPERIMENTS = tuple(EXPERIMENT_SCHEMAS)


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ", ".join(_format_value(item) for item in value)
    return repr(value) if isinstance(value, float) else str(value)


@dataclass(slots=True)
class ScenarioConfig:
    """A validated experiment run: tag, typed parameters, output directory and seed."""

    experiment: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    output_dir: Path = field(default_factory=lambda: Path(DEFAULT_OUTPUT_DIR))
    seed: int = 0
    base: Optional["ScenarioConfig"] = None

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENT_SCHEMAS:
            raise ValidationError(
                "experiment",
                f"unknown experiment '{self.experiment}'. Expected one of: {', '.join(EXPERIMENTS)}",
            )
        self.output_dir = Path(self.output_dir)
        self.parameters = self._fill(self.parameters)
        self.validate()

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------
    @classmethod
    def from_file(cls, file_path: str | Path) -> "ScenarioConfig":
        """Load and validate a scenario file."""

        from ..cli.scenario_parser import parse_config

        path = Path(file_path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise StorageError(f"Cannot read scenario file {path}: {exc}") from exc
        return parse_config(text)

    def merge(self, overrides: Dict[str, Any]) -> "ScenarioConfig":
        """Return a new config with parameter overrides applied."""

        return ScenarioConfig(
            experiment=self.experiment,
            parameters=_deep_update(self.parameters, overrides),
            output_dir=self.output_dir,
            seed=self.seed,
            base=self.base,
        )

    def with_output_dir(self, output_dir: str | Path) -> "ScenarioConfig":
        return ScenarioConfig(
            experiment=self.experiment,
            parameters=dict(self.parameters),
            output_dir=Path(output_dir),
            seed=self.seed,
            base=self.base,
        )

    def _fill(self, raw: Dict[str, Any]) -> Dict[str, Any]:
        schema = EXPERIMENT_SCHEMAS[self.experiment]
        for key in raw:
            if key not in schema:
                raise UnknownKey(key, self.experiment)

        filled: Dict[str, Any] = {}
        for key, spec in schema.items():
            if key in raw:
                filled[key] = spec.coerce(key, raw[key])
            elif spec.required:
                raise MissingKey(key, self.experiment)
            else:
                filled[key] = list(spec.default) if isinstance(spec.default, list) else spec.default
        return filled

    # ------------------------------------------------------------------
    # Serialization helpers
    # ------------------------------------------------------------------
    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "experiment": self.experiment,
            "output_dir": str(self.output_dir),
            "seed": self.seed,
            "parameters": dict(self.parameters),
        }
        if self.base is not None:
            data["base"] = {
                "experiment": self.base.experiment,
                "parameters": dict(self.base.parameters),
            }
        return data

    def to_yaml(self, file_path: str | Path) -> None:
        with Path(file_path).open("w", encoding="utf-8") as handle:
            yaml.safe_dump(self.to_dict(), handle, default_flow_style=False, sort_keys=False)

    def to_json(self, file_path: str | Path) -> None:
        with Path(file_path).open("w", encoding="utf-8") as handle:
            json.dump(self.to_dict(), handle, indent=2)

    def metadata_lines(self) -> List[tuple[str, str]]:
        """(key, value) pairs echoed into output headers; the output directory is left out."""

        lines = [("experiment", self.experiment), ("seed", str(self.seed))]
        lines.extend((key, _format_value(value)) for key, value in self.parameters.items())
        if self.base is not None:
            lines.extend(
                (f"{self.base.experiment}.{key}", _format_value(value))
                for key, value in self.base.parameters.items()
            )
        return lines

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------
    def validate(self) -> bool:
        params = self.parameters
        if "x_min" in params and not params["x_max"] > params["x_min"]:
            raise ValidationError("x_max", f"must exceed x_min ({params['x_min']:g})")
        n_points = params.get("n_points")
        if n_points is not None and n_points & (n_points - 1):
            raise ValidationError("n_points", f"must be a power of two, got {n_points}")

        gammas = params.get("scan_gammas") or []
        if any(later < earlier for earlier, later in zip(gammas, gammas[1:])):
            raise ValidationError("scan_gammas", "values must be sorted in increasing order")

        if self.experiment == "sweep":
            self._validate_sweep()
        elif self.base is not None:
            raise ConfigError("Only sweep scenarios may carry a base experiment")
        return True

    def _validate_sweep(self) -> None:
        base_tag = self.parameters["base"]
        if base_tag not in EXPERIMENT_SCHEMAS or base_tag == "sweep":
            raise ValidationError("base", f"'{base_tag}' is not a sweepable experiment")
        if self.base is None:
            self.base = sweep_base(
                base_tag, {}, self.parameters["key"], self.parameters["values"], self.output_dir, self.seed
            )
        elif self.base.experiment != base_tag:
            raise ValidationError("base", f"section [{self.base.experiment}] does not match base '{base_tag}'")

        key = self.parameters["key"]
        spec = EXPERIMENT_SCHEMAS[base_tag].get(key)
        if spec is None:
            raise UnknownKey(key, base_tag)
        if spec.kind not in {"float", "int"}:
            raise ValidationError("key", f"'{key}' is not a numeric parameter of {base_tag}")
        if not self.parameters["values"]:
            raise ValidationError("values", "at least one value is required")
        for value in self.parameters["values"]:
            spec.coerce(key, int(value) if spec.kind == "int" else value)

    def member_configs(self) -> List["ScenarioConfig"]:
        """Expand a sweep into one base-experiment config per value."""

        if self.experiment != "sweep" or self.base is None:
            raise ConfigError("member_configs is only defined for sweep scenarios")
        key = self.parameters["key"]
        kind = EXPERIMENT_SCHEMAS[self.base.experiment][key].kind
        members = []
        for index, value in enumerate(self.parameters["values"]):
            typed = int(value) if kind == "int" else value
            member = self.base.merge({key: typed})
            members.append(member.with_output_dir(self.output_dir / f"{index:02d}_{key}_{_format_value(typed)}"))
        return members


def sweep_base(
    base_tag: str,
    parameters: Dict[str, Any],
    key: Optional[str],
    values: Any,
    output_dir: str | Path = DEFAULT_OUTPUT_DIR,
    seed: int = 0,
) -> ScenarioConfig:
    """Base config of a sweep; a required swept key missing from it is seeded with the first value."""

    seeded = dict(parameters)
    spec = EXPERIMENT_SCHEMAS.get(base_tag, {}).get(key) if key else None
    if spec is not None and spec.required and key not in seeded and values is not None:
        numbers = EXPERIMENT_SCHEMAS["sweep"]["values"].coerce("values", values)
        if numbers:
            seeded[key] = int(numbers[0]) if spec.kind == "int" else numbers[0]
    return ScenarioConfig(experiment=base_tag, parameters=seeded, output_dir=output_dir, seed=seed)
