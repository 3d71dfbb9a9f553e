"""Line-oriented scenario files: `key = value` pairs, `[section]` headers and `#` comments."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Dict, List, Optional

from ..core.config import DEFAULT_OUTPUT_DIR, EXPERIMENT_SCHEMAS, RESERVED_KEYS, ScenarioConfig, sweep_base
from ..core.errors import ConfigError, MissingKey, ParseError, ValidationError


_SECTION_PATTERN = re.compile(r"^\[(?P<name>[A-Za-z0-9_-]+)\]$")
_ENTRY_PATTERN = re.compile(r"^(?P<key>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?P<value>.*)$")
_INLINE_COMMENT = re.compile(r"\s+#.*$")

SCENARIO_SUFFIX = ".cfg"
SCENARIOS_DIR = Path(__file__).resolve().parent.parent / "resources" / "scenarios"


def _strip(line: str) -> str:
    if line.lstrip().startswith("#"):
        return ""
    return _INLINE_COMMENT.sub("", line).strip()


def parse_sections(text: str) -> Dict[Optional[str], Dict[str, str]]:
    """Raw string values keyed by section; the top level uses the key None."""

    sections: Dict[Optional[str], Dict[str, str]] = {None: {}}
    current: Optional[str] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue

        header = _SECTION_PATTERN.match(line)
        if header:
            current = header.group("name")
            if current in sections:
                raise ParseError(number, f"section [{current}] appears twice")
            sections[current] = {}
            continue

        entry = _ENTRY_PATTERN.match(line)
        if not entry:
            raise ParseError(number, f"expected 'key = value' or '[section]', got {raw.strip()!r}")
        key, value = entry.group("key"), entry.group("value").strip()
        if not value:
            raise ParseError(number, f"key '{key}' has no value")
        if key in sections[current]:
            raise ParseError(number, f"key '{key}' is set twice")
        sections[current][key] = value
    return sections


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario; defaults are filled for every omitted parameter."""

    sections = parse_sections(text)
    top = sections.pop(None)
    experiment = top.pop("experiment", None)
    if experiment is None:
        raise MissingKey("experiment")
    if experiment not in EXPERIMENT_SCHEMAS:
        raise ValidationError("experiment", f"unknown experiment '{experiment}'")

    reserved = {key: top.pop(key) for key in RESERVED_KEYS if key in top}
    parameters = dict(top)
    for key, value in sections.pop(experiment, {}).items():
        if key in parameters:
            raise ValidationError(key, f"set both at the top level and in [{experiment}]")
        parameters[key] = value

    base: Optional[ScenarioConfig] = None
    if experiment == "sweep":
        base_tag = parameters.get("base")
        if base_tag is not None and base_tag in sections:
            base = sweep_base(base_tag, sections.pop(base_tag), parameters.get("key"), parameters.get("values"))
    if sections:
        name = next(iter(sections))
        raise ConfigError(f"Unexpected section [{name}] for experiment '{experiment}'", key=name)

    try:
        seed = int(reserved.get("seed", "0"))
    except ValueError as exc:
        raise ValidationError("seed", f"expected an integer, got {reserved['seed']!r}") from exc

    return ScenarioConfig(
        experiment=experiment,
        parameters=parameters,
        output_dir=Path(reserved["output_dir"]) if "output_dir" in reserved else Path(DEFAULT_OUTPUT_DIR) / experiment,
        seed=seed,
        base=base,
    )


def shipped_scenarios() -> List[Path]:
    return sorted(SCENARIOS_DIR.glob(f"*{SCENARIO_SUFFIX}"))


def scenario_path(name: str) -> Path:
    """Path of a shipped scenario by name (with or without the suffix)."""

    stem = name[: -len(SCENARIO_SUFFIX)] if name.endswith(SCENARIO_SUFFIX) else name
    path = SCENARIOS_DIR / f"{stem}{SCENARIO_SUFFIX}"
    if not path.exists():
        available = ", ".join(p.stem for p in shipped_scenarios())
        raise ValidationError("scenario", f"no shipped scenario '{stem}'. Available: {available}")
    return path
