"""Unit tests for scenario configs and the scenario file parser."""

from __future__ import annotations

from pathlib import Path

import pytest

from decolab.cli.scenario_parser import parse_config, scenario_path, shipped_scenarios
from decolab.core.config import EXPERIMENTS, ParamSpec, ScenarioConfig
from decolab.core.errors import ConfigError, MissingKey, ParseError, StorageError, UnknownKey, ValidationError


SHIPPED = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig8", "fig9", "table1", "eq20", "qed", "gravity")


@pytest.mark.unit
class TestParamSpec:
    def test_coerces_text(self) -> None:
        assert ParamSpec("float").coerce("x", " 2.5 ") == 2.5
        assert ParamSpec("int").coerce("n", "12") == 12
        assert ParamSpec("bool").coerce("flag", "yes") is True
        assert ParamSpec("floats").coerce("values", "[0, 0.5, 2]") == [0.0, 0.5, 2.0]

    def test_rejects_bad_values(self) -> None:
        with pytest.raises(ValidationError, match="expected float"):
            ParamSpec("float").coerce("x", "abc")
        with pytest.raises(ValidationError, match=">= 0"):
            ParamSpec("float", minimum=0.0).coerce("lambda", "-1")
        with pytest.raises(ValidationError):
            ParamSpec("str", choices=("a", "b")).coerce("state", "c")


@pytest.mark.unit
class TestScenarioConfig:
    def test_defaults_are_filled(self) -> None:
        cfg = ScenarioConfig(experiment="gravity")

        assert cfg.parameters["density"] == pytest.approx(2.7e19)
        assert cfg.parameters["g_ref"] == pytest.approx(981.0)

    def test_unknown_experiment(self) -> None:
        with pytest.raises(ValidationError):
            ScenarioConfig(experiment="teleport")

    def test_unknown_key(self) -> None:
        with pytest.raises(UnknownKey) as info:
            ScenarioConfig(experiment="qed", parameters={"colour": "red"})
        assert info.value.key == "colour"

    def test_missing_required_key(self) -> None:
        with pytest.raises(MissingKey) as info:
            ScenarioConfig(experiment="evolve-free")
        assert info.value.key == "lambda"

    def test_grid_must_be_power_of_two(self) -> None:
        with pytest.raises(ValidationError, match="power of two"):
            ScenarioConfig(experiment="localize", parameters={"n_points": 100})

    def test_scan_gammas_must_be_sorted(self) -> None:
        with pytest.raises(ValidationError, match="sorted"):
            ScenarioConfig(experiment="zeno-pointer", parameters={"scan_gammas": "4, 1"})

    def test_merge_revalidates(self) -> None:
        cfg = ScenarioConfig(experiment="chiral")

        merged = cfg.merge({"monitoring_rate": 5.0})

        assert merged.parameters["monitoring_rate"] == 5.0
        with pytest.raises(ValidationError):
            cfg.merge({"splitting": 0.0})

    def test_metadata_lines_exclude_output_dir(self, tmp_path: Path) -> None:
        cfg = ScenarioConfig(experiment="qed", output_dir=tmp_path / "somewhere")

        keys = [key for key, _ in cfg.metadata_lines()]

        assert keys[:2] == ["experiment", "seed"]
        assert "times" in keys
        assert "output_dir" not in keys

    def test_to_yaml_and_json(self, tmp_path: Path) -> None:
        cfg = ScenarioConfig(experiment="zeno-analytic")

        cfg.to_yaml(tmp_path / "cfg.yaml")
        cfg.to_json(tmp_path / "cfg.json")

        assert "zeno-analytic" in (tmp_path / "cfg.yaml").read_text()
        assert '"n_max": 64' in (tmp_path / "cfg.json").read_text()


@pytest.mark.unit
class TestSweepConfig:
    def test_member_configs_override_key(self, tmp_path: Path) -> None:
        cfg = ScenarioConfig(
            experiment="sweep",
            parameters={"base": "chiral", "key": "monitoring_rate", "values": "0, 10"},
            output_dir=tmp_path,
        )

        members = cfg.member_configs()

        assert [m.parameters["monitoring_rate"] for m in members] == [0.0, 10.0]
        assert members[0].output_dir == tmp_path / "00_monitoring_rate_0.0"
        assert all(m.experiment == "chiral" for m in members)

    def test_integer_keys_are_cast(self, tmp_path: Path) -> None:
        cfg = ScenarioConfig(
            experiment="sweep",
            parameters={"base": "zeno-analytic", "key": "n_max", "values": "4, 8"},
            output_dir=tmp_path,
        )

        assert [m.parameters["n_max"] for m in cfg.member_configs()] == [4, 8]

    def test_required_swept_key_is_seeded_without_base_section(self, tmp_path: Path) -> None:
        cfg = ScenarioConfig(
            experiment="sweep",
            parameters={"base": "evolve-free", "key": "lambda", "values": "0, 0.1"},
            output_dir=tmp_path,
        )

        assert cfg.base.parameters["lambda"] == 0.0
        assert [m.parameters["lambda"] for m in cfg.member_configs()] == [0.0, 0.1]

    def test_non_numeric_key_rejected(self) -> None:
        with pytest.raises(ValidationError):
            ScenarioConfig(experiment="sweep", parameters={"base": "localize", "key": "state", "values": "1"})

    def test_base_cannot_be_sweep(self) -> None:
        with pytest.raises(ValidationError):
            ScenarioConfig(experiment="sweep", parameters={"base": "sweep", "key": "workers", "values": "1"})


@pytest.mark.unit
class TestParseConfig:
    def test_minimal_table1(self) -> None:
        cfg = parse_config("experiment = table1\n")

        assert cfg.experiment == "table1"
        assert cfg.parameters == {"presets": ""}
        assert cfg.seed == 0

    def test_sections_comments_and_reserved_keys(self) -> None:
        text = "\n".join(
            [
                "# a comment",
                "experiment = evolve-free",
                "output_dir = out/free",
                "seed = 3",
                "",
                "[evolve-free]",
                "lambda = 0.1   # inline comment",
                "scheme = rk4",
            ]
        )

        cfg = parse_config(text)

        assert cfg.output_dir == Path("out/free")
        assert cfg.seed == 3
        assert cfg.parameters["lambda"] == 0.1
        assert cfg.parameters["scheme"] == "rk4"

    def test_missing_lambda(self) -> None:
        with pytest.raises(MissingKey, match="lambda"):
            parse_config("experiment = evolve-free\n")

    def test_negative_lambda(self) -> None:
        with pytest.raises(ValidationError, match="lambda"):
            parse_config("experiment = evolve-free\nlambda = -1\n")

    def test_malformed_line_reports_number(self) -> None:
        with pytest.raises(ParseError) as info:
            parse_config("experiment = qed\n\nthis is not valid\n")
        assert info.value.line == 3

    def test_duplicate_key(self) -> None:
        with pytest.raises(ParseError, match="twice"):
            parse_config("experiment = qed\nfield = 1\nfield = 2\n")

    def test_missing_experiment(self) -> None:
        with pytest.raises(MissingKey, match="experiment"):
            parse_config("field = 1\n")

    def test_foreign_section(self) -> None:
        with pytest.raises(ConfigError, match="Unexpected section"):
            parse_config("experiment = qed\n[gravity]\ndensity = 1\n")

    def test_sweep_base_section(self) -> None:
        text = "experiment = sweep\nbase = qed\nkey = field\nvalues = 1, 3\n[qed]\nmass = 2\n"

        cfg = parse_config(text)

        assert cfg.base.experiment == "qed"
        assert cfg.base.parameters["mass"] == 2.0
        assert [m.parameters["field"] for m in cfg.member_configs()] == [1.0, 3.0]

    def test_sweep_section_may_omit_the_swept_key(self) -> None:
        text = "experiment = sweep\nbase = evolve-free\nkey = lambda\nvalues = 0.05, 0.2\n[evolve-free]\nmass = 2\n"

        cfg = parse_config(text)

        assert cfg.base.parameters["mass"] == 2.0
        assert cfg.base.parameters["lambda"] == 0.05
        assert [m.parameters["lambda"] for m in cfg.member_configs()] == [0.05, 0.2]

    def test_from_file_missing(self, tmp_path: Path) -> None:
        with pytest.raises(StorageError):
            ScenarioConfig.from_file(tmp_path / "absent.cfg")


@pytest.mark.unit
class TestShippedScenarios:
    def test_every_figure_has_a_scenario(self) -> None:
        names = {path.stem for path in shipped_scenarios()}

        assert set(SHIPPED) <= names

    @pytest.mark.parametrize("name", SHIPPED + ("zeno", "chiral"))
    def test_shipped_scenarios_parse(self, name: str) -> None:
        cfg = ScenarioConfig.from_file(scenario_path(name))

        assert cfg.experiment in EXPERIMENTS

    def test_unknown_scenario_name(self) -> None:
        with pytest.raises(ValidationError, match="Available"):
            scenario_path("fig99")
