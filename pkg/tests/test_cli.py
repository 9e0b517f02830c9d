"""Command-line and artifact-contract tests.

A coarse end-to-end run of the ``custom`` scenario checks the CSV
schema: column set, comma delimiter, LF line endings, %.12g number
formatting, row ordering, and internal consistency of the gated figure
columns.  Configuration precedence and failure exit codes are covered at
the parser level.
"""

from __future__ import annotations

import csv
import os
from pathlib import Path

import pytest

from levarray.analysis import SQUEEZING_TOL
from levarray.cli import (
    DEFAULT_OUT,
    OUT_ENV_VAR,
    ROW_COLUMNS,
    SCENARIOS,
    SQUEEZING_COLUMNS,
    SUMMARY_COLUMNS,
    main,
    parse_config,
    resolve_out_dir,
)
from levarray.errors import ConfigError
from levarray.analysis import figures_of_merit


def write_config(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "run.cfg"
    path.write_text(text)
    return path


class TestParseConfig:
    def test_preset_defaults(self):
        config = parse_config(scenario="fig2a")
        assert config.objective == "dyadic-3"
        assert config.symmetric and not config.two_particle
        assert config.params.kappa == 0.4
        assert config.params.gamma == 2e-10
        assert config.params.nbar == 2e7
        assert config.g_max == 0.4
        assert config.grid_lambda1 == (0.0, 1.5, 0.02)
        assert config.cut_lambda2 == (0.8,)
        assert config.cut_step == 0.01
        assert config.workers == 1
        assert config.polish and not config.oracle

    def test_all_presets_resolve(self):
        for name in SCENARIOS:
            parse_config(scenario=name)

    def test_precedence_chain(self, tmp_path):
        path = write_config(
            tmp_path,
            "workers = 2\nparams.nbar = 1e5\noptimizer.g_max = 0.3\n",
        )
        config = parse_config(
            scenario="custom",
            config_path=path,
            overrides=["params.nbar=2e5", "workers=3"],
            workers=4,
        )
        assert config.workers == 4          # dedicated flag beats --set
        assert config.params.nbar == 2e5    # --set beats the file
        assert config.g_max == 0.3          # file beats the preset

    def test_file_comments_and_layout(self, tmp_path):
        path = write_config(
            tmp_path,
            "# leading comment\n\nscenario = fig2c\ncut.lambda2 = 0.01  # trailing\n",
        )
        config = parse_config(config_path=path)
        assert config.scenario == "fig2c"
        assert config.cut_lambda2 == (0.01,)

    def test_unknown_key_reports_line(self, tmp_path):
        path = write_config(tmp_path, "params.nbar = 1e5\nfoo = 1\n")
        with pytest.raises(ConfigError) as err:
            parse_config(scenario="custom", config_path=path)
        assert err.value.key == "foo"
        assert err.value.line == 2
        assert "foo" in str(err.value)

    def test_malformed_line(self, tmp_path):
        path = write_config(tmp_path, "params.nbar\n")
        with pytest.raises(ConfigError) as err:
            parse_config(scenario="custom", config_path=path)
        assert err.value.line == 1

    def test_invalid_value(self, tmp_path):
        path = write_config(tmp_path, "workers = soon\n")
        with pytest.raises(ConfigError) as err:
            parse_config(scenario="custom", config_path=path)
        assert err.value.key == "workers"

    def test_gamma_quality_factor_conflict(self):
        with pytest.raises(ConfigError):
            parse_config(
                scenario="custom",
                overrides=["params.gamma=1e-9", "params.quality_factor=1e9"],
            )

    def test_quality_factor_maps_to_gamma(self):
        config = parse_config(scenario="custom", overrides=["params.quality_factor=1e8"])
        assert config.params.gamma == pytest.approx(1e-8, rel=1e-12)

    def test_unknown_scenario_and_objective(self):
        with pytest.raises(ConfigError):
            parse_config(scenario="fig9z")
        with pytest.raises(ConfigError):
            parse_config(scenario=None)
        with pytest.raises(ConfigError):
            parse_config(scenario="custom", overrides=["objective=dyadic-9"])

    def test_range_validation(self):
        with pytest.raises(ConfigError):
            parse_config(scenario="custom", overrides=["workers=0"])
        with pytest.raises(ConfigError):
            parse_config(scenario="custom", overrides=["cut.step=0"])
        with pytest.raises(ConfigError):
            parse_config(scenario="custom", overrides=["optimizer.g_max=-1"])
        with pytest.raises(ConfigError):
            parse_config(
                scenario="custom",
                overrides=["grid.lambda1.start=1.0", "grid.lambda1.stop=0.5"],
            )

    def test_out_dir_resolution(self, monkeypatch):
        monkeypatch.delenv(OUT_ENV_VAR, raising=False)
        config = parse_config(scenario="custom")
        assert resolve_out_dir(config) == Path(DEFAULT_OUT) / "custom"
        monkeypatch.setenv(OUT_ENV_VAR, "/tmp/elsewhere")
        assert resolve_out_dir(config) == Path("/tmp/elsewhere") / "custom"
        explicit = parse_config(scenario="custom", out_dir="chosen")
        assert resolve_out_dir(explicit) == Path("chosen") / "custom"


@pytest.fixture(scope="module")
def custom_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("artifacts")
    status = main(["run", "custom", "--out", str(out), "--oracle"])
    assert status == 0
    return out / "custom"


def read_rows(path: Path) -> tuple[list[str], list[dict[str, str]]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return list(reader.fieldnames), list(reader)


class TestArtifacts:
    def test_files_exist(self, custom_run):
        for name in ("landscape.csv", "cuts.csv", "summary.csv", "squeezing.csv"):
            assert (custom_run / name).is_file()

    def test_landscape_schema(self, custom_run):
        header, rows = read_rows(custom_run / "landscape.csv")
        assert header == list(ROW_COLUMNS)
        assert len(rows) == 16  # lambda1 from 0 to 1.5 in steps of 0.1
        for row in rows:
            for column in ROW_COLUMNS:
                value = float(row[column])  # every cell is numeric
                assert f"{value:.12g}" == row[column]
            assert row["stable"] in ("0", "1")

    def test_line_endings_and_delimiter(self, custom_run):
        raw = (custom_run / "landscape.csv").read_bytes()
        assert b"\r" not in raw
        first_line = raw.split(b"\n", 1)[0].decode()
        assert first_line == ",".join(ROW_COLUMNS)

    def test_rows_sorted(self, custom_run):
        _, rows = read_rows(custom_run / "landscape.csv")
        coords = [(float(r["lambda1"]), float(r["lambda2"])) for r in rows]
        assert coords == sorted(coords)

    def test_lambda3_consistency(self, custom_run):
        _, rows = read_rows(custom_run / "landscape.csv")
        for row in rows:
            if row["stable"] == "1":
                l1, l2 = float(row["lambda1"]), float(row["lambda2"])
                expected = (1.0 + l1**2 - l2**2) ** 0.5
                assert float(row["lambda3"]) == pytest.approx(expected, abs=1e-9)

    def test_fom_columns_recompute(self, custom_run):
        _, rows = read_rows(custom_run / "landscape.csv")
        for row in rows:
            pairs = sorted(
                (float(row["E_pair_12"]), float(row["E_pair_23"]), float(row["E_pair_31"])),
                reverse=True,
            )
            if row["stable"] == "0":
                continue
            fom = figures_of_merit(pairs, arity=2)
            assert float(row["fom_E1"]) == pytest.approx(fom.e1, abs=1e-9)
            assert float(row["fom_E2"]) == pytest.approx(fom.e2, abs=1e-9)
            assert float(row["fom_E3"]) == pytest.approx(fom.e3, abs=1e-9)

    def test_cut_reuses_grid_line(self, custom_run):
        # The custom preset's landscape degenerates to its own cut line.
        landscape = (custom_run / "landscape.csv").read_bytes()
        cuts = (custom_run / "cuts.csv").read_bytes()
        assert landscape == cuts

    def test_summary_contract(self, custom_run):
        header, rows = read_rows(custom_run / "summary.csv")
        assert header == list(SUMMARY_COLUMNS)
        assert [r["source"] for r in rows] == ["landscape", "cut-0.8"]
        _, landscape_rows = read_rows(custom_run / "landscape.csv")
        best = max(float(r["fom_E3"]) for r in landscape_rows)
        for row in rows:
            assert row["objective"] == "dyadic-3"
            value = float(row["value"])
            assert value >= best - 1e-12
            # The lattice oracle never beats the refined optimizer.
            assert row["oracle_value"] != ""
            assert float(row["oracle_value"]) <= value + 1e-6

    def test_squeezing_contract(self, custom_run):
        header, rows = read_rows(custom_run / "squeezing.csv")
        assert header == list(SQUEEZING_COLUMNS)
        assert len(rows) == 26
        assert {r["case"] for r in rows} == {"custom"}
        for row in rows:
            variance = float(row["variance"])
            assert row["squeezed"] == ("1" if variance < 1.0 - SQUEEZING_TOL else "0")


class TestRunBehavior:
    def test_worker_count_invariance(self, custom_run, tmp_path):
        status = main(["run", "custom", "--out", str(tmp_path), "--workers", "2", "--oracle"])
        assert status == 0
        for name in ("landscape.csv", "summary.csv"):
            assert (tmp_path / "custom" / name).read_bytes() == (
                custom_run / name
            ).read_bytes()

    def test_list_scenarios(self, capsys):
        assert main(["list-scenarios"]) == 0
        out = capsys.readouterr().out
        for name in SCENARIOS:
            assert name in out

    def test_config_error_exit_code(self, capsys):
        assert main(["run", "custom", "--set", "foo=1"]) == 2
        assert "configuration" in capsys.readouterr().err

    def test_io_error_exit_code(self, tmp_path, capsys):
        blocker = tmp_path / "not-a-directory"
        blocker.write_text("")
        assert main(["run", "custom", "--out", str(blocker / "sub")]) == 1
        assert "i/o" in capsys.readouterr().err

    def test_check_command(self, capsys):
        assert main(["check"]) == 0
        out = capsys.readouterr().out
        assert "all 9 checks passed" in out
        assert "FAIL" not in out
