# tests/test_sweeps.py
"""Sweep runner, CSV output, presets, charts and snapshots."""

import csv
import io
import math

import numpy as np
import pytest
from pydantic import ValidationError

from spinparity.exceptions import ConfigError, DegenerateSpectrum, EmptyTable, SnapshotMismatch, SnapshotMissing
from spinparity.schemas import (
    CpRule,
    FieldKind,
    FreeParams,
    MixtureFamily,
    MixtureWeights,
    Scenario,
    SweepConfig,
    SweepTable,
    SweepVariable,
)
from spinparity.services.dirac import bell_free_closed_form, discord_free_closed_form
from spinparity.sweeps import runner
from spinparity.sweeps.charts import emit_svg, write_svg
from spinparity.sweeps.presets import DEFAULT_POINTS, PRESETS, build_presets, get_preset
from spinparity.sweeps.runner import (
    csv_header,
    evaluate_point,
    run_configs,
    run_sweep,
    summarize_table,
    table_to_csv,
    write_csv,
)
from spinparity.sweeps.snapshots import compare_csv, regression_snapshot, snapshot_path


def _free_config(points=11):
    return SweepConfig(
        scenario=Scenario.FREE,
        sweep_variable=SweepVariable.M_OVER_E,
        start=0.0,
        stop=1.0,
        points=points,
        fixed={"A": 0.5},
        label="A=0.5"
    )


def _mixture_config(points=6, **overrides):
    values = dict(
        scenario=Scenario.MIXTURE,
        sweep_variable=SweepVariable.M_OVER_P,
        start=0.0,
        stop=5.0,
        points=points,
        family=MixtureFamily.POSITIVE,
        fixed={"A": 0.3},
    )
    values.update(overrides)
    return SweepConfig(**values)


def _read(text):
    return list(csv.reader(io.StringIO(text)))


# ============ CONFIG ============

class TestSweepConfig:

    def test_reversed_range(self):
        with pytest.raises(ValidationError):
            SweepConfig(scenario=Scenario.FREE, sweep_variable=SweepVariable.A, start=1.0, stop=0.0, points=5)

    def test_single_point(self):
        with pytest.raises(ValidationError):
            SweepConfig(scenario=Scenario.FREE, sweep_variable=SweepVariable.A, start=0.0, stop=1.0, points=1)

    def test_variable_must_fit_scenario(self):
        with pytest.raises(ValidationError):
            SweepConfig(scenario=Scenario.FREE, sweep_variable=SweepVariable.BETA_P, start=0.0, stop=1.0, points=5)

    def test_mixture_needs_weights(self):
        with pytest.raises(ValidationError):
            SweepConfig(scenario=Scenario.MIXTURE, sweep_variable=SweepVariable.M_OVER_P,
                        start=0.0, stop=1.0, points=5)

    def test_unknown_fixed_parameter(self):
        with pytest.raises(ValidationError):
            _mixture_config(fixed={"gamma": 1.0})

    def test_out_of_range_parameter(self):
        with pytest.raises(ValidationError):
            SweepConfig(scenario=Scenario.FREE, sweep_variable=SweepVariable.M_OVER_E,
                        start=0.0, stop=2.0, points=5)

    def test_parameters(self):
        values = _mixture_config().parameters(2.5)
        assert values["m_over_p"] == 2.5
        assert values["A"] == 0.3
        assert values["kappa"] == 1.0
        assert values["theta"] == pytest.approx(math.pi / 4)

    def test_series_name_defaults_to_scenario(self):
        assert _mixture_config().series_name == "mixture"


# ============ RUNNER ============

class TestRunner:

    def test_free_sweep_matches_closed_forms(self):
        table = run_sweep(_free_config(points=101), threads=2)
        assert len(table.rows) == 101
        for row in table.rows:
            fp = FreeParams.from_ratio(row.var, 0.5)
            assert row.discord1 == pytest.approx(discord_free_closed_form(fp), abs=1e-10)
            assert row.bell_B == pytest.approx(bell_free_closed_form(fp), abs=1e-10)
            assert row.negativity == pytest.approx(0.0, abs=1e-12)
            assert row.error is None

    def test_free_sweep_peak(self):
        summary = summarize_table(run_sweep(_free_config(points=101), threads=1))
        peak = summary["A=0.5"]["discord1"]
        assert 0.12 < peak <= 0.125 + 1e-12

    def test_rows_in_grid_order(self):
        table = run_sweep(_mixture_config(), threads=3)
        assert [row.var for row in table.rows] == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]

    def test_thread_count_does_not_change_output(self):
        config = _mixture_config(points=9)
        assert table_to_csv(run_sweep(config, threads=1)) == table_to_csv(run_sweep(config, threads=4))

    def test_maximal_mixture_is_local(self):
        config = _mixture_config(points=11, fixed={"A": 0.5}, stop=10.0)
        for row in run_sweep(config, threads=1).rows:
            assert row.bell_B <= 1e-9

    def test_explicit_weights(self):
        config = _mixture_config(family=None, weights=MixtureWeights(A_ns=(0.25, 0.25, 0.25, 0.25)))
        for row in run_sweep(config, threads=1).rows:
            assert row.discord1 == pytest.approx(0.0, abs=1e-12)
            assert row.bell_B == pytest.approx(-1.0, abs=1e-12)

    def test_thermal_sweep(self):
        config = SweepConfig(
            scenario=Scenario.THERMAL,
            sweep_variable=SweepVariable.BETA_P,
            start=0.0,
            stop=10.0,
            points=5,
            fixed={"m_over_p": 1.0}
        )
        rows = run_sweep(config, threads=1).rows
        assert rows[0].negativity == pytest.approx(0.0, abs=1e-12)
        assert rows[0].discord1 == pytest.approx(0.0, abs=1e-12)
        assert rows[-1].negativity > 0

    def test_cp_column(self):
        config = _mixture_config(scenario=Scenario.CP_DIFF, points=4)
        table = run_sweep(config, threads=1)
        assert table.include_cp_diff
        assert all(row.cp_discord_diff is not None and row.cp_discord_diff >= 0 for row in table.rows)

    def test_electric_conjugation_rule(self):
        config = _mixture_config(
            scenario=Scenario.CP_DIFF, field_kind=FieldKind.ELECTRIC, cp_rule=CpRule.CONJUGATION
        )
        for row in run_sweep(config, threads=1).rows:
            assert row.cp_discord_diff < 1e-10

    def test_failing_point_becomes_error_row(self, monkeypatch):
        original = runner._point_state

        def flaky(config, values):
            if values["m_over_p"] == 2.0:
                raise DegenerateSpectrum("zero eigenvalue is doubly degenerate", n=1, s=1)
            return original(config, values)

        monkeypatch.setattr(runner, "_point_state", flaky)
        table = run_sweep(_mixture_config(), threads=2)
        assert len(table.rows) == 6
        assert len(table.failed_rows) == 1
        failed = table.failed_rows[0]
        assert failed.var == 2.0
        assert failed.error == "DegenerateSpectrum: zero eigenvalue is doubly degenerate"
        assert math.isnan(failed.negativity)

    def test_evaluate_point(self):
        row = evaluate_point(_free_config(), 1 / math.sqrt(2))
        assert row.discord1 == pytest.approx(0.125, abs=1e-10)
        assert row.series == "A=0.5"

    def test_run_configs_merges_series(self):
        configs = [_mixture_config(label="a"), _mixture_config(label="b", fixed={"A": 0.1})]
        table = run_configs(configs, threads=1)
        assert table.series == ["a", "b"]
        assert len(table.rows) == 12

    def test_run_configs_rejects_mixed_axes(self):
        with pytest.raises(ConfigError):
            run_configs([_free_config(), _mixture_config()])

    def test_run_configs_rejects_empty(self):
        with pytest.raises(ConfigError):
            run_configs([])


# ============ CSV ============

class TestCsv:

    def test_header(self):
        table = run_sweep(_free_config(points=3), threads=1)
        assert csv_header(table) == [
            "series", "m_over_E", "negativity", "discord1", "discord2",
            "locality_M", "bell_B", "chsh", "error"
        ]

    def test_header_with_cp_column(self):
        table = run_sweep(_mixture_config(scenario=Scenario.CP_DIFF, points=2), threads=1)
        assert csv_header(table)[-2:] == ["cp_discord_diff", "error"]

    def test_body(self):
        text = table_to_csv(run_sweep(_free_config(points=3), threads=1))
        rows = _read(text)
        assert len(rows) == 4
        assert rows[1][:2] == ["A=0.5", "0"]
        assert rows[2][1] == "0.5"
        assert rows[1][-1] == ""
        assert text.endswith("\n") and "\r" not in text

    def test_full_precision(self):
        table = run_sweep(_free_config(points=3), threads=1)
        assert float(_read(table_to_csv(table))[2][3]) == table.rows[1].discord1

    def test_error_row_cells(self, monkeypatch):
        def broken(config, values):
            raise DegenerateSpectrum("degenerate")

        monkeypatch.setattr(runner, "_point_state", broken)
        rows = _read(table_to_csv(run_sweep(_mixture_config(points=2), threads=1)))
        assert rows[1][2] == "nan"
        assert rows[1][-1] == "DegenerateSpectrum: degenerate"

    def test_write_csv(self, tmp_path):
        table = run_sweep(_free_config(points=3), threads=1)
        path = write_csv(table, str(tmp_path / "out" / "fig1.csv"))
        assert path.read_text(encoding="utf-8") == table_to_csv(table)


# ============ PRESETS ============

class TestPresets:

    def test_names(self):
        expected = ["fig1"] + [f"fig2{p}" for p in "abcdef"] + [f"fig3{p}" for p in "abc"] + ["fig4", "fig5"]
        assert list(PRESETS) == expected

    def test_default_points(self):
        assert all(c.points == DEFAULT_POINTS for preset in PRESETS.values() for c in preset.configs)

    def test_fig2_families(self):
        assert get_preset("fig2a").configs[0].family == MixtureFamily.POSITIVE
        assert get_preset("fig2f").configs[0].family == MixtureFamily.POSITIVE_NEGATIVE
        assert get_preset("fig2f").configs[0].fixed["A"] == 0.5

    def test_fig4_has_six_series(self):
        assert len(get_preset("fig4").configs) == 6

    def test_fig5_masses(self):
        assert [c.fixed["m_over_p"] for c in get_preset("fig5").configs] == [1.0, 5.0, 10.0]

    def test_points_override(self):
        assert get_preset("fig3b", points=7).configs[0].points == 7
        assert build_presets(5)["fig1"].configs[0].points == 5

    def test_unknown(self):
        with pytest.raises(ConfigError) as info:
            get_preset("fig9")
        assert info.value.field == "preset"

    def test_fig2c_is_local(self):
        table = run_configs(get_preset("fig2c", points=11).configs, threads=1)
        assert all(row.bell_B <= 1e-9 for row in table.rows)

    def test_fig2a_entangled_local_and_nonlocal(self):
        rows = run_configs(get_preset("fig2a", points=11).configs, threads=1).rows
        assert all(row.negativity > 1e-3 for row in rows)
        assert rows[0].bell_B > 0.5
        assert all(row.bell_B < 0 for row in rows if row.var >= 2)

    def test_fig4_shapes(self):
        table = run_configs(get_preset("fig4").configs, threads=2)
        positive = np.array([row.cp_discord_diff for row in table.rows if row.series == "positive A=0.1"])
        mixed = np.array([row.cp_discord_diff for row in table.rows if row.series == "positive_negative A=0.1"])
        peak = int(np.argmax(positive))
        assert np.all(positive > 0)
        assert np.all(np.diff(positive[:peak + 1]) > 0)
        assert np.all(np.diff(positive[peak:]) < 0)
        assert mixed.max() < positive.max()

    def test_fig5_damping(self):
        maxima = summarize_table(run_configs(get_preset("fig5").configs, threads=2))
        light = maxima["m/p=1"]["cp_discord_diff"]
        assert maxima["m/p=5"]["cp_discord_diff"] < light
        assert maxima["m/p=10"]["cp_discord_diff"] < maxima["m/p=5"]["cp_discord_diff"]


# ============ CHARTS ============

class TestCharts:

    def test_svg_document(self):
        svg = emit_svg(run_sweep(_free_config(points=5), threads=1), title="fig1")
        assert svg.startswith("<?xml")
        assert "</svg>" in svg

    def test_reproducible(self):
        table = run_sweep(_free_config(points=5), threads=1)
        assert emit_svg(table, "fig1") == emit_svg(table, "fig1")

    def test_cp_table(self):
        table = run_configs(get_preset("fig4", points=3).configs, threads=1)
        assert emit_svg(table).startswith("<?xml")

    def test_too_few_rows(self):
        with pytest.raises(EmptyTable):
            emit_svg(SweepTable(sweep_variable=SweepVariable.A))

    def test_write_svg(self, tmp_path):
        path = tmp_path / "fig1.svg"
        write_svg(run_sweep(_free_config(points=3), threads=1), str(path))
        assert path.read_text(encoding="utf-8").startswith("<?xml")


# ============ SNAPSHOTS ============

class TestSnapshots:

    def test_bless_then_check(self, tmp_path):
        blessed = regression_snapshot(["fig1"], str(tmp_path), bless=True, threads=1)
        assert blessed[0].status == "blessed"
        assert snapshot_path("fig1", str(tmp_path)).exists()

        checked = regression_snapshot(["fig1"], str(tmp_path), threads=2)
        assert checked[0].status == "passed"
        assert checked[0].byte_identical

    def test_missing(self, tmp_path):
        with pytest.raises(SnapshotMissing):
            regression_snapshot(["fig1"], str(tmp_path / "empty"), threads=1)

    def test_perturbed_cell(self, tmp_path):
        regression_snapshot(["fig1"], str(tmp_path), bless=True, threads=1)
        path = snapshot_path("fig1", str(tmp_path))
        rows = _read(path.read_text(encoding="utf-8"))
        column = rows[0].index("discord1")
        rows[4][column] = repr(float(rows[4][column]) + 1e-3)
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(rows)
        path.write_text(buffer.getvalue(), encoding="utf-8")

        with pytest.raises(SnapshotMismatch) as info:
            regression_snapshot(["fig1"], str(tmp_path), threads=1)
        assert info.value.row == 3
        assert info.value.column == "discord1"

    def test_within_tolerance(self):
        stored = "series,x\na,0.5\n"
        compare_csv(stored, "series,x\na,0.5000000000001\n")

    def test_nan_cells_match(self):
        compare_csv("series,x\na,nan\n", "series,x\na,nan\n")

    def test_header_change(self):
        with pytest.raises(SnapshotMismatch) as info:
            compare_csv("series,x\n", "series,y\n")
        assert info.value.row is None

    def test_row_count_change(self):
        with pytest.raises(SnapshotMismatch):
            compare_csv("series,x\na,1\n", "series,x\na,1\na,2\n")

    @pytest.mark.skipif(not snapshot_path("fig1").exists(), reason="no blessed snapshots in this checkout")
    def test_committed_snapshots(self):
        results = regression_snapshot(threads=2)
        assert [result.preset for result in results] == list(PRESETS)
        assert all(result.status == "passed" for result in results)
