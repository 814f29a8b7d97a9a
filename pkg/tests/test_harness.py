import math
import os

import pytest

from wsn_multipath import (
    Scheme,
    emit_outputs,
    parse_scenario,
    run_comparison,
)


@pytest.fixture
def bench_report(bench_scenario_text):
    return run_comparison(parse_scenario(bench_scenario_text))


class TestRunComparison:
    def test_distributions(self, bench_report):
        assert bench_report.run_for(Scheme.SINGLE_PATH).distribution.as_list() == \
            [0, 0, 100, 0, 0]
        assert bench_report.run_for(Scheme.EQUAL_SPLIT).distribution.as_list() == \
            [20, 20, 20, 20, 20]
        assert bench_report.run_for(Scheme.ADAPTIVE).distribution.as_list() == \
            [20, 8, 37, 9, 26]

    def test_overall_delays(self, bench_report):
        assert bench_report.run_for(Scheme.SINGLE_PATH).overall_delay == \
            pytest.approx(10.0, rel=1e-9)
        assert bench_report.run_for(Scheme.EQUAL_SPLIT).overall_delay == \
            pytest.approx(8.8, rel=1e-9)
        assert bench_report.run_for(Scheme.ADAPTIVE).overall_delay == \
            pytest.approx(3.7, rel=1e-9)
        assert bench_report.observation_window == pytest.approx(10.0, rel=1e-9)

    def test_energy_totals(self, bench_report):
        assert bench_report.run_for(Scheme.SINGLE_PATH).total_energy == \
            pytest.approx(17.402368, rel=1e-6)
        assert bench_report.run_for(Scheme.EQUAL_SPLIT).total_energy == \
            pytest.approx(20.86250496, rel=1e-6)
        assert bench_report.run_for(Scheme.ADAPTIVE).total_energy == \
            pytest.approx(19.09796045, rel=1e-6)

    def test_verdicts(self, bench_report):
        assert bench_report.delay_ordering_ok is True
        assert bench_report.energy_ordering_ok is True
        assert bench_report.closeness_ok is True
        assert bench_report.all_ok

    def test_sensing_uses_common_window(self, bench_report):
        # every scheme's sensing is priced over the slowest round
        for r in bench_report.runs:
            assert r.sensing_energy == pytest.approx(
                0.024 * bench_report.observation_window * 60, rel=1e-9)

    def test_single_scheme_skips_verdicts(self, bench_scenario_text):
        cfg = parse_scenario(bench_scenario_text)
        cfg.schemes = [2]
        rep = run_comparison(cfg)
        assert [r.scheme for r in rep.runs] == [Scheme.EQUAL_SPLIT]
        assert rep.delay_ordering_ok is None
        assert rep.energy_ordering_ok is None
        assert rep.closeness_ok is None
        assert rep.all_ok  # nothing checked, nothing failed

    def test_doubling_demand_doubles_deterministic_schemes(self, bench_scenario_text):
        cfg1 = parse_scenario(bench_scenario_text)
        cfg2 = parse_scenario(bench_scenario_text)
        cfg2.packets = 200
        r1, r2 = run_comparison(cfg1), run_comparison(cfg2)
        for scheme in (Scheme.SINGLE_PATH, Scheme.EQUAL_SPLIT):
            a = r1.run_for(scheme).overall_delay
            b = r2.run_for(scheme).overall_delay
            assert b / a == pytest.approx(2.0, rel=0.005)


class TestEmitOutputs:
    def test_files_written(self, bench_report, tmp_path):
        files = emit_outputs(bench_report, str(tmp_path))
        names = {os.path.basename(f) for f in files}
        assert names == {"distribution.csv", "delays.csv", "energy.csv", "report.txt"}

    def test_trace_files_when_enabled(self, bench_scenario_text, tmp_path):
        cfg = parse_scenario(bench_scenario_text)
        cfg.trace = True
        files = emit_outputs(run_comparison(cfg), str(tmp_path))
        names = {os.path.basename(f) for f in files}
        assert {"trace_single_path.txt", "trace_equal_split.txt",
                "trace_adaptive.txt"} <= names
        first = (tmp_path / "trace_single_path.txt").read_text().splitlines()[0]
        assert first.split()[1:] == ["PacketSend", "0", "31", "0", "3"]

    def test_distribution_csv(self, bench_report, tmp_path):
        emit_outputs(bench_report, str(tmp_path))
        lines = (tmp_path / "distribution.csv").read_text().splitlines()
        assert lines[0] == "path_id,hops,single_path,equal_split,adaptive"
        assert lines[1] == "1,9,0,20,20"
        assert lines[3] == "3,5,100,20,37"

    def test_delays_csv_overall_row(self, bench_report, tmp_path):
        emit_outputs(bench_report, str(tmp_path))
        lines = (tmp_path / "delays.csv").read_text().splitlines()
        assert lines[0] == "path_id,single_path,equal_split,adaptive"
        assert lines[-1].startswith("overall,")
        overall = lines[-1].split(",")
        assert float(overall[1]) == pytest.approx(10.0, rel=1e-9)
        assert float(overall[3]) == pytest.approx(3.7, rel=1e-9)

    def test_energy_csv_columns(self, bench_report, tmp_path):
        emit_outputs(bench_report, str(tmp_path))
        lines = (tmp_path / "energy.csv").read_text().splitlines()
        assert lines[0] == "scheme,communication,idle,sensing,total"
        row = dict(zip(lines[0].split(","), lines[1].split(",")))
        assert row["scheme"] == "single_path"
        assert float(row["communication"]) == pytest.approx(2.7648, rel=1e-9)

    def test_report_verdict_lines(self, bench_report, tmp_path):
        emit_outputs(bench_report, str(tmp_path))
        text = (tmp_path / "report.txt").read_text()
        assert "check delay_ordering PASS" in text
        assert "check energy_ordering PASS" in text
        assert "check energy_closeness PASS" in text

    def test_byte_stable(self, bench_scenario_text, tmp_path):
        cfg = parse_scenario(bench_scenario_text)
        a, b = tmp_path / "a", tmp_path / "b"
        emit_outputs(run_comparison(cfg), str(a))
        emit_outputs(run_comparison(cfg), str(b))
        for name in ("distribution.csv", "delays.csv", "energy.csv", "report.txt"):
            assert (a / name).read_bytes() == (b / name).read_bytes()
