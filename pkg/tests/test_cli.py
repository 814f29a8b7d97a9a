import pytest

from wsn_multipath import bundled_scenario_path
from wsn_multipath.cli import main

BAD_FIELD = """
paths.hops 5
packets ten
link.bit_rate 1000
energy.e_t 0.1
energy.e_r 0.1
energy.k_r 0.01
"""

# communication energy alone puts the adaptive scheme closer to equal split
# than to single path, so the closeness check fails without idle/sensing
NO_OVERHEADS = """
paths.hops 9 22 5 20 7
paths.tau 0.02
packets 100
link.bit_rate 50000
energy.e_t 0.128
energy.e_r 0.1024
energy.k_r 0
sim.idle_power 0
"""


@pytest.fixture
def bench_path():
    return str(bundled_scenario_path())


class TestRun:
    def test_benchmark_exits_zero(self, bench_path, tmp_path, capsys):
        code = main(["run", bench_path, "--out", str(tmp_path)])
        out = capsys.readouterr().out
        assert code == 0
        assert "delay ordering: PASS" in out
        assert (tmp_path / "energy.csv").exists()

    def test_packet_override(self, bench_path, tmp_path, capsys):
        code = main(["run", bench_path, "--out", str(tmp_path), "--packets", "200"])
        assert code == 0
        lines = (tmp_path / "distribution.csv").read_text().splitlines()
        assert lines[1] == "1,9,0,40,41"

    def test_ordering_failure_exits_three(self, tmp_path, capsys):
        scn = tmp_path / "no_overheads.scenario"
        scn.write_text(NO_OVERHEADS)
        code = main(["run", str(scn), "--out", str(tmp_path / "out")])
        out = capsys.readouterr().out
        assert code == 3
        assert "energy closeness: FAIL" in out

    def test_scheme_subset(self, bench_path, tmp_path, capsys):
        code = main(["run", bench_path, "--out", str(tmp_path), "--schemes", "2"])
        out = capsys.readouterr().out
        assert code == 0
        assert "equal_split" in out
        assert "ordering" not in out

    def test_trace_writes_event_logs(self, bench_path, tmp_path, capsys):
        code = main(["run", bench_path, "--out", str(tmp_path), "--trace",
                     "--schemes", "3"])
        assert code == 0
        trace = (tmp_path / "trace_adaptive.txt").read_text().splitlines()
        assert trace[0].split()[1] == "PacketSend"
        assert all(len(line.split()) == 6 for line in trace)

    def test_no_trace_no_log_files(self, bench_path, tmp_path):
        main(["run", bench_path, "--out", str(tmp_path), "--schemes", "3"])
        assert not list(tmp_path.glob("trace_*.txt"))


class TestValidate:
    def test_ok(self, bench_path, capsys):
        assert main(["validate", bench_path]) == 0
        assert "OK: 5 explicit paths" in capsys.readouterr().out

    def test_bad_field_exits_one(self, tmp_path, capsys):
        scn = tmp_path / "bad.scenario"
        scn.write_text(BAD_FIELD)
        assert main(["validate", str(scn)]) == 1
        err = capsys.readouterr().err
        assert "packets" in err

    def test_missing_file_exits_one(self, capsys):
        assert main(["validate", "/nonexistent/file.scenario"]) == 1


class TestPaths:
    def test_route_listing(self, bench_path, capsys):
        assert main(["paths", bench_path]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 5
        assert lines[0].startswith("1: 0,")
        assert all(line.endswith(",1") for line in lines)


class TestArgparse:
    def test_unknown_command_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_no_command_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
