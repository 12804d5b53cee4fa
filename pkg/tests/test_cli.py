import json

import numpy as np
import pytest
from click.testing import CliRunner

from cli import cli, exit_code_for, main
from graph_core.generators import gen_complete, gen_cycle
from kernel import Kernel
from triangulation.search import find_partition
from util.errors import NotTriangulableError
from util.types import ErrorCode, ExitCode


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.edges"
    path.write_text("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def c4_file(tmp_path):
    path = tmp_path / "c4.edges"
    path.write_text("0 1\n1 2\n2 3\n0 3\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def cone_file(tmp_path, runner):
    path = tmp_path / "cone5.edges"
    result = runner.invoke(cli, ["gen", "double-cone:5", "--out", str(path)])
    assert result.exit_code == 0
    return str(path)


def test_gen_k4(runner):
    result = runner.invoke(cli, ["gen", "k4"])
    assert result.exit_code == 0
    assert result.output.splitlines() == ["0 1", "0 2", "0 3", "1 2", "1 3", "2 3"]


def test_gen_double_cone(cone_file):
    with open(cone_file, encoding="utf-8") as f:
        assert len(f.read().splitlines()) == 15


def test_gen_json(runner):
    result = runner.invoke(cli, ["gen", "cycle:3", "--format", "json"])
    assert json.loads(result.output) == {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}


def test_gen_rejects_small_cycle(runner):
    result = runner.invoke(cli, ["gen", "cycle:2"])
    assert result.exit_code == 1


def test_usage_error_is_exit_1(runner):
    assert runner.invoke(cli, ["gen"]).exit_code == 1
    assert runner.invoke(cli, ["nope"]).exit_code == 1


def test_triangulate_k4(runner, k4_file):
    result = runner.invoke(cli, ["triangulate", k4_file])
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 4


def test_triangulate_c4(runner, c4_file):
    result = runner.invoke(cli, ["triangulate", c4_file])
    assert result.exit_code == 2
    assert "not triangulable: no directed triangles" in result.output


def test_triangulate_double_cone_6(runner, tmp_path):
    graph = tmp_path / "g6.edges"
    runner.invoke(cli, ["gen", "double-cone:6", "--out", str(graph)])
    result = runner.invoke(cli, ["triangulate", str(graph)])
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 12


def test_verify_k4(runner, k4_file, tmp_path):
    partition = tmp_path / "k4.tri"
    assert runner.invoke(cli, ["triangulate", k4_file, "--out", str(partition)]).exit_code == 0
    result = runner.invoke(cli, ["verify", k4_file, str(partition)])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["matched"] is True
    assert report["totals"] == [12, 12]
    assert report["max_pairing_error"] <= 1e-9
    assert all(set(c) == {"re", "im", "mult"} for c in report["computed"])


def test_verify_is_deterministic(runner, cone_file):
    first = runner.invoke(cli, ["verify", cone_file])
    second = runner.invoke(cli, ["verify", cone_file])
    assert first.exit_code == 0
    assert first.output == second.output


def test_verify_corrupted_partition(runner, k4_file, tmp_path):
    partition = tmp_path / "bad.tri"
    partition.write_text("0 1 2\n0 1 2\n0 3 1\n1 3 2\n", encoding="utf-8")
    result = runner.invoke(cli, ["verify", k4_file, str(partition)])
    assert result.exit_code == 3
    assert "overlapping arcs" in result.output


def test_verify_not_triangulable(runner, c4_file):
    assert runner.invoke(cli, ["verify", c4_file]).exit_code == 2


def test_verify_conventional_c4(runner, c4_file):
    result = runner.invoke(cli, ["verify", c4_file, "--conventional"])
    assert result.exit_code == 0
    assert json.loads(result.output)["walk"] == "U"


def test_spectrum_T(runner, k4_file):
    result = runner.invoke(cli, ["spectrum", "--op", "T", k4_file])
    assert result.exit_code == 0
    values = json.loads(result.output)["eigenvalues"]
    np.testing.assert_allclose(values, [-1 / 3, -1 / 3, -1 / 3, 1.0], atol=1e-12)


def test_spectrum_U_c_text(runner, k4_file):
    result = runner.invoke(cli, ["spectrum", "--op", "U_c", k4_file, "--format", "text"])
    assert result.exit_code == 0
    rows = [tuple(map(float, line.split())) for line in result.output.splitlines()]
    assert len(rows) == 12
    np.testing.assert_allclose([abs(complex(*r)) for r in rows], 1.0, atol=1e-12)


def test_simulate_csv(runner, k4_file):
    result = runner.invoke(cli, ["simulate", k4_file, "--steps", "50", "--start-arc", "0 1"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "t,vertex_0,vertex_1,vertex_2,vertex_3"
    assert len(lines) == 52
    assert lines[1].startswith("0,0,1,0,0")


def test_simulate_stride(runner, k4_file):
    result = runner.invoke(cli, ["simulate", k4_file, "--steps", "10", "--stride", "5"])
    assert [line.split(",")[0] for line in result.output.splitlines()[1:]] == ["0", "5", "10"]


def test_oracle_T_spectrum(runner):
    result = runner.invoke(cli, ["oracle", "double-cone", "4", "--what", "T-spectrum"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    np.testing.assert_allclose(payload["T_spectrum"], [-0.5, -0.5, 0.0, 0.0, 0.0, 1.0], atol=1e-15)


def test_oracle_birth_vectors(runner):
    result = runner.invoke(cli, ["oracle", "double-cone", "4", "--what", "birth-vectors", "--k", "0"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert len(payload["birth_vectors"]) == 4
    assert len(payload["arcs"]) == 24
    assert payload["birth_vectors"][-1]["even_extra"] is True


def test_oracle_bad_n(runner):
    assert runner.invoke(cli, ["oracle", "double-cone", "2"]).exit_code == 1


def test_dump_and_identities(runner, k4_file):
    result = runner.invoke(cli, ["dump", k4_file, "--name", "T"])
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 5
    result = runner.invoke(cli, ["identities", k4_file])
    assert result.exit_code == 0
    assert json.loads(result.output)["S_c^3=I"] == 0.0


def test_ledger(runner, cone_file):
    result = runner.invoke(cli, ["ledger", cone_file])
    assert result.exit_code == 0
    assert json.loads(result.output)["dim B_-1"] == {"computed": 4, "expected": 4}


def test_corpus(runner):
    result = runner.invoke(cli, ["corpus", "--n-min", "3", "--n-max", "4", "--quiet"])
    assert result.exit_code == 0
    rows = json.loads(result.output)
    assert [r["graph"] for r in rows] == ["k4", "double-cone:3", "double-cone:4"]
    assert all(r["matched"] and r["ledger_consistent"] for r in rows)


def test_tolerance_flags(runner, k4_file):
    assert runner.invoke(cli, ["verify", k4_file, "--tol", "0"]).exit_code == 1
    assert runner.invoke(cli, ["verify", k4_file, "--cluster-tol", "1e-6", "--rank-tol", "1e-10"]).exit_code == 0


def test_config_file(runner, k4_file, tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("output_format: text\ntolerances:\n  cluster_tol: 1.0e-6\n", encoding="utf-8")
    result = runner.invoke(cli, ["verify", k4_file, "--config", str(config)])
    assert result.exit_code == 0
    assert result.output.startswith("SpectrumReport[U_c] matched")


def test_max_dim_env(runner, k4_file, monkeypatch):
    monkeypatch.setenv("TRIWALK_MAX_DIM", "4")
    assert runner.invoke(cli, ["verify", k4_file]).exit_code == 4


def test_main_returns_codes(k4_file, c4_file, tmp_path):
    out = tmp_path / "report.json"
    assert main(["verify", k4_file, "--out", str(out)]) == 0
    assert json.loads(out.read_text(encoding="utf-8"))["matched"] is True
    assert main(["triangulate", c4_file]) == 2
    assert main(["gen", "cycle:2"]) == 1


def test_non_utf8_graph_is_format_error(runner, tmp_path):
    path = tmp_path / "bad.edges"
    path.write_bytes(b"0 1\n\xff\n")
    result = runner.invoke(cli, ["verify", str(path)])
    assert result.exit_code == 1
    assert "not UTF-8" in result.output
    assert "Traceback" not in result.output


def test_non_utf8_partition_is_verification_error(runner, k4_file, tmp_path):
    path = tmp_path / "bad.tri"
    path.write_bytes(b"0 1 2\n\xfe\xff\n")
    result = runner.invoke(cli, ["verify", k4_file, str(path)])
    assert result.exit_code == 3
    assert "not UTF-8" in result.output


def test_malformed_json_inputs(runner, k4_file, tmp_path):
    graph = tmp_path / "g.json"
    graph.write_text("{", encoding="utf-8")
    assert runner.invoke(cli, ["verify", str(graph)]).exit_code == 1
    partition = tmp_path / "p.json"
    partition.write_text('{"triangles": [[0, 1]]}', encoding="utf-8")
    assert runner.invoke(cli, ["verify", k4_file, str(partition)]).exit_code == 3
    partition.write_text("[", encoding="utf-8")
    assert runner.invoke(cli, ["verify", k4_file, str(partition)]).exit_code == 3


def test_unexpected_error_is_exit_4(runner, monkeypatch):
    def broken(self, family):
        raise RuntimeError("boom")
    monkeypatch.setattr(Kernel, "gen", broken)
    result = runner.invoke(cli, ["gen", "k4"])
    assert result.exit_code == 4
    assert "RuntimeError: boom" in result.output


def test_not_triangulable_message_and_code(runner, c4_file):
    for command in (["verify", c4_file], ["spectrum", "--op", "U_c", c4_file], ["simulate", c4_file]):
        result = runner.invoke(cli, command)
        assert result.exit_code == 2
        assert "not triangulable: no directed triangles" in result.output


def test_exit_code_for_not_triangulable():
    assert exit_code_for(NotTriangulableError(find_partition(gen_cycle(4)))) == ExitCode.NOT_TRIANGULABLE


def test_kernel_resolves_missing_partition():
    kernel = Kernel()
    k4 = gen_complete(4)
    values = kernel.spectrum(k4, "U_c")
    assert len(values) == 12
    np.testing.assert_allclose(np.abs(values), 1.0, atol=1e-12)
    frame = kernel.simulate(k4, None, steps=3)
    assert len(frame) == 4
    with pytest.raises(NotTriangulableError) as err:
        kernel.require_partition(gen_cycle(4))
    assert err.value.code == ErrorCode.NOT_TRIANGULABLE
