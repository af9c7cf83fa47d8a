import json
import math

import numpy as np
import pytest

from ueigen import is_symmetric, tensor_from_json
from ueigen.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_catalog_fixture_json(self, capsys):
        code, out, _ = run(
            capsys,
            "solve", "--catalog", "example_4_1", "--algo", "gauss-seidel",
            "--starts", "10", "--tol", "1e-9", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["lambda"] == pytest.approx(0.8165, abs=5e-4)
        assert payload["gme"] == pytest.approx(0.6058, abs=5e-4)
        assert payload["status"] == "converged"
        assert payload["algorithm"] == "gauss_seidel"
        assert len(payload["factors"]) == 3

    def test_joint_algorithm_table(self, capsys):
        code, out, _ = run(
            capsys, "solve", "--catalog", "example_4_2", "--algo", "joint",
            "--starts", "5", "--seed", "1",
        )
        assert code == 0
        assert "0.5774" in out
        assert "GME" in out

    def test_zero_tensor_file(self, capsys, tmp_path):
        path = tmp_path / "zero.json"
        path.write_text(json.dumps({"dims": [2, 2, 2], "entries": []}))
        code, _, err = run(capsys, "solve", "--file", str(path))
        assert code == 4
        assert "zero eigenvalue" in err

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dims": [2, 2], "entries": [')
        code, _, err = run(capsys, "solve", "--file", str(path))
        assert code == 2
        assert "line" in err

    def test_unknown_catalog_id_lists_valid(self, capsys):
        code, _, err = run(capsys, "solve", "--catalog", "nope")
        assert code == 2
        assert "example_4_1" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "solve", "--file", str(tmp_path / "absent.json"))
        assert code == 2

    def test_tensor_file_round_trip(self, capsys, tmp_path):
        path = tmp_path / "t.json"
        entries = [
            {"idx": [1, 1, 2], "re": math.sqrt(1 / 3), "im": 0.0},
            {"idx": [2, 1, 1], "re": math.sqrt(2 / 3), "im": 0.0},
        ]
        path.write_text(json.dumps({"dims": [2, 2, 2], "entries": entries}))
        code, out, _ = run(
            capsys, "solve", "--file", str(path), "--format", "json", "--starts", "5"
        )
        assert code == 0
        assert json.loads(out)["lambda"] == pytest.approx(0.8165, abs=5e-4)


class TestDeterminism:
    def test_identical_json_modulo_timing(self, capsys):
        argv = [
            "solve", "--catalog", "example_4_1", "--seed", "11",
            "--starts", "4", "--format", "json",
        ]
        code1, out1, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv)
        assert code1 == code2 == 0
        p1, p2 = json.loads(out1), json.loads(out2)
        p1.pop("timing"), p2.pop("timing")
        assert p1 == p2


class TestBench:
    def test_all_three_agree(self, capsys):
        code, out, _ = run(
            capsys, "bench", "--catalog", "example_4_1", "--starts", "5",
            "--seed", "0",
        )
        assert code == 0
        lines = [l for l in out.splitlines() if l and not l.startswith("Algorithm")]
        assert len(lines) == 3
        for line in lines:
            assert "0.8165" in line

    def test_single_algorithm(self, capsys):
        code, out, _ = run(
            capsys, "bench", "--catalog", "trig_5", "--algos", "gauss-seidel",
            "--starts", "5",
        )
        assert code == 0
        rows = [l for l in out.splitlines() if l.startswith("gauss-seidel")]
        assert len(rows) == 1
        assert "0.7815" in rows[0]

    def test_unknown_algorithm(self, capsys):
        code, _, err = run(
            capsys, "bench", "--catalog", "example_4_1", "--algos", "qr"
        )
        assert code == 2
        assert "unknown algorithm" in err


class TestEmbed:
    def test_two_by_two(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(
            json.dumps(
                {
                    "dims": [2, 2],
                    "entries": [{"idx": [1, 2], "re": 1.0, "im": 0.5}],
                }
            )
        )
        code, out, _ = run(capsys, "embed", "--file", str(path))
        assert code == 0
        payload = json.loads(out)
        assert payload["dims"] == [4, 4]
        assert payload["source_dims"] == [2, 2]
        embedded = tensor_from_json({k: v for k, v in payload.items() if k != "source_dims"})
        assert is_symmetric(embedded, 1e-12)

    def test_catalog_state(self, capsys):
        code, out, _ = run(capsys, "embed", "--catalog", "example_4_1")
        assert code == 0
        payload = json.loads(out)
        assert payload["dims"] == [6, 6, 6]
        # m! = 6 copies of each of the two source amplitudes
        assert len(payload["entries"]) == 12

    def test_output_file(self, capsys, tmp_path):
        out_path = tmp_path / "sym.json"
        code, out, _ = run(
            capsys, "embed", "--catalog", "example_4_1", "--output", str(out_path)
        )
        assert code == 0
        assert out == ""
        assert json.loads(out_path.read_text())["dims"] == [6, 6, 6]


class TestTables:
    def test_table_one_row(self, capsys):
        code, out, _ = run(capsys, "tables", "--tables", "1", "--starts", "5")
        assert code == 0
        assert "Table 1" in out
        rows = [l for l in out.splitlines() if l.startswith("example_4_1")]
        assert len(rows) == 3
        for row in rows:
            assert "0.8165" in row and "0.6058" in row

    def test_invalid_table(self, capsys):
        code, _, err = run(capsys, "tables", "--tables", "9")
        assert code == 2


class TestCatalogCommand:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "catalog", "list")
        assert code == 0
        assert "example_4_1" in out
        assert "trig_10" in out

    def test_dump_round_trip(self, capsys):
        code, out, _ = run(capsys, "catalog", "dump", "example_4_1")
        assert code == 0
        tensor = tensor_from_json(json.loads(out))
        assert tensor.dims == (2, 2, 2)
        assert tensor.data[0, 0, 1] == pytest.approx(math.sqrt(1 / 3))

    def test_dump_unknown(self, capsys):
        code, _, err = run(capsys, "catalog", "dump", "missing")
        assert code == 2
        assert "valid ids" in err


class TestOracleCommand:
    def test_four_term_tensor(self, capsys):
        code, out, _ = run(
            capsys, "oracle", "--catalog", "example_4_7", "--samples", "2000",
            "--starts", "3",
        )
        assert code == 0
        assert "analytic" in out
        assert "0.577350" in out
        assert "MISMATCH" not in out

    def test_matrix_gets_svd_row(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(
            json.dumps(
                {
                    "dims": [2, 2],
                    "entries": [
                        {"idx": [1, 1], "re": 0.6, "im": 0.0},
                        {"idx": [2, 2], "re": 0.8, "im": 0.0},
                    ],
                }
            )
        )
        code, out, _ = run(capsys, "oracle", "--file", str(path), "--samples", "2000")
        assert code == 0
        assert "svd" in out
        assert "0.800000" in out
