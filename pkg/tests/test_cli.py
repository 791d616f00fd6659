import json

import pytest

from foamcat.cli import InputError, read_config, run, table_from_json
from foamcat.homology import link_homology
from foamcat.skewhowe import example

from oracles import TEST_SET, braid_to_pd, golden_path, kauffman_state_sum, load_golden


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestPoly:
    def test_sl3_unknot(self, capsys):
        assert cli(capsys, "poly", "--n", "3", "unknot") == (0, "q^2 + 1 + q^-2\n", "")

    def test_inline_braid_matches_state_sum(self, capsys):
        code, out, _ = cli(capsys, "--format", "json", "poly", "--n", "2", "braid: s1 s1", "--closed")
        assert code == 0
        poly = {e: c for e, c in json.loads(out)["poly"]}
        assert poly == dict(kauffman_state_sum(braid_to_pd([1, 1], 2), components=2).items())

    def test_pd_file(self, capsys, tmp_path):
        f = tmp_path / "unknot.pd"
        f.write_text(json.dumps({"pd": [[1, 1, 2, 2]]}))
        assert cli(capsys, "poly", "--n", "3", str(f))[:2] == (0, "q^2 + 1 + q^-2\n")

    def test_csv(self, capsys):
        code, out, _ = cli(capsys, "--format", "csv", "poly", "unknot")
        assert out.splitlines() == ["exponent,coefficient", "-1,1", "1,1"]

    @pytest.mark.parametrize("text", ['{"pd": [[1, 2', '{"pd": [[1, 2, 3]]}', "s0 s1", "no-such-link"])
    def test_malformed_input(self, capsys, tmp_path, text):
        f = tmp_path / "bad.pd"
        f.write_text(text)
        code, out, err = cli(capsys, "poly", str(f))
        assert code == 2 and out == "" and err.startswith("error:")

    def test_open_rejected(self, capsys):
        assert cli(capsys, "poly", "unknot", "--open")[0] == 2


class TestHomology:
    def test_unknot_table(self, capsys):
        code, out, _ = cli(capsys, "homology", "unknot")
        assert code == 0
        assert out.splitlines() == ["i   j  rank  torsion", "0  -1     1", "0   1     1"]

    def test_rational_drops_torsion_column(self, capsys):
        _, out, _ = cli(capsys, "homology", "trefoil+", "--ring", "Q")
        assert out.splitlines()[0].split() == ["i", "j", "rank"]
        assert "3  7" not in out

    def test_csv_lists_torsion(self, capsys):
        _, out, _ = cli(capsys, "homology", "trefoil+", "--format", "csv")
        assert "3,7,0,2" in out.splitlines()

    @pytest.mark.parametrize("name", TEST_SET)
    @pytest.mark.parametrize("n", ["2", "3"])
    def test_json_matches_golden_file(self, capsys, name, n):
        code, out, _ = cli(capsys, "--format", "json", "homology", name, "--n", n)
        assert code == 0
        data = json.loads(out)
        with open(golden_path(name, int(n))) as fh:
            golden = json.load(fh)
        assert data["table"] == golden["table"]
        assert table_from_json(out) == load_golden(name, int(n))

    @pytest.mark.parametrize("name", ["trefoil+", "figure8"])
    def test_json_round_trip(self, capsys, name):
        _, out, _ = cli(capsys, "--format", "json", "homology", name, "--framed")
        assert table_from_json(out) == link_homology(example(name), 2, framed=True)

    def test_schema_checked(self):
        with pytest.raises(InputError):
            table_from_json(json.dumps({"schema": 2, "table": []}))

    def test_crossing_guard(self, capsys):
        code, _, err = cli(capsys, "homology", "s1 s1 s1 s1 s1", "--max-crossings", "3")
        assert code == 3 and "resource" in err

    def test_sl3_pd_is_an_input_error(self, capsys):
        code, _, err = cli(capsys, "homology", json.dumps({"pd": braid_to_pd([1, 1], 2)}), "--n", "3")
        assert code == 2 and "braids" in err


class TestEvalFoam:
    @pytest.mark.parametrize("argv,value", [
        (["sphere", "--dots", "1", "--n", "2"], "1"),
        (["sphere", "--n", "2"], "0"),
        (["theta", "--dots", "0,1,2", "--n", "3"], "1"),
        (["theta", "--dots", "0,2,1", "--n", "3"], "-1"),
        (["two-sphere", "--n", "2"], "-1"),
        (["theta", "--dots", "1,0", "--n", "2"], "1"),
        (["sphere", "--dots", "2", "--n", "3"], "-1"),
        (["sphere", "--dots", "3", "--n", "3", "--theta3", "5"], "5"),
    ])
    def test_values(self, capsys, argv, value):
        assert cli(capsys, "eval-foam", *argv)[:2] == (0, value + "\n")

    def test_symbolic(self, capsys):
        assert cli(capsys, "eval-foam", "sphere", "--dots", "4", "--n", "3", "--symbolic")[1] == "theta4\n"

    def test_json(self, capsys):
        _, out, _ = cli(capsys, "--format", "json", "eval-foam", "two-sphere")
        assert json.loads(out) == {"schema": 1, "command": "eval-foam", "shape": "two-sphere",
                                   "n": 2, "value": -1}

    @pytest.mark.parametrize("argv", [["cube"], ["blister", "--n", "3"], ["sphere", "--dots", "x"],
                                      ["theta", "--dots", "1,2,3"]])
    def test_bad_shape_or_dots(self, capsys, argv):
        assert cli(capsys, "eval-foam", *argv)[0] == 2


class TestCheckRelations:
    def test_nilhecke_passes(self, capsys):
        code, out, _ = cli(capsys, "check-relations", "nilhecke", "--n", "2", "--m", "2", "--N", "4")
        assert code == 0 and out.startswith("nilhecke: pass")

    def test_qrep_passes(self, capsys):
        code, out, _ = cli(capsys, "check-relations", "qrep", "--m", "4", "--N", "6")
        assert code == 0 and out.startswith("qrep: pass")

    def test_injected_sign_fails_with_weight(self, capsys):
        code, out, _ = cli(capsys, "check-relations", "qrep", "--n", "2", "--m", "3", "--inject", "sign")
        assert code == 4
        lines = out.splitlines()
        assert lines[0].startswith("qrep: FAIL")
        assert lines[1].startswith("  counterexample:") and "(" in lines[1]

    def test_json_report(self, capsys):
        code, out, _ = cli(capsys, "--format", "json", "check-relations", "nilhecke")
        data = json.loads(out)
        assert code == 0 and data["suites"][0]["failures"] == []

    def test_unknown_suite(self, capsys):
        assert cli(capsys, "check-relations", "nope")[0] == 2


class TestProjector:
    def test_report(self, capsys):
        code, out, _ = cli(capsys, "projector", "--m", "2", "--k", "2")
        assert code == 0
        assert "identity web only in degree 0: True" in out
        assert "stabilizes through degree 2: True" in out
        assert "turnback acyclic" in out and "False" not in out

    def test_k_zero(self, capsys):
        _, out, _ = cli(capsys, "projector", "--k", "0")
        assert out.splitlines()[0] == "  0: id{0}"

    def test_json(self, capsys):
        _, out, _ = cli(capsys, "--format", "json", "projector", "--k", "1")
        data = json.loads(out)
        assert data["chain_groups"]["0"] == [["id", 0]] and data["stabilizes"]

    def test_above_cap(self, capsys):
        code, _, err = cli(capsys, "projector", "--k", "7")
        assert code == 3 and "resource" in err
        assert cli(capsys, "projector", "--k", "2", "--max-k", "1")[0] == 3


class TestCompile:
    def test_hopf_sl3(self, capsys):
        _, out, _ = cli(capsys, "--format", "json", "compile", "hopf+", "--n", "3")
        data = json.loads(out)
        assert data["domain"] == [0, 0, 3, 3] and data["crossings"] == 2 and data["components"] == 2


class TestConfig:
    def test_file_and_flag_precedence(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# defaults for this run\nn = 3\nformat = csv\n")
        assert cli(capsys, "--config", str(cfg), "poly", "unknot")[1].splitlines()[1:] == [
            "-2,1", "0,1", "2,1"]
        assert cli(capsys, "--config", str(cfg), "poly", "unknot", "--n", "2",
                   "--format", "table")[1] == "q + q^-1\n"

    def test_read_config_types(self, tmp_path):
        cfg = tmp_path / "a.cfg"
        cfg.write_text("framed = yes\nmax-crossings = 8\nring = Q\n")
        assert read_config(cfg) == {"framed": True, "max_crossings": 8, "ring": "Q"}

    @pytest.mark.parametrize("text", ["n 3\n", "colour = red\n", "n = three\n", "framed = maybe\n"])
    def test_bad_config(self, capsys, tmp_path, text):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text(text)
        assert cli(capsys, "--config", str(cfg), "poly", "unknot")[0] == 2

    def test_log_variable(self, capsys, monkeypatch):
        monkeypatch.setenv("FOAMCAT_LOG", "loud")
        assert cli(capsys, "poly", "unknot")[0] == 2
        monkeypatch.setenv("FOAMCAT_LOG", "debug")
        assert cli(capsys, "poly", "unknot")[0] == 0

    def test_unknown_command(self, capsys):
        assert cli(capsys, "frobnicate")[0] == 2
