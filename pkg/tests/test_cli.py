import json
import os

import pytest

from frattini import cli


def run(argv):
    return cli.main(argv)


class TestClassifyCommand:
    def test_dihedral_8(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = run(["classify", "--family", "dihedral", "--order", "8",
                    "--out", str(out)])
        assert code == 0
        printed = capsys.readouterr().out
        assert "S-group" in printed and "H0 order 2" in printed
        payload = json.loads(out.read_text())
        assert payload["verdict"] == "S"
        assert payload["h0_order"] == 2

    def test_example_group_flags(self, tmp_path):
        out = tmp_path / "ex.json"
        code = run(["classify", "--family", "metacyclic", "--p", "2",
                    "--alpha", "5", "--beta", "4", "--gamma", "5",
                    "--r", "11", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["verdict"] == "S"
        assert payload["nilpotency_class"] == 5
        assert payload["coclass"] == 4

    def test_abelian_input_exits_3(self, tmp_path):
        code = run(["classify", "--family", "cyclic", "--order", "8",
                    "--out", str(tmp_path / "x.json")])
        assert code == 3

    def test_bad_family_exits_2(self, tmp_path):
        code = run(["classify", "--family", "hyperbolic", "--order", "8",
                    "--out", str(tmp_path / "x.json")])
        assert code == 2

    def test_bad_metacyclic_params_exit_2(self, tmp_path):
        code = run(["classify", "--family", "metacyclic", "--p", "2",
                    "--alpha", "3", "--beta", "1", "--gamma", "1", "--r", "3",
                    "--out", str(tmp_path / "x.json")])
        assert code == 2

    def test_config_file(self, tmp_path):
        cfg = tmp_path / "group.cfg"
        cfg.write_text("family = semidirect-cyclic\nm = 32\nn = 16\nr = 11\n")
        out = tmp_path / "r.json"
        code = run(["classify", "--config", str(cfg), "--out", str(out)])
        assert code == 0
        assert json.loads(out.read_text())["coclass"] == 4

    def test_compact_descriptor(self, tmp_path):
        out = tmp_path / "r.json"
        code = run(["classify", "--family",
                    "direct-product(dihedral(8), cyclic(2))",
                    "--out", str(out)])
        assert code == 0
        assert json.loads(out.read_text())["order"] == 16

    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(["classify", "--family", "quaternion", "--order", "32",
             "--out", str(a)])
        run(["classify", "--family", "quaternion", "--order", "32",
             "--out", str(b)])
        assert a.read_text() == b.read_text()


class TestSearchCommand:
    def test_z4xz2_has_no_hits(self, tmp_path, capsys):
        out = tmp_path / "s.json"
        code = run(["search", "--p", "2", "--type", "2,1", "--rank", "2",
                    "--jobs", "1", "--out", str(out)])
        assert code == 0
        assert "0 hits" in capsys.readouterr().out
        payload = json.loads(out.read_text())
        assert payload["hit_count"] == 0

    def test_z4xz4_has_no_hits(self, tmp_path):
        out = tmp_path / "s.json"
        code = run(["search", "--p", "2", "--type", "2,2", "--rank", "2",
                    "--jobs", "1", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["hit_count"] == 0
        assert payload["automorphism_count"] == 96

    def test_free_module_hits(self, tmp_path):
        out = tmp_path / "s.json"
        code = run(["search", "--p", "2", "--type", "1,1,1,1", "--rank", "2",
                    "--jobs", "1", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["hit_count"] >= 1
        assert all(h["rank"] == 2 for h in payload["hits"])

    def test_guard_exit_4(self, tmp_path):
        code = run(["search", "--p", "2", "--type", "1,1,1,1,1",
                    "--rank", "2", "--jobs", "1",
                    "--out", str(tmp_path / "s.json")])
        assert code == 4

    def test_bad_type_exits_2(self, tmp_path):
        code = run(["search", "--p", "2", "--type", "1,2", "--rank", "2",
                    "--jobs", "1", "--out", str(tmp_path / "s.json")])
        assert code == 2

    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            run(["search", "--p", "2", "--type", "2,1,1", "--rank", "2",
                 "--jobs", "1", "--out", str(path)])
        assert a.read_text() == b.read_text()


class TestVerifyCommand:
    def test_only_congruence(self, tmp_path, capsys):
        code = run(["verify", "--only", "congruence", "--jobs", "1",
                    "--out-dir", str(tmp_path)])
        assert code == 0
        printed = capsys.readouterr().out
        assert "congruence" in printed
        payload = json.loads((tmp_path / "verification.json").read_text())
        assert payload["overall"] == "pass"
        by_name = {c["name"]: c for c in payload["checks"]}
        assert by_name["congruence"]["status"] == "pass"
        assert by_name["example-group"]["status"] == "skipped"
        assert (tmp_path / "verification.md").exists()

    def test_only_example_group(self, tmp_path):
        code = run(["verify", "--only", "example-group", "--jobs", "1",
                    "--out-dir", str(tmp_path)])
        assert code == 0

    def test_check_names_unique(self):
        from frattini.verification import CHECK_NAMES
        assert len(CHECK_NAMES) == len(set(CHECK_NAMES)) == 11

    def test_unknown_check_rejected(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as info:
            run(["verify", "--only", "nonsense", "--out-dir", str(tmp_path)])
        assert info.value.code == 2
