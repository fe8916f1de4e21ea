import json

import pytest

from cyltor.cli import main
from cyltor.clasper import OneLoopClasper
from cyltor.cylinder import trivial_cylinder
from cyltor.words import GroupWord, parse_word


@pytest.fixture
def trivial_file(tmp_path):
    path = tmp_path / "trivial.json"
    path.write_text(json.dumps(trivial_cylinder(1).to_json()))
    return str(path)


@pytest.fixture
def clasper_file(tmp_path):
    c = OneLoopClasper(2, (parse_word("g1"), parse_word("g2")),
                       GroupWord.identity(), (0, 0))
    path = tmp_path / "oloop_d2.json"
    path.write_text(json.dumps(c.to_json()))
    return str(path)


class TestTorsionCommand:
    def test_trivial(self, trivial_file, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["torsion", "--in", trivial_file, "--cap", "4", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["det_eps"] == "1"
        assert report["log"] == []
        assert report["mod_h"] is False

    def test_precondition_exit_code(self, tmp_path, capsys):
        from cyltor.cylinder import mapping_cylinder

        pres = mapping_cylinder([parse_word("g2"), parse_word("g1")], 1)
        path = tmp_path / "swap.json"
        path.write_text(json.dumps(pres.to_json()))
        assert main(["torsion", "--in", str(path), "--cap", "3"]) == 3
        assert main(["torsion", "--in", str(path), "--cap", "3", "--mod-h"]) == 0

    def test_parse_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["torsion", "--in", str(path), "--cap", "3"]) == 2


class TestSurgeryCommand:
    def test_oracle_match(self, clasper_file, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main([
            "surgery", "--in", clasper_file, "--genus", "1", "--cap", "4",
            "--oracle", "--out", str(out),
        ])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["match"] is True
        deg2 = [e for e in report["formula"]["log"] if e["degree"] == 2]
        assert deg2 == [{"degree": 2, "word": [1, 2], "coeff": "-2"}]


class TestJohnsonCommand:
    def test_word_images(self, tmp_path, capsys):
        data = {
            "genus": 1, "cap": 4,
            "images": {"g1": "g1 g1 g2 G1 G2", "g2": "g2"},
        }
        path = tmp_path / "auto.json"
        path.write_text(json.dumps(data))
        out = tmp_path / "report.json"
        assert main(["johnson", "--in", str(path), "--degree", "1", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["ia_degree"] == 1
        assert report["trace"] == [{"degree": 1, "word": [2], "coeff": "1"}]


class TestCompareCommand:
    def test_equal_and_unequal(self, tmp_path, capsys):
        a = {"det_eps": "1", "log": [{"degree": 2, "word": [1, 2], "coeff": "-2"}]}
        b = {"det_eps": "1", "log": []}
        pa, pb = tmp_path / "a.json", tmp_path / "b.json"
        pa.write_text(json.dumps(a))
        pb.write_text(json.dumps(b))
        assert main(["compare", str(pa), str(pa)]) == 0
        assert main(["compare", str(pa), str(pb)]) == 1


class TestVerifyCommand:
    def test_suite_passes(self, tmp_path, capsys):
        out = tmp_path / "necklace.json"
        code = main([
            "verify", "--suite", "necklace", "--cap", "4", "--genus", "1",
            "--trials", "8", "--out", str(out),
        ])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["passed"] is True

    def test_deterministic_reports(self, tmp_path, capsys):
        outs = []
        for name in ("r1.json", "r2.json"):
            out = tmp_path / name
            main([
                "verify", "--suite", "fox", "--seed", "5", "--trials", "8",
                "--out", str(out),
            ])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_trials_change_report(self, tmp_path, capsys):
        code = main(["verify", "--suite", "ldet", "--trials", "4", "--cap", "3"])
        assert code == 0
