import json

import pytest

from roadrules.cli import main


@pytest.fixture
def town(tmp_path):
    out = tmp_path / "town"
    assert main(["scenario", "--template", "sample-town", "--out-dir", str(out)]) == 0
    return out


def derive_args(town, out, overlay=None, start="N00->N10"):
    args = [
        "derive",
        "--network", str(town / "network.geojson"),
        "--signs", str(town / "signs.geojson"),
        "--start-edge", start,
        "--out", str(out),
    ]
    if overlay is not None:
        args += ["--overlay", str(overlay)]
    return args


class TestDerive:
    def test_full_run(self, town, tmp_path, capsys):
        rules = tmp_path / "rules.json"
        overlay = tmp_path / "overlay.geojson"
        assert main(derive_args(town, rules, overlay)) == 0
        out = capsys.readouterr().out
        assert "1 no-way" in out and "1 no-turn" in out
        doc = json.loads(rules.read_text())
        assert doc["no_way"][0]["edge"] == "N10->N00"
        assert overlay.exists()

    def test_reruns_byte_identical(self, town, tmp_path):
        r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
        o1, o2 = tmp_path / "o1.geojson", tmp_path / "o2.geojson"
        assert main(derive_args(town, r1, o1)) == 0
        assert main(derive_args(town, r2, o2)) == 0
        assert r1.read_bytes() == r2.read_bytes()
        assert o1.read_bytes() == o2.read_bytes()

    def test_missing_start_and_cover_all(self, town, tmp_path, capsys):
        code = main(
            [
                "derive",
                "--network", str(town / "network.geojson"),
                "--signs", str(town / "signs.geojson"),
                "--out", str(tmp_path / "r.json"),
            ]
        )
        assert code == 1
        assert "start-edge" in capsys.readouterr().err

    def test_unknown_start_edge(self, town, tmp_path, capsys):
        assert main(derive_args(town, tmp_path / "r.json", start="nope")) == 1
        assert "unknown edge" in capsys.readouterr().err

    def test_missing_network_file(self, town, tmp_path, capsys):
        args = derive_args(town, tmp_path / "r.json")
        args[args.index("--network") + 1] = str(tmp_path / "missing.geojson")
        assert main(args) == 1
        assert "cannot read" in capsys.readouterr().err

    def test_bad_detection_flag(self, town, tmp_path, capsys):
        assert main(derive_args(town, tmp_path / "r.json") + ["--half-angle", "95"]) == 1
        assert "half_angle" in capsys.readouterr().err

    def test_cover_all_without_start(self, town, tmp_path):
        rules = tmp_path / "rules.json"
        args = [
            "derive",
            "--network", str(town / "network.geojson"),
            "--signs", str(town / "signs.geojson"),
            "--cover-all",
            "--out", str(rules),
        ]
        assert main(args) == 0
        doc = json.loads(rules.read_text())
        assert doc["unreached"] == ["N10->N00"]


class TestValidateCommand:
    def test_perfect_scene_scores_100(self, town, tmp_path, capsys):
        rules = tmp_path / "rules.json"
        assert main(derive_args(town, rules)) == 0
        capsys.readouterr()
        code = main(
            ["validate", "--rules", str(rules), "--truth", str(town / "expected_rules.json")]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["one_way_streets"]["accuracy"] == 100.0
        assert report["turn_restrictions"]["accuracy"] == 100.0

    def test_report_file_output(self, town, tmp_path):
        rules = tmp_path / "rules.json"
        main(derive_args(town, rules))
        out = tmp_path / "report.json"
        code = main(
            [
                "validate",
                "--rules", str(rules),
                "--truth", str(town / "expected_rules.json"),
                "--out", str(out),
            ]
        )
        assert code == 0 and json.loads(out.read_text())["one_way_streets"]["incorrect"] == 0

    def test_malformed_rules_file(self, town, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{}", encoding="utf-8")
        code = main(
            ["validate", "--rules", str(bad), "--truth", str(town / "expected_rules.json")]
        )
        assert code == 1


class TestRenderCommand:
    def test_matches_derive_overlay(self, town, tmp_path):
        rules = tmp_path / "rules.json"
        overlay = tmp_path / "o1.geojson"
        main(derive_args(town, rules, overlay))
        again = tmp_path / "o2.geojson"
        code = main(
            [
                "render",
                "--rules", str(rules),
                "--network", str(town / "network.geojson"),
                "--signs", str(town / "signs.geojson"),
                "--out", str(again),
            ]
        )
        assert code == 0
        assert overlay.read_bytes() == again.read_bytes()


class TestExitCodes:
    def test_internal_error_maps_to_2(self, town, tmp_path, monkeypatch, capsys):
        import roadrules.cli as cli
        from roadrules.errors import InternalError

        def boom(path):
            raise InternalError("invariant broken")

        monkeypatch.setattr(cli, "load_rules", boom)
        code = main(
            ["validate", "--rules", "x.json", "--truth", str(town / "expected_rules.json")]
        )
        assert code == 2
        assert "internal error" in capsys.readouterr().err

    def test_unexpected_exception_maps_to_2(self, town, tmp_path, monkeypatch, capsys):
        import roadrules.cli as cli

        def boom(path):
            raise RuntimeError("surprise")

        monkeypatch.setattr(cli, "load_rules", boom)
        code = main(
            ["validate", "--rules", "x.json", "--truth", str(town / "expected_rules.json")]
        )
        assert code == 2
        assert "internal error" in capsys.readouterr().err


class TestScenarioCommand:
    def test_writes_three_files(self, tmp_path, capsys):
        out = tmp_path / "g"
        assert main(["scenario", "--template", "grid", "--rows", "2", "--cols", "3",
                     "--out-dir", str(out)]) == 0
        printed = capsys.readouterr().out
        for name in ("network.geojson", "signs.geojson", "expected_rules.json"):
            assert (out / name).exists()
            assert name in printed

    def test_bad_grid_parameters(self, tmp_path, capsys):
        code = main(["scenario", "--template", "grid", "--rows", "1", "--cols", "1",
                     "--out-dir", str(tmp_path / "x")])
        assert code == 1
        assert "two nodes" in capsys.readouterr().err
