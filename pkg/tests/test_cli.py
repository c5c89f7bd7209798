"""Command-line interface: outputs, exit codes, config merging, determinism."""

import json
import math

from topoperiod.cli import main


def _run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = int(exc.code)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _wrote(out):
    return [
        line.removeprefix("wrote ")
        for line in out.splitlines()
        if line.startswith("wrote ")
    ]


class TestGenerate:
    def test_default_outputs(self, tmp_path, capsys):
        code, out, err = _run(
            capsys,
            "generate",
            "--family", "sine",
            "--domain-length", "5",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        assert err == ""
        names = sorted(p.rsplit("/", 1)[-1] for p in _wrote(out))
        assert names == ["series.csv", "series.json", "series.svg"]
        text = (tmp_path / "series.csv").read_text(encoding="utf-8")
        lines = text.splitlines()
        assert lines[0] == "index,value"
        assert lines[1] == "0,0.0"
        assert len(lines) == 52  # header + 51 samples
        assert "\r" not in text

    def test_json_payload(self, tmp_path, capsys):
        code, out, _ = _run(
            capsys,
            "generate",
            "--family", "sine",
            "--domain-length", "2",
            "--formats", "json",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        payload = json.loads((tmp_path / "series.json").read_text(encoding="utf-8"))
        assert payload["step"] == 0.1
        assert len(payload["values"]) == 21

    def test_byte_identical_reruns(self, tmp_path, capsys):
        for sub in ("a", "b"):
            code, _, _ = _run(
                capsys,
                "generate",
                "--family", "sine",
                "--domain-length", "5",
                "--noise", "2",
                "--outdir", str(tmp_path / sub),
            )
            assert code == 0
        for name in ("series.csv", "series.json", "series.svg"):
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()

    def test_requires_family_not_input(self, tmp_path, capsys):
        code, _, err = _run(
            capsys, "generate", "--input", "x.csv", "--outdir", str(tmp_path)
        )
        assert code == 2


class TestEmbed:
    def test_embed_generated(self, tmp_path, capsys):
        code, out, _ = _run(
            capsys,
            "embed",
            "--family", "sine",
            "--domain-length", "5",
            "--n", "2",
            "--d", "5",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        lines = (tmp_path / "cloud.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "time_index,c0,c1,c2"
        assert len(lines) == 1 + (51 - 10)
        assert lines[1].startswith("10,")

    def test_embed_from_csv_input(self, tmp_path, capsys):
        src = tmp_path / "in.csv"
        src.write_text(
            "\n".join(str(0.1 * i) for i in range(30)) + "\n", encoding="utf-8"
        )
        code, _, _ = _run(
            capsys,
            "embed",
            "--input", str(src),
            "--n", "1",
            "--d", "2",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        lines = (tmp_path / "cloud.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "time_index,c0,c1"
        assert len(lines) == 29

    def test_dim_flag(self, tmp_path, capsys):
        code, _, _ = _run(
            capsys,
            "embed",
            "--family", "sine",
            "--domain-length", "5",
            "--dim", "4",
            "--d", "3",
            "--formats", "csv",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        header = (
            (tmp_path / "cloud.csv").read_text(encoding="utf-8").splitlines()[0]
        )
        assert header == "time_index,c0,c1,c2,c3"

    def test_dim_conflicts_with_n(self, tmp_path, capsys):
        code, _, err = _run(
            capsys,
            "embed",
            "--family", "sine",
            "--dim", "4",
            "--n", "2",
            "--outdir", str(tmp_path),
        )
        assert code == 2
        assert "dim" in err

    def test_svg_not_supported(self, tmp_path, capsys):
        code, _, err = _run(
            capsys,
            "embed",
            "--family", "sine",
            "--formats", "svg",
            "--outdir", str(tmp_path),
        )
        assert code == 2
        assert "svg" in err and "embed" in err


class TestPersist:
    def test_diagram_outputs(self, tmp_path, capsys):
        code, out, _ = _run(
            capsys,
            "persist",
            "--family", "sine",
            "--domain-length", "10",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        lines = (tmp_path / "diagram.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "dim,birth,death"
        assert any(line.startswith("1,") for line in lines[1:])
        assert any(line.endswith(",inf") for line in lines[1:])
        payload = json.loads((tmp_path / "diagram.json").read_text(encoding="utf-8"))
        assert payload["units"] == "filtration values in the series' value units"

    def test_explicit_cap(self, tmp_path, capsys):
        code, _, _ = _run(
            capsys,
            "persist",
            "--family", "sine",
            "--domain-length", "10",
            "--cap", "0.5",
            "--formats", "json",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        payload = json.loads((tmp_path / "diagram.json").read_text(encoding="utf-8"))
        assert payload["cap"] == 0.5

    def test_bad_cap(self, tmp_path, capsys):
        code, _, err = _run(
            capsys,
            "persist",
            "--family", "sine",
            "--cap", "-2",
            "--outdir", str(tmp_path),
        )
        assert code == 2
        assert "cap" in err


class TestPeriod:
    def test_outputs(self, tmp_path, capsys):
        code, out, _ = _run(
            capsys,
            "period",
            "--family", "sine",
            "--domain-length", "30",
            "--stride", "20",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        names = sorted(p.rsplit("/", 1)[-1] for p in _wrote(out))
        assert names == ["period.csv", "period.json", "period.svg"]
        lines = (tmp_path / "period.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "index,score,period_mean,period_std"
        payload = json.loads((tmp_path / "period.json").read_text(encoding="utf-8"))
        assert payload["units"] == "periods in sample counts"

    def test_window_validation_exit_2(self, tmp_path, capsys):
        code, _, err = _run(
            capsys,
            "period",
            "--family", "sine",
            "--window", "5",
            "--outdir", str(tmp_path),
        )
        assert code == 2
        assert "window" in err

    def test_missing_input_file_exit_3(self, tmp_path, capsys):
        code, _, err = _run(
            capsys,
            "period",
            "--input", str(tmp_path / "absent.csv"),
            "--outdir", str(tmp_path),
        )
        assert code == 3
        assert err.startswith("error:")


class TestCompare:
    def test_outputs(self, tmp_path, capsys):
        code, out, _ = _run(
            capsys,
            "compare",
            "--family", "sine",
            "--domain-length", "30",
            "--stride", "20",
            "--baseline-window", "40",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        names = sorted(p.rsplit("/", 1)[-1] for p in _wrote(out))
        assert names == [
            "baseline_summary.csv",
            "compare.csv",
            "compare.json",
            "compare.svg",
        ]
        lines = (tmp_path / "compare.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "index,score,tda_period_mean,tda_period_std,baseline_period"
        summary_lines = (
            (tmp_path / "baseline_summary.csv").read_text(encoding="utf-8").splitlines()
        )
        assert summary_lines[0] == "length,obs,mean,sd,min,max"
        assert summary_lines[1].split(",")[1] == str(301 - 40 + 1)


class TestSweeps:
    def test_sweep_dim(self, tmp_path, capsys):
        code, out, _ = _run(
            capsys,
            "sweep-dim",
            "--family", "sine",
            "--domain-length", "15",
            "--dims", "2,3,200",
            "--d", "5",
            "--formats", "csv",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        lines = (tmp_path / "sweep_dim.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "dim,len1,len2,len3"
        assert lines[1].startswith("2,")
        assert lines[3] == "200,,,"  # infeasible dimension: empty fields

    def test_sweep_noise(self, tmp_path, capsys):
        code, out, _ = _run(
            capsys,
            "sweep-noise",
            "--family", "sine",
            "--domain-length", "15",
            "--levels", "0,1",
            "--reps", "2",
            "--formats", "csv,json",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        lines = (tmp_path / "sweep_noise.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "level,l1_mean,l2_mean"
        assert len(lines) == 3
        payload = json.loads(
            (tmp_path / "sweep_noise.json").read_text(encoding="utf-8")
        )
        assert [row["level"] for row in payload["rows"]] == [0.0, 1.0]

    def test_sweep_noise_rejects_input(self, tmp_path, capsys):
        code, _, err = _run(
            capsys,
            "sweep-noise",
            "--input", "x.csv",
            "--outdir", str(tmp_path),
        )
        assert code == 2


class TestConfigMerge:
    def test_config_file_applies(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps({"family": "sine", "domain_length": 3.0}), encoding="utf-8"
        )
        code, _, _ = _run(
            capsys,
            "generate",
            "--config", str(cfg),
            "--formats", "csv",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        lines = (tmp_path / "series.csv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 32  # header + 31 samples

    def test_flags_override_config(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps({"family": "sine", "domain_length": 3.0}), encoding="utf-8"
        )
        code, _, _ = _run(
            capsys,
            "generate",
            "--config", str(cfg),
            "--domain-length", "1",
            "--formats", "csv",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        lines = (tmp_path / "series.csv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 12

    def test_unknown_config_key(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"familly": "sine"}), encoding="utf-8")
        code, _, err = _run(
            capsys, "generate", "--config", str(cfg), "--outdir", str(tmp_path)
        )
        assert code == 2
        assert "familly" in err

    def test_config_invalid_json(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{not json", encoding="utf-8")
        code, _, err = _run(
            capsys, "generate", "--config", str(cfg), "--outdir", str(tmp_path)
        )
        assert code == 2
        assert "config" in err

    def test_config_missing_file(self, tmp_path, capsys):
        code, _, err = _run(
            capsys,
            "generate",
            "--config", str(tmp_path / "none.json"),
            "--outdir", str(tmp_path),
        )
        assert code == 2


class TestInputColumn:
    def test_named_column(self, tmp_path, capsys):
        src = tmp_path / "in.csv"
        rows = ["t,temp"] + [f"{i},{0.5 * i}" for i in range(25)]
        src.write_text("\n".join(rows) + "\n", encoding="utf-8")
        code, _, _ = _run(
            capsys,
            "embed",
            "--input", str(src),
            "--column", "temp",
            "--n", "1",
            "--d", "1",
            "--formats", "csv",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        lines = (tmp_path / "cloud.csv").read_text(encoding="utf-8").splitlines()
        assert lines[1] == "1,0.0,0.5"

    def test_default_column_round_trips_generate_output(self, tmp_path, capsys):
        # generate writes index,value; consumers must pick up value, not index
        code, _, _ = _run(
            capsys,
            "generate",
            "--family", "sine",
            "--domain-length", "5",
            "--formats", "csv",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        code, _, _ = _run(
            capsys,
            "embed",
            "--input", str(tmp_path / "series.csv"),
            "--n", "1",
            "--d", "1",
            "--formats", "csv",
            "--outdir", str(tmp_path),
        )
        assert code == 0
        lines = (tmp_path / "cloud.csv").read_text(encoding="utf-8").splitlines()
        # second coordinate is f_1; the index column would give 1.0 here
        second = float(lines[1].split(",")[2])
        assert second == math.sin(0.1)

    def test_bad_column_exit_3(self, tmp_path, capsys):
        src = tmp_path / "in.csv"
        src.write_text("a,b\n1,2\n", encoding="utf-8")
        code, _, err = _run(
            capsys,
            "embed",
            "--input", str(src),
            "--column", "missing",
            "--outdir", str(tmp_path),
        )
        assert code == 3
        assert "missing" in err
