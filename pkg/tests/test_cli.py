import json
from fractions import Fraction

import pytest

import statcover.cli as cli
from statcover.cli import main, parse_group, parse_set_file


def write_set(tmp_path, name, group, elements):
    path = tmp_path / name
    path.write_text(json.dumps({"group": group, "elements": elements}), encoding="utf-8")
    return str(path)


def strip_timings(payload):
    out = dict(payload)
    out.pop("timings", None)
    return out


class TestGroupGrammar:
    def test_power_form(self):
        assert parse_group("2^5").moduli == (2,) * 5

    def test_product_form(self):
        assert parse_group("2x2x4").moduli == (2, 2, 4)

    def test_single_modulus(self):
        assert parse_group("12").moduli == (12,)

    def test_garbage_rejected(self):
        with pytest.raises(cli.SetFileError):
            parse_group("2^x")


class TestSetFiles:
    def test_roundtrip(self, tmp_path):
        path = write_set(tmp_path, "a.json", [2, 2], [[0, 1], [1, 0]])
        spec, A = parse_set_file(path)
        assert spec.moduli == (2, 2)
        assert sorted(e.coords for e in A) == [(0, 1), (1, 0)]

    def test_out_of_range_coordinate(self, tmp_path):
        path = write_set(tmp_path, "bad.json", [2], [[4]])
        with pytest.raises(cli.SetFileError, match="out of range"):
            parse_set_file(path)

    def test_duplicate_elements(self, tmp_path):
        path = write_set(tmp_path, "dup.json", [2, 2], [[0, 1], [0, 1]])
        with pytest.raises(cli.SetFileError, match="duplicates"):
            parse_set_file(path)

    def test_json_syntax_diagnostics(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"group": [2], "elements": [[0]', encoding="utf-8")
        with pytest.raises(cli.SetFileError, match="line"):
            parse_set_file(str(path))

    def test_cli_exit_code_for_bad_input(self, tmp_path, capsys):
        path = write_set(tmp_path, "bad.json", [2], [[4]])
        assert main(["cover", "--input", path, "--delta", "1/2"]) == 2
        assert "out of range" in capsys.readouterr().err


class TestGen:
    def test_deterministic_output(self, tmp_path):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        for out in (out1, out2):
            assert (
                main(
                    [
                        "gen",
                        "--group",
                        "2x2x2",
                        "--kind",
                        "random",
                        "--size",
                        "4",
                        "--seed",
                        "7",
                        "--output",
                        str(out),
                    ]
                )
                == 0
            )
        assert out1.read_bytes() == out2.read_bytes()

    def test_generated_file_parses(self, tmp_path):
        out = tmp_path / "g.json"
        main(["gen", "--group", "3^3", "--kind", "independent", "--output", str(out)])
        spec, A = parse_set_file(out)
        assert len(A) == 4


class TestCover:
    def test_frozen_z7_example(self, tmp_path, capsys):
        path = write_set(tmp_path, "z7.json", [7], [[0], [1], [2]])
        code = main(["cover", "--input", path, "--delta", "1/2"])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["results"]["X"]["elements"] == [[0], [2]]
        assert payload["results"]["K"] == {"num": 5, "den": 3}
        assert all(c["holds"] for c in payload["checks"])

    def test_rational_flag_is_exact(self, tmp_path, capsys):
        path = write_set(tmp_path, "z7.json", [7], [[0], [1], [2]])
        main(["cover", "--input", path, "--delta", "1/3"])
        payload = json.loads(capsys.readouterr().out)
        assert payload["delta"] == {"num": 1, "den": 3}

    def test_report_determinism_modulo_timings(self, tmp_path):
        path = write_set(tmp_path, "z7.json", [7], [[0], [1], [2]])
        outs = []
        for name in ("r1.json", "r2.json"):
            out = tmp_path / name
            main(["cover", "--input", path, "--delta", "1/2", "--output", str(out)])
            outs.append(strip_timings(json.loads(out.read_text())))
        assert json.dumps(outs[0], sort_keys=True) == json.dumps(outs[1], sort_keys=True)

    def test_csv_sweep_schema(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(
            [
                "cover",
                "--group",
                "2^4",
                "--delta",
                "1/2",
                "--count",
                "3",
                "--seed",
                "5",
                "--format",
                "csv",
                "--output",
                str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "family,seed,K_num,K_den,delta,X_size,bound_num,bound_den,holds"
        assert len(lines) == 1 + 3 * 4  # four families
        for row in lines[1:]:
            fields = row.split(",")
            assert fields[0] in ("random", "independent", "subgroup", "coset_union")
            assert fields[-1] == "true"
            K = Fraction(int(fields[2]), int(fields[3]))
            bound = Fraction(int(fields[6]), int(fields[7]))
            assert Fraction(int(fields[5])) <= bound

    def test_failed_check_forces_exit_3(self, tmp_path, monkeypatch):
        path = write_set(tmp_path, "z7.json", [7], [[0], [1], [2]])
        monkeypatch.setattr(cli, "verify_covered", lambda *a, **k: (False, Fraction(0)))
        out = tmp_path / "r.json"
        assert (
            main(["cover", "--input", path, "--delta", "1/2", "--output", str(out)]) == 3
        )


class TestOtherCommands:
    def test_chang_report(self, tmp_path, capsys):
        path = write_set(tmp_path, "z4.json", [4], [[0], [1]])
        code = main(["chang", "--input", path, "--kappa", "1", "--eta", "1"])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["results"]["energies"][0] == {"num": 2, "den": 1}
        assert all(c["holds"] for c in payload["checks"])

    def test_spectrum_report(self, tmp_path, capsys):
        path = write_set(tmp_path, "v.json", [2, 2], [[0, 0], [0, 1]])
        code = main(["spectrum", "--input", path, "--epsilon", "1/2"])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["results"]["spectrum_characters"] == [0, 2]
        assert payload["results"]["annihilator"]["elements"] == [[0, 0], [0, 1]]

    def test_pipeline_report(self, tmp_path, capsys):
        path = write_set(tmp_path, "sub.json", [2, 4], [[0, 0], [0, 2]])
        code = main(["pipeline", "--input", path])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["results"]["ratio"] == {"num": 1, "den": 1}
        assert all(c["holds"] for c in payload["checks"])

    def test_verify_lemmas_small(self, tmp_path):
        out = tmp_path / "vl.json"
        code = main(
            [
                "verify-lemmas",
                "--group",
                "2^3",
                "--seed",
                "1",
                "--trials",
                "4",
                "--output",
                str(out),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert all(s["ok"] for s in payload["suites"])
        names = {s["name"] for s in payload["suites"]}
        assert "statistical-covering" in names and "pipeline-driver" in names
