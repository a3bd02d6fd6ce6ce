import json

import pytest

from b2sets.cli import main


def run(tmp_path, *argv):
    return main(list(argv))


def read(path):
    return json.loads(path.read_text())


class TestBuild:
    def test_w_family_file(self, tmp_path):
        out = tmp_path / "w.json"
        assert main(["build", "--kind", "W", "--k", "3", "--n", "10", "--out", str(out)]) == 0
        data = read(out)
        assert data["schema"] == "b2sets.setfamily/1"
        assert sum(len(p["elements"]) for p in data["parts"]) == 36

    def test_meyer_count(self, tmp_path):
        out = tmp_path / "m.json"
        assert main(["build", "--kind", "meyer", "--nmax", "9", "--out", str(out)]) == 0
        data = read(out)
        assert len(data["parts"][0]["elements"]) == 45

    def test_wcirc_warning_flag(self, tmp_path):
        out = tmp_path / "wc.json"
        assert main(["build", "--kind", "Wcirc", "--k", "3", "--n", "30", "--out", str(out)]) == 0
        assert read(out)["warnings"]

    def test_config_error_exit_2(self, tmp_path):
        assert main(["build", "--kind", "meyer"]) == 2  # missing --nmax
        assert main(["build", "--kind", "W", "--k", "3", "--n", "3"]) == 2  # empty

    def test_resource_cap_exit_3(self, tmp_path):
        assert (
            main(
                ["build", "--kind", "product", "--k", "5", "--n", "19",
                 "--element-cap", "10"]
            )
            == 3
        )


class TestAnalyze:
    @pytest.fixture()
    def wfile(self, tmp_path):
        out = tmp_path / "w.json"
        main(["build", "--kind", "W", "--k", "3", "--n", "10", "--out", str(out)])
        return out

    def test_b2circ_pass_exit_0(self, wfile, tmp_path):
        out = tmp_path / "r.json"
        code = main(["analyze", str(wfile), "--check", "b2circ", "--g", "2", "--out", str(out)])
        assert code == 0
        rep = read(out)
        assert rep["verdicts"][0]["pass"] is True

    def test_b2_fail_exit_1(self, tmp_path):
        out = tmp_path / "r.json"
        code = main(["analyze", "--values", "0,1,2,3", "--check", "b2", "--g", "1", "--out", str(out)])
        assert code == 1
        rep = read(out)
        assert rep["results"]["witness"]["value"] == "2"

    def test_census_anomaly_free(self, wfile, tmp_path):
        out = tmp_path / "r.json"
        assert main(["analyze", str(wfile), "--check", "census", "--mode", "sum", "--out", str(out)]) == 0
        rep = read(out)
        assert rep["results"]["census"]["anomalies"] == 0

    def test_energy(self, tmp_path):
        out = tmp_path / "r.json"
        assert main(["analyze", "--values", "0,1,2", "--check", "energy", "--out", str(out)]) == 0
        assert read(out)["results"]["energy"]["e_plus"] == 19

    def test_disjoint(self, wfile):
        assert main(["analyze", str(wfile), "--check", "disjoint"]) == 0

    def test_audit(self, wfile, tmp_path):
        out = tmp_path / "r.json"
        assert (
            main(
                ["analyze", str(wfile), "--check", "audit", "--audit-mode", "sample",
                 "--trials", "50", "--seed", "3", "--min-size", "4", "--out", str(out)]
            )
            == 0
        )
        assert read(out)["results"]["audit"]["subsets_examined"] == 50

    def test_profile_check(self, tmp_path):
        out = tmp_path / "r.json"
        assert main(["analyze", "--values", "0,1,2", "--check", "profile",
                     "--mode", "diff", "--out", str(out)]) == 0
        prof = read(out)["results"]["profile"]
        assert prof["max_count"] == 2
        assert prof["witnesses"][0]["value"] == "1"

    def test_json_format_stdout(self, capsys):
        assert main(["analyze", "--values", "1,2,5,11", "--check", "b2",
                     "--g", "1", "--format", "json"]) == 0
        out = capsys.readouterr().out
        assert json.loads(out)["verdicts"][0]["pass"] is True

    def test_missing_file_exit_2(self):
        assert main(["analyze", "nope.json", "--check", "b2"]) == 2


class TestCertifyDecompose:
    def test_certificate_pass(self, tmp_path):
        out = tmp_path / "w40.json"
        main(["build", "--kind", "W", "--k", "3", "--n", "40", "--out", str(out)])
        rep_path = tmp_path / "cert.json"
        code = main(["certify", str(out), "--g", "1", "--parts", "2", "--out", str(rep_path)])
        assert code == 0
        rep = read(rep_path)
        assert rep["results"]["lhs"] == 247
        assert rep["results"]["collision_value_count"] == 111

    def test_certificate_fail_exit_1(self, tmp_path):
        out = tmp_path / "w10.json"
        main(["build", "--kind", "W", "--k", "3", "--n", "10", "--out", str(out)])
        assert main(["certify", str(out), "--g", "1", "--parts", "2"]) == 1

    def test_decompose_minimum(self, tmp_path):
        values = ",".join(
            [str(5**i) for i in range(1, 9)] + [str(-(5**i)) for i in range(1, 9)]
        )
        out = tmp_path / "d.json"
        code = main(["decompose", "--values", values, "--g", "7", "--kind", "sum", "--out", str(out)])
        assert code == 0
        assert read(out)["results"]["minimum"] == 2

    def test_decompose_timeout_exit_4(self, tmp_path):
        values = ",".join(str(v) for v in range(14))
        code = main(["decompose", "--values", values, "--g", "1", "--kind", "sum",
                     "--max-parts", "2", "--budget", "5"])
        assert code == 4

    def test_decompose_greedy(self, tmp_path):
        out = tmp_path / "g.json"
        assert main(["decompose", "--values", "0,1,2,3", "--g", "1",
                     "--kind", "sum", "--greedy", "--out", str(out)]) == 0
        assert read(out)["results"]["greedy_parts"] == 2

    def test_certify_report_carries_sketch(self, tmp_path):
        w = tmp_path / "w.json"
        main(["build", "--kind", "W", "--k", "3", "--n", "40", "--out", str(w)])
        out = tmp_path / "c.json"
        main(["certify", str(w), "--g", "1", "--parts", "2", "--out", str(out)])
        sketch = read(out)["results"]["sketch"]
        assert "247" in sketch and "222" in sketch


class TestMeyerEmbed:
    def test_meyer_mean_in_band(self, tmp_path):
        out = tmp_path / "m.json"
        code = main(["meyer", "--nmax", "9", "--trials", "1000", "--seed", "7", "--out", str(out)])
        assert code == 0
        mean = read(out)["results"]["mean_ratio"]
        assert 0.20 <= mean["approx"] <= 0.30

    def test_embed(self, tmp_path):
        out = tmp_path / "e.json"
        assert main(["embed", "--values", "5,25,125", "--out", str(out)]) == 0
        assert read(out)["results"]["verification"] == "exhaustive"


class TestReproducibility:
    @pytest.mark.parametrize(
        "argv",
        [
            ["build", "--kind", "W", "--k", "3", "--n", "10"],
            ["build", "--kind", "meyer", "--nmax", "6"],
            ["meyer", "--nmax", "8", "--trials", "100", "--seed", "5"],
            ["analyze", "--values", "0,1,2,3", "--check", "energy"],
        ],
        ids=["build-W", "build-meyer", "meyer", "energy"],
    )
    def test_byte_identical_reruns(self, tmp_path, argv):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(argv + ["--out", str(a)])
        main(argv + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_seeded_audit_byte_identical(self, tmp_path):
        w = tmp_path / "w.json"
        main(["build", "--kind", "W", "--k", "3", "--n", "10", "--out", str(w)])
        argv = ["analyze", str(w), "--check", "audit", "--trials", "40", "--seed", "11"]
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(argv + ["--out", str(a)])
        main(argv + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()
