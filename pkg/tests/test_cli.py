import json

import pytest

from ramcount.cli import run_argv as run

pytestmark = pytest.mark.filterwarnings("ignore")


def run_json(argv):
    code, out = run(argv)
    assert code == 0, out
    return json.loads(out)


class TestCount:
    def test_four_simple_points_char3(self):
        payload = run_json(["count", "--p", "3", "--orders", "2,2,2,2"])
        assert payload["count"] == 1
        assert payload["class"] == "MID"

    def test_infinity(self):
        payload = run_json(["count", "--p", "inf", "--orders", "2,2,3,3"])
        assert payload["count"] == 2

    def test_p2_rejected(self):
        code, out = run(["count", "--p", "2", "--orders", "2,2,2,2"])
        assert code == 1
        assert "error" in out

    def test_parity_rejected(self):
        code, _ = run(["count", "--p", "5", "--orders", "2,2,2"])
        assert code == 1

    def test_low_char_unknown(self):
        payload = run_json(["count", "--p", "3", "--orders", "2,2,5,5"])
        assert payload["count"] == "unknown"

    def test_text_format(self):
        code, out = run(["count", "--p", "3", "--orders", "2,2,2,2",
                         "--format", "text"])
        assert code == 0 and "= 1" in out


class TestSchubert:
    def test_four_simple(self):
        payload = run_json(["schubert", "--d", "3", "--orders", "2,2,2,2"])
        assert payload["count"] == 2

    def test_expansion(self):
        payload = run_json(["schubert", "--d", "3", "--orders", "2,2,2,2",
                            "--expansion"])
        assert payload["expansion"] == {"2,2": 2}

    def test_codim_mismatch(self):
        code, _ = run(["schubert", "--d", "3", "--orders", "2,2"])
        assert code == 1


class TestSolve3:
    def test_high(self):
        payload = run_json(["solve3", "--p", "5", "--orders", "2,2,3"])
        assert payload["m"] == 0
        assert payload["count"] == 1
        assert payload["separable"] is True

    def test_char3_inseparable(self):
        payload = run_json(["solve3", "--p", "3", "--k", "2", "--orders", "2,2,3"])
        assert payload["count"] == 0
        assert payload["separable"] is False


class TestSearch:
    def test_explicit_points(self):
        payload = run_json(["search", "--p", "3", "--k", "2", "--orders",
                            "2,2,2,2", "--points", "00,inf,01,10"])
        assert payload["separable"] == 1
        assert payload["inseparable"] == 1

    def test_sampled_points_deterministic(self):
        a = run(["search", "--p", "5", "--k", "2", "--orders", "2,2,2,2",
                 "--seed", "11"])
        b = run(["search", "--p", "5", "--k", "2", "--orders", "2,2,2,2",
                 "--seed", "11"])
        assert a == b and a[0] == 0

    def test_budget_exit_code(self):
        code, out = run(["search", "--p", "5", "--k", "2", "--orders",
                         "2,2,2,2", "--points", "00,inf,01,02",
                         "--budget", "10"])
        assert code == 2

    def test_budget_env_var(self, monkeypatch):
        monkeypatch.setenv("RAMCOUNT_BUDGET", "10")
        code, _ = run(["search", "--p", "5", "--k", "2", "--orders",
                       "2,2,2,2", "--points", "00,inf,01,02"])
        assert code == 2
        monkeypatch.setenv("RAMCOUNT_BUDGET", "1000000")
        code, _ = run(["search", "--p", "5", "--k", "2", "--orders",
                       "2,2,2,2", "--points", "00,inf,01,02"])
        assert code == 0

    def test_mismatched_lengths(self):
        code, _ = run(["search", "--p", "5", "--orders", "2,2,2,2",
                       "--points", "0,1"])
        assert code == 1


class TestFamilyTransform:
    def test_family_and_transform(self, tmp_path):
        out_path = tmp_path / "family.json"
        payload = run_json(["family", "--p", "3", "--k", "2",
                            "--f", "0,1,0,0,0,1", "--g", "1",
                            "--out", str(out_path)])
        assert payload["members"] == 9
        assert payload["distinct_pencils"] == 9
        assert payload["ramification"]["inf"] == 5
        assert out_path.exists()

        # the written family is not an inseparable-limit family, so a raw
        # transform step must fail cleanly
        code, out = run(["transform", "--family", str(out_path)])
        assert code == 1

    def test_transform_analyze(self, tmp_path):
        fam_payload = {
            "schema": 1, "p": 3, "k": 1,
            "F": "[(0),(0),(0,1),(1)]",       # x^3 + t x^2
            "G": "[(2,1),(0,1)]",             # t x + (t - 1)
            "sections": [
                {"num": "0", "order": 2},
                {"point": "inf", "order": 2},
                {"num": "1", "order": 2},
                {"num": "2,1", "order": 2},
            ],
        }
        path = tmp_path / "fam.json"
        path.write_text(json.dumps(fam_payload))
        payload = run_json(["transform", "--family", str(path), "--analyze"])
        assert payload["iterations"] >= 1
        assert payload["hypotheses_ok"] is False

    def test_missing_file(self):
        code, _ = run(["transform", "--family", "/nonexistent.json"])
        assert code == 1


class TestTable:
    def test_csv_shape_and_values(self):
        code, out = run(["table", "--p", "3,5,inf", "--d", "4", "--n-max", "4"])
        assert code == 0
        lines = out.strip().split("\n")
        header = lines[0].split(",")
        assert header == ["schema", "orders", "n", "d", "p", "class", "count",
                          "closed4", "schubert", "match", "reason"]
        rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
        lookup = {(r["orders"], r["p"]): r for r in rows}
        r = lookup[("2 2 2 2", "5")]
        assert r["count"] == "2" and r["closed4"] == "2" and r["match"] == "true"
        r = lookup[("2 2 2 2", "inf")]
        assert r["count"] == "2" and r["schubert"] == "2" and r["match"] == "true"
        r = lookup[("2 2 3 3", "inf")]
        assert r["count"] == "2" and r["schubert"] == "2" and r["match"] == "true"
        r = lookup[("2 2 3", "3")]
        assert r["count"] == "0" and r["reason"] == "wild excluded"
        r = lookup[("1 1 4 4", "3")]  # tame low range: no formula applies
        assert r["count"] == "unknown" and r["class"] == "LOW"

    def test_deterministic(self):
        a = run(["table", "--p", "3,5,7", "--d", "4"])
        b = run(["table", "--p", "3,5,7", "--d", "4"])
        assert a == b

    def test_json_format(self):
        code, out = run(["table", "--p", "3", "--d", "3", "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == 1 and payload["rows"]

    def test_no_cross_check_failures(self):
        # every populated closed-form / Schubert column must agree
        code, out = run(["table", "--p", "3,5,7,11,13,inf", "--d", "8",
                         "--n-max", "5", "--format", "json"])
        assert code == 0
        rows = json.loads(out)["rows"]
        assert len(rows) > 400
        assert all(r["match"] != "false" for r in rows)
        assert any(r["match"] == "true" for r in rows)
