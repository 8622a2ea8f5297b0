import json

import pytest

from tsl.cli import main
from tsl.forms import TernaryForm
from tsl.isometry import is_isometric


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBasicCommands:
    def test_rcount(self, capsys):
        code, out, _ = run_cli(capsys, "rcount", "[1,1,1,0,0,0]", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["n"] == 1 and payload["count"] == 6

    def test_rcount_solutions(self, capsys):
        code, out, _ = run_cli(capsys, "rcount", "[1,1,1,0,0,0]", "1", "--solutions")
        payload = json.loads(out)
        assert len(payload["solutions"]) == 6

    def test_theta(self, capsys):
        code, out, _ = run_cli(capsys, "theta", "[1,1,1,0,0,0]", "2")
        assert code == 0 and json.loads(out)["counts"] == [1, 6, 12]

    def test_ssr_pass(self, capsys):
        code, out, _ = run_cli(capsys, "ssr", "[2,5,5,0,0,0]", "--bound", "40")
        payload = json.loads(out)
        assert code == 0 and payload["passed"] and payload["ms"] == 5

    def test_ssr_fail_exit_code(self, capsys):
        code, out, _ = run_cli(capsys, "ssr", "[1,1,32,0,0,0]", "--bound", "60")
        payload = json.loads(out)
        assert code == 1 and not payload["passed"]
        assert payload["counterexample"]["lhs"] != payload["counterexample"]["rhs"]

    def test_ms(self, capsys):
        code, out, _ = run_cli(capsys, "ms", "[2,5,5,0,0,0]")
        assert code == 0 and json.loads(out)["ms"] == 5

    def test_watson(self, capsys):
        code, out, _ = run_cli(capsys, "watson", "[2,5,5,0,0,0]", "5")
        payload = json.loads(out)
        assert code == 0
        assert payload["steps"][0]["scale_factor"] == "1/5"
        emitted = TernaryForm.parse(payload["output"])
        assert is_isometric(emitted, TernaryForm(1, 1, 10, 0, 0, 0)) is not None

    def test_gamma(self, capsys):
        code, out, _ = run_cli(capsys, "gamma", "[1,2,4,2,1,0]", "2")
        payload = json.loads(out)
        assert code == 0
        assert TernaryForm.parse(payload["gamma1"]).content == 2

    def test_genus(self, capsys):
        code, out, _ = run_cli(capsys, "genus", "[1,4,9,4,0,0]")
        payload = json.loads(out)
        assert payload["class_number"] == 3 and payload["mass"] == "1/4"
        assert sorted(c["auto_order"] for c in payload["classes"]) == [8, 16, 16]

    def test_isometric_exit_codes(self, capsys):
        code, out, _ = run_cli(capsys, "isometric", "[1,1,10,0,0,0]", "[1,1,10,0,0,0]")
        assert code == 0 and json.loads(out)["isometric"]
        code, out, _ = run_cli(capsys, "isometric", "[1,1,32,0,0,0]", "[2,2,9,2,2,0]")
        assert code == 1 and not json.loads(out)["isometric"]

    def test_auto(self, capsys):
        code, out, _ = run_cli(capsys, "auto", "[1,1,1,0,0,0]")
        assert code == 0 and json.loads(out)["order"] == 48


class TestJsonRoundTrip:
    def test_emitted_forms_parse_back(self, capsys):
        code, out, _ = run_cli(capsys, "genus", "[1,2,4,2,1,0]")
        payload = json.loads(out)
        base = TernaryForm.parse(payload["form"])
        for cls in payload["classes"]:
            reparsed = TernaryForm.parse(cls["form"])
            assert reparsed.disc4 == base.disc4

    def test_isometry_map_is_witness(self, capsys):
        from tsl.forms import transform_gram2

        f = TernaryForm(1, 2, 4, 1, 1, 1)
        g = TernaryForm(1, 2, 4, 1, 1, 1)
        code, out, _ = run_cli(capsys, "isometric", str(f), str(g))
        payload = json.loads(out)
        U = tuple(tuple(r) for r in payload["map"])
        assert transform_gram2(f.gram2, U) == g.gram2


class TestErrorsAndModes:
    def test_parse_error_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, "rcount", "[1,1,1]", "2")
        assert code == 2

    def test_unknown_flag_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, "rcount", "[1,1,1,0,0,0]", "1", "--nope")
        assert code == 2

    def test_invalid_prime_diagnostic_on_stderr(self, capsys):
        code, out, err = run_cli(capsys, "gamma", "[1,1,1,0,0,0]", "4")
        assert code == 2 and "prime" in err and not out

    def test_text_mode(self, capsys):
        code, out, _ = run_cli(capsys, "theta", "[1,1,1,0,0,0]", "2", "--text")
        assert code == 0 and "counts" in out and "{" not in out

    def test_threads_env(self, capsys, monkeypatch):
        monkeypatch.setenv("TSL_THREADS", "2")
        code, out, _ = run_cli(capsys, "search", "--scale", "half",
                               "--block", "105|dL,11!|dL", "--bound", "40")
        payload = json.loads(out)
        assert code == 0 and payload["count"] == 4


class TestSearchCommand:
    def test_restricted_block(self, capsys):
        code, out, _ = run_cli(capsys, "search", "--scale", "half",
                               "--block", "105|dL,11∤dL", "--bound", "40")
        payload = json.loads(out)
        assert code == 0
        assert payload["count"] == 4 and payload["matched_against_dataset"]
        assert "certified up to" in payload["note"]
        for text in payload["passers"]:
            TernaryForm.parse(text)
