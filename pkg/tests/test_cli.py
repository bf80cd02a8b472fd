import json

import pytest

import cli
from dependence_core import config as core_config
from dependence_core.syntax import parse


@pytest.fixture(autouse=True)
def _reset_debug():
    yield
    core_config.DEBUG_MODE = False


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEval:
    @staticmethod
    def test_team(capsys, fixtures_dir):
        code, out, _ = run(capsys, "eval", "--semantics", "team", "--fragment", "d",
                           "--model", str(fixtures_dir / "boiling.sdm"), "D(p;q)")
        assert (code, out) == (0, "true\n")

    @staticmethod
    def test_team_fragment_inferred(capsys, fixtures_dir):
        code, out, _ = run(capsys, "eval", "--semantics", "team", "--model",
                           str(fixtures_dir / "sun_winter.sdm"), "I(p; ; q)")
        assert (code, out) == (0, "true\n")

    @staticmethod
    def test_kripke_world(capsys, fixtures_dir):
        model = str(fixtures_dir / "relativised.sdm")
        assert run(capsys, "eval", "--model", model, "--world", "3", "p -> D(q; r)")[:2] == (1, "false\n")
        assert run(capsys, "eval", "--model", model, "--world", "0", "p -> D(q; r)")[:2] == (0, "true\n")

    @staticmethod
    def test_kripke_global(capsys, fixtures_dir):
        model = str(fixtures_dir / "relativised.sdm")
        assert run(capsys, "eval", "--model", model, "D^{p}(q; r)")[0] == 0
        assert run(capsys, "eval", "--model", model, "p -> D(q; r)")[0] == 1

    @staticmethod
    def test_missing_model_file(capsys, tmp_path):
        code, out, err = run(capsys, "eval", "--model", str(tmp_path / "none.sdm"), "p")
        assert code == 3
        assert out == ""
        assert "❌ [CLI]" in err

    @staticmethod
    def test_bad_world(capsys, fixtures_dir):
        code, _, err = run(capsys, "eval", "--model", str(fixtures_dir / "boiling.sdm"), "--world", "5", "p")
        assert code == 3
        assert "out of range" in err


class TestScans:
    @staticmethod
    def test_invalid_with_countermodel(capsys):
        code, out, _ = run(capsys, "validity", "--fragment", "ld", "D(p;q)|D(p;q)")
        assert code == 1
        lines = out.splitlines()
        assert lines[0] == "invalid"
        assert lines[1].startswith("# world ")
        assert "sig p q" in lines

    @staticmethod
    def test_valid(capsys):
        assert run(capsys, "validity", "C p <-> C ~p")[:2] == (0, "valid\n")

    @staticmethod
    def test_team_validity(capsys):
        assert run(capsys, "validity", "--fragment", "d", "D(p;q)|D(p;q)")[:2] == (0, "valid\n")

    @staticmethod
    def test_sat_and_equiv(capsys):
        assert run(capsys, "sat", "p & ~p")[:2] == (1, "unsatisfiable\n")
        assert run(capsys, "sat", "~C p")[0] == 0
        assert run(capsys, "equiv", "C p", "[U]p | [U]~p")[:2] == (0, "equivalent\n")
        assert run(capsys, "equiv", "C p", "p")[0] == 1

    @staticmethod
    def test_guard_error(capsys):
        code, _, err = run(capsys, "validity", "p | q | r | s | t")
        assert code == 3
        assert "❌ [CLI]" in err

    @staticmethod
    def test_parallel(capsys):
        assert run(capsys, "--jobs", "2", "validity", "D(p;q)|D(p;q)") == run(capsys, "validity", "D(p;q)|D(p;q)")


class TestOtherCommands:
    @staticmethod
    def test_parse(capsys):
        assert run(capsys, "parse", "p&q|r")[:2] == (0, "((p & q) | r)\n")

    @staticmethod
    def test_fragment_violation(capsys):
        code, _, err = run(capsys, "parse", "--fragment", "d", "I(p;;q)")
        assert code == 3
        assert "fragment violation" in err

    @staticmethod
    def test_syntax_error(capsys):
        code, _, err = run(capsys, "parse", "p &")
        assert code == 3
        assert "syntax error" in err

    @staticmethod
    def test_translate(capsys):
        assert run(capsys, "translate", "--from", "lc", "--to", "lu", "C p")[:2] == (0, "([U]p | [U]~p)\n")
        code, _, err = run(capsys, "translate", "--from", "li", "--to", "d", "I(p;;q)")
        assert code == 3
        assert "no translation" in err

    @staticmethod
    def test_charform(capsys, fixtures_dir):
        code, out, _ = run(capsys, "charform", "--model", str(fixtures_dir / "negation.sdm"), "--sig", "p")
        assert code == 0
        assert parse(out.strip()) == parse("<u>~p & <u>p & [u](~p | p)")

    @staticmethod
    def test_check_proof(capsys, proofs_dir):
        assert run(capsys, "check-proof", str(proofs_dir / "ubox_5.prf"))[:2] == (0, "ok\n")
        assert run(capsys, "check-proof", "--audit", str(proofs_dir / "necc_macro.prf"))[:2] == (0, "ok\n")

    @staticmethod
    def test_binary_model(capsys, tmp_path):
        path = tmp_path / "bad.sdm"
        path.write_bytes(b"sig p\nw \xff\n")
        code, _, err = run(capsys, "eval", "--model", str(path), "p")
        assert code == 3
        assert "not UTF-8" in err

    @staticmethod
    def test_rejected_proof(capsys, tmp_path):
        path = tmp_path / "bad.prf"
        path.write_text("system AXC\n1: C p -> p    taut\n", encoding="utf-8")
        code, out, _ = run(capsys, "check-proof", str(path))
        assert code == 1
        assert out == "rejected at line 1: not a propositional tautology\n"

    @staticmethod
    def test_search(capsys):
        assert run(capsys, "search", "--inexpressible", "--target", "~C p", "--max-size", "4")[:2] == (0, "none\n")
        assert run(capsys, "search", "--inexpressible", "--target", "p & C p", "--max-size", "3")[:2] == (1, "p\n")

    @staticmethod
    def test_search_needs_flag(capsys):
        assert run(capsys, "search", "--target", "~C p")[0] == 2

    @staticmethod
    def test_sample(capsys):
        first = run(capsys, "--seed", "3", "sample", "--fragment", "li", "--count", "5")
        second = run(capsys, "--seed", "3", "sample", "--fragment", "li", "--count", "5")
        assert first == second
        assert len(first[1].splitlines()) == 5
        for line in first[1].splitlines():
            parse(line)


class TestUsage:
    @staticmethod
    def test_unknown_command(capsys):
        assert run(capsys, "bogus")[0] == 2

    @staticmethod
    def test_missing_argument(capsys):
        assert run(capsys, "eval", "p")[0] == 2

    @staticmethod
    def test_unknown_fragment(capsys):
        code, _, err = run(capsys, "parse", "--fragment", "xyz", "p")
        assert code == 2
        assert "unknown fragment" in err

    @staticmethod
    def test_help(capsys):
        assert run(capsys, "--help")[0] == 0

    @staticmethod
    def test_non_positive_sizes(capsys):
        assert run(capsys, "sample", "--fragment", "li", "--max-size", "0")[0] == 2
        assert run(capsys, "sample", "--fragment", "li", "--count", "-1")[0] == 2
        assert run(capsys, "--jobs", "0", "validity", "p")[0] == 2
        code, _, err = run(capsys, "search", "--inexpressible", "--target", "p", "--max-size", "x")
        assert code == 2
        assert "positive integer" in err

    @staticmethod
    @pytest.mark.parametrize("argv", [("sat", "--fragment", "d", "p"),
                                      ("equiv", "--fragment", "i", "p", "p")])
    def test_kripke_queries_reject_team_fragments(capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 3
        assert "team logic" in err


class TestJson:
    @staticmethod
    def test_valid(capsys):
        code, out, _ = run(capsys, "--json", "validity", "C p <-> C ~p")
        record = json.loads(out)
        assert code == 0
        assert record["verdict"] == "valid"
        assert record["witness"] is None
        assert "seconds" in record["timings"]

    @staticmethod
    def test_witness(capsys):
        code, out, _ = run(capsys, "--json", "validity", "D(p; q)")
        record = json.loads(out)
        assert code == 1
        assert record["verdict"] == "invalid"
        assert record["witness"] == {"signature": ["p", "q"], "worlds": [[], ["q"]], "world": 0}

    @staticmethod
    def test_debug_goes_to_stderr(capsys):
        code, out, err = run(capsys, "--debug", "--json", "sat", "~C p")
        assert code == 0
        assert json.loads(out)["verdict"] == "satisfiable"
        assert "[CLI]" in err
