import json
import subprocess
import sys

import pytest

from sbtlab.cli import main

PAL3 = "[5 4 3 2 1 6 11 10 9 8 7 12 17 16 15 14 13]"
PAL3_SHUFFLED = "[11 16 15 14 13 12 17 10 9 8 1 6 5 4 3 2 7]"


@pytest.fixture
def run(tmp_path, capsys):
    def _run(*argv):
        code = main([*argv, "--cache-dir", str(tmp_path / "cache")])
        out = capsys.readouterr()
        return code, out.out, out.err

    return _run


def as_json(out):
    return json.loads(out)


class TestAnalyze:
    def test_one_palisade(self, run):
        code, out, _ = run("analyze", "[5 4 3 2 1]", "--json")
        doc = as_json(out)
        assert code == 0
        assert doc["structure"]["is_palisade"] and doc["structure"]["phi"] == 1
        b = doc["bounds"]
        assert (b["bp_lower"], b["hurdle_lower"], b["palisade_distance"]) == (2, 3, 3)

    def test_identity(self, run):
        code, out, _ = run("analyze", "[1 2 3]", "--json")
        b = as_json(out)["bounds"]
        assert code == 0 and b["norm3"] == b["bp_lower"] == b["upper"] == 0

    def test_shuffled_palisade(self, run):
        code, out, _ = run("analyze", PAL3_SHUFFLED)
        assert code == 0
        assert "is_palisade   true  phi=3" in out

    def test_text_matches_json(self, run):
        _, text, _ = run("analyze", PAL3)
        _, js, _ = run("analyze", PAL3, "--json")
        doc = as_json(js)
        assert f"palisade_distance  {doc['bounds']['palisade_distance']}" in text
        assert doc["sigma_pi_inv"] in text

    def test_unsplit_tokens_and_file(self, run, tmp_path):
        f = tmp_path / "p.txt"
        f.write_text("[5 4 3 2 1]\n")
        a = run("analyze", "5", "4", "3", "2", "1", "--json")[1]
        b = run("analyze", f"@{f}", "--json")[1]
        assert as_json(a) == as_json(b)


class TestDistance:
    def test_table(self, run):
        code, out, _ = run("distance", "[5 4 3 2 1]", "--json")
        doc = as_json(out)
        assert code == 0 and doc["distance"] == 3 and len(doc["witness"]) == 3
        assert doc["method"] == "bfs-table"

    def test_ida(self, run):
        code, out, _ = run("distance", "[5 4 3 2 1 6 11 10 9 8 7]", "--json")
        doc = as_json(out)
        assert code == 0 and doc["distance"] == 6 and doc["method"] == "ida"

    def test_identity(self, run):
        code, out, _ = run("distance", "[1 2 3 4]")
        assert code == 0 and "distance     0" in out

    def test_methods_agree(self, run):
        a = as_json(run("distance", "[7 6 1 9 5 8 4 3 2]", "--method", "ida", "--json")[1])
        b = as_json(run("distance", "[7 6 1 9 5 8 4 3 2]", "--method", "table", "--json")[1])
        assert a["distance"] == b["distance"]


class TestVerify:
    @pytest.mark.parametrize("suite", ["example7", "lemma3-54", "lemma1"])
    def test_pass(self, run, suite):
        code, out, _ = run("verify", suite, "--json")
        assert code == 0 and as_json(out)["passed"]

    def test_td3(self, run):
        code, out, _ = run("verify", "td3", "--n", "8", "--json")
        doc = as_json(out)
        assert code == 0 and doc["details"]["max_distance"] == 4 == doc["details"]["expected"]

    def test_td3_text(self, run):
        code, out, _ = run("verify", "td3", "--n", "5")
        assert code == 0 and out.startswith("td3: PASS")

    def test_chain_small(self, run):
        code, out, _ = run("verify", "chain", "--max-size", "6", "--json")
        assert code == 0 and as_json(out)["details"]["states_checked"] == 1 + 1 + 2 + 6 + 24 + 120

    def test_seed_required_in_json(self, run):
        code, _, err = run("verify", "prop1", "--json")
        assert code == 2 and "--seed" in err

    def test_indeterminate(self, run):
        code, out, _ = run("verify", "lemma3-54", "--budget", "5", "--json")
        assert code == 3 and as_json(out)["status"] == "indeterminate"

    def test_long_running_gate(self, run):
        assert run("verify", "lemma3-86")[0] == 2
        assert run("verify", "lemma3-86", "--long-running")[0] == 2


class TestGenerate:
    def test_palisade(self, run):
        code, out, _ = run("generate", "palisade", "--phi", "3")
        assert code == 0 and out.strip() == PAL3

    def test_random_reproducible(self, run):
        a = run("generate", "random_cycles", "--n", "9", "--count", "3", "--seed", "4", "--json")[1]
        b = run("generate", "random_cycles", "--n", "9", "--count", "3", "--seed", "4", "--json")[1]
        assert a == b and as_json(a)["count"] == 3

    def test_random_needs_seed(self, run):
        assert run("generate", "random_cycles", "--n", "9", "--count", "3", "--json")[0] == 2

    def test_bad_parameters(self, run):
        assert run("generate", "diametral_mod3", "--n", "9")[0] == 2


class TestGraph:
    def test_dot_stdout(self, run):
        code, out, _ = run("graph", "[1 2 3]", "--dot", "-")
        assert code == 0 and out.startswith("digraph G {") and out.count("style=dashed") == 4

    def test_dot_file(self, run, tmp_path):
        target = tmp_path / "g.dot"
        assert run("graph", PAL3, "--dot", str(target))[0] == 0
        assert target.read_text().count("kappa 3") == 18

    def test_json(self, run):
        doc = as_json(run("graph", "[5 4 3 2 1]", "--json")[1])
        assert doc["bp_bound"] == 2 and doc["odd_cycles"] == 2


class TestRatio:
    def test_table(self, run):
        code, out, _ = run("ratio", "--max", "8")
        row4 = [line for line in out.splitlines() if line.split()[:1] == ["4"]][0]
        assert code == 0 and "11/8 = 1.375" in row4
        assert out.strip().endswith("minimum ratio 11/8 = 1.375")

    def test_json(self, run):
        doc = as_json(run("ratio", "--max", "12", "--json")[1])
        assert doc["min_ratio"] == "11/8" and len(doc["rows"]) == 12


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ("analyze", "[1 1 2]"),
        ("analyze", "[1 x]"),
        ("analyze", "[2 3"),
        ("analyze", "@/nonexistent/file"),
        ("distance", "[0 1]"),
        ("verify", "nope"),
        ("generate", "palisade"),
        ("ratio", "--max", "0"),
        ("distance", "[2 1]", "--budget", "-3"),
        ("distance", "[2 1]", "--threads", "0"),
        ("bogus",),
    ])
    def test_usage(self, run, argv):
        code, _, err = run(*argv)
        assert code == 2 and err

    def test_capacity(self, run):
        perm = "[" + " ".join(map(str, range(12, 0, -1))) + "]"
        assert run("distance", perm, "--method", "table")[0] == 4

    def test_budget(self, run):
        code, out, _ = run("distance", "[5 4 3 2 1 6 11 10 9 8 7]", "--budget", "2")
        assert code == 3 and "indeterminate" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "sbtlab", "ratio", "--max", "4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "minimum ratio 11/8" in res.stdout
