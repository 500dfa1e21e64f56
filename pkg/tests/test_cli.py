import json
import subprocess
import sys

import pytest

from fischer.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, verdict", [
    (["--family", "dyck", "--n", "2", "(()​)"], "true"),
    (["--family", "sgap", "--gaps", "pow2", "01110"], "false"),
    (["--family", "star", "--inner", "sgap:pow2", "1**1"], "false"),
    (["--family", "beta", "--digits", "fig3", "2210"], "true"),
    (["--family", "sft", "--alphabet", "01", "--forbidden", "11", "0101"], "true"),
])
def test_member(capsys, argv, verdict):
    code, out, _ = run(capsys, "member", *argv)
    assert code == 0 and out.strip() == verdict


def test_input_errors_exit_two(capsys, tmp_path):
    assert run(capsys, "member", "--family", "dyck", "(x")[0] == 2
    assert run(capsys, "member", "01")[0] == 2
    assert run(capsys, "member", "--family", "star", "01")[0] == 2
    bad = tmp_path / "bad.yaml"
    bad.write_text("family: dyck\nn: [1\n")
    assert run(capsys, "member", "--spec", str(bad), "()")[0] == 2
    assert run(capsys, "member", "--spec", str(tmp_path / "missing.yaml"), "()")[0] == 2
    assert run(capsys, "witness", "--family", "dyck")[0] == 2


def test_spec_file(capsys, tmp_path):
    doc = tmp_path / "s.yaml"
    doc.write_text("family: sgap\ngaps: pow2\n")
    assert run(capsys, "member", "--spec", str(doc), "0110")[1].strip() == "true"


def test_graph_beta_dot(capsys):
    code, out, _ = run(capsys, "graph", "--family", "beta", "--digits", "fig3", "--depth", "5")
    assert code == 0 and out.startswith("digraph")
    assert out.count("->") == 12
    assert '"beta:2" -> "beta:3" [label="0"]' in out


def test_graph_summary(capsys):
    code, out, _ = run(capsys, "graph", "--family", "dyck", "--depth", "2", "--format", "summary")
    assert json.loads(out)["edges"] == 14


def test_prime_scan_expectations(capsys):
    dyck = ["prime-scan", "--family", "dyck", "--n", "2", "--expect"]
    assert run(capsys, *dyck, "no-witness")[0] == 0
    assert run(capsys, *dyck, "witness")[0] == 1
    code, out, _ = run(capsys, "prime-scan", "--family", "product", "--left", "sgap:pow2",
                       "--right", "dyck:2", "--expect", "witness")
    assert code == 0
    doc = json.loads(out)
    assert doc["proximal"]["status"] == "WitnessFound"
    assert doc["manifest"]["command"] == "prime-scan"


def test_prime_scan_budget_exhaustion_is_not_an_error(capsys):
    code, out, _ = run(capsys, "prime-scan", "--family", "sft", "--alphabet", "01",
                       "--forbidden", "", "--explore-depth", "1", "--horizon", "6",
                       "--window", "1", "--min-disagreements", "1", "--budget", "1")
    assert code == 0
    assert json.loads(out)["proximal"]["status"] in ("Inconclusive", "NoWitnessUpToBound")


def test_witness_command(capsys):
    code, out, _ = run(capsys, "witness", "--family", "product", "--left", "sgap:pow2",
                       "--right", "dyck:2", "--e1", ")", "--e2", "]")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "WitnessFound"
    assert doc["pair"]["x"]["labels"][:4] == ["1)", "1]", "1)", "1]"]
    assert run(capsys, "witness", "--family", "product", "--left", "sgap:pow2",
               "--right", "dyck:2", "--e1", "x")[0] == 2


def test_ca_run(capsys):
    code, out, _ = run(capsys, "ca-run", "--family", "star", "--inner", "sgap:pow2",
                       "--steps", "5", "--width", "30", "--seed", "3")
    rows = out.splitlines()
    assert code == 0 and len(rows) == 6
    stars = [[i for i, c in enumerate(r.split("| ")[1]) if c == "*"] for r in rows]
    assert all(s == stars[0] for s in stars)


def test_sense_scan(capsys):
    code, out, _ = run(capsys, "sense-scan", "--family", "star", "--inner", "sgap:pow2",
                       "--directions", "0/1,1/1", "--max-word-len", "3",
                       "--expect", "all-refuted")
    assert code == 0
    assert json.loads(out)["directions"]["1/1"]["status"] == "all-candidates-refuted"
    code, _, _ = run(capsys, "sense-scan", "--family", "star", "--inner", "sgap:pow2",
                     "--code", "identity", "--directions", "0/1", "--max-word-len", "2",
                     "--expect", "all-refuted")
    assert code == 1
    assert run(capsys, "sense-scan", "--family", "golden", "--directions", "1/2/3")[0] == 2


def test_transport(capsys):
    code, out, _ = run(capsys, "transport", "--family", "dyck", "--n", "2", "--rays", "20")
    doc = json.loads(out)
    assert code == 0 and doc["holds"] and doc["rays_transported"] == 20


@pytest.mark.parametrize("argv", [
    ["graph", "--family", "sgap", "--depth", "6"],
    ["prime-scan", "--family", "beta"],
    ["ca-run", "--family", "golden", "--seed", "7"],
    ["sense-scan", "--family", "star", "--inner", "golden", "--max-word-len", "2"],
    ["transport", "--family", "sgap", "--rays", "10"],
])
def test_output_files_are_byte_identical(tmp_path, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(argv + ["-o", str(a)]) == 0
    assert main(argv + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes() and a.read_bytes()


def test_seed_changes_samples(tmp_path):
    outs = []
    for seed in ("1", "2"):
        p = tmp_path / seed
        main(["ca-run", "--family", "golden", "--seed", seed, "-o", str(p)])
        outs.append(p.read_bytes())
    assert outs[0] != outs[1]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "fischer", "member", "--family", "golden", "0110"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "false"
