import json

import pytest

from multiring.cli import run_cli
from multiring.corpus import corpus_dir
from multiring.fileio import parse_structure


def path(name):
    return str(corpus_dir() / f"{name}.json")


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_real_reduced(capsys):
    code, out, _ = run(capsys, "check", path("q2"), "--profile", "real-reduced")
    assert code == 0 and "RR-iv" in out


def test_check_failure_exit_one(capsys):
    code, out, _ = run(capsys, "check", path("broken-assoc"), "--profile", "multiring")
    assert code == 1 and "MR-add-assoc             FAIL  (1, 1, w)" in out


def test_check_options(capsys):
    code, out, _ = run(capsys, "check", path("rs-of-q2"), "--profile", "rs", "--presentation", "DT")
    assert code == 0 and "DT10" in out
    code, _, _ = run(capsys, "check", path("ars-1pt"), "--profile", "ars", "--ax2", "as-written")
    assert code == 1
    code, _, err = run(capsys, "check", path("q2"), "--profile", "qt", "--ax2", "standard")
    assert code == 2 and "ars only" in err


def test_iso(capsys):
    code, out, _ = run(capsys, "iso", path("q2"), "--lhs", "1,1", "--rhs", "1,-1", "--mode", "strong")
    assert code == 1 and "disc mismatch" in out
    code, out, _ = run(capsys, "iso", path("q2"), "--lhs", "1,1,-1", "--rhs", "1,-1,1", "--witness")
    assert code == 0 and "via x=-1, y=-1, z=(1)" in out


def test_corpus_command(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0
    assert out.splitlines()[-1].endswith("expectations met")
    assert "MISMATCH" not in out


def test_construct_and_translate(capsys, tmp_path):
    target = tmp_path / "k.json"
    code, _, _ = run(capsys, "construct", "mquot", path("z5-ring"), "--s-set", "1,2,3,4", "-o", str(target))
    assert code == 0
    K = parse_structure(target.read_bytes())
    assert K.n == 2
    code, out, _ = run(capsys, "construct", "zsign", "--bound", "50")
    assert code == 0 and parse_structure(out).n == 3
    code, out, _ = run(capsys, "construct", "power", "2", path("q2"))
    assert parse_structure(out).n == 9
    code, out, _ = run(capsys, "construct", "q2")
    assert out == (corpus_dir() / "q2.json").read_text().replace('"q2"', '"Q2"')
    code, out, _ = run(capsys, "construct", "qred", path("q2pow2"))
    assert code == 0 and parse_structure(out).n == 9
    code, out, err = run(capsys, "construct", "gt", path("q2pow2"))
    assert code == 0 and "warning" in err and parse_structure(out).n == 9
    code, out, _ = run(capsys, "translate", path("ars-2pt"), "--to", "mr")
    assert code == 0 and json.loads(out)["kind"] == "multiring"


def test_translate_rejected(capsys):
    code, out, _ = run(capsys, "translate", path("k-krasner"), "--to", "ars")
    assert code == 1 and "rejected" in out and "RR-iv" in out


def test_sper_and_duality(capsys):
    code, out, _ = run(capsys, "sper", path("q2pow2"))
    assert code == 0 and out.startswith("2 signature(s)")
    code, out, _ = run(capsys, "duality", path("rs-of-q2"))
    assert code == 0 and "iso" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["check", "missing.json", "--profile", "qt"],
        ["check", "--profile", "qt"],
        ["construct", "power", "x", "q2.json"],
        ["construct", "zsign"],
        ["iso", "q2.json"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_parse_error_exit_two(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "multiring"}')
    code, _, err = run(capsys, "check", str(p), "--profile", "multiring")
    assert code == 2 and "missing key" in err


def test_output_is_deterministic(capsys):
    a = run(capsys, "check", path("k-krasner"), "--profile", "real-reduced")
    b = run(capsys, "check", path("k-krasner"), "--profile", "real-reduced")
    assert a == b


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run(
        [sys.executable, "-m", "multiring", "check", path("q2"), "--profile", "qt"],
        capture_output=True, text=True,
    )
    assert r.returncode == 0 and "QT5" in r.stdout
