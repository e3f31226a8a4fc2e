"""Command-line contract: formats, exit codes, determinism."""

import json
import random

import pytest

from nilstab.cli import main
from nilstab.group import element_to_text, parse_element
from nilstab.verify import random_group_element


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_witt_csv(capsys):
    code, out, _ = run(capsys, "witt", "-r", "2", "-n", "4", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,n,rank"
    assert "2,1,2" in lines and "2,2,1" in lines and "2,3,2" in lines and "2,4,3" in lines


def test_witt_text_rows(capsys):
    code, out, _ = run(capsys, "witt", "-r", "2", "-n", "4")
    assert code == 0
    assert "r=2: 2 1 2 3" in out
    code, out, _ = run(capsys, "witt", "-r", "1", "-n", "3")
    assert code == 0
    assert "r=1: 1 0 0" in out


def test_witt_rejects_bad_bounds(capsys):
    code, _, err = run(capsys, "witt", "-r", "0", "-n", "3")
    assert code == 2
    assert "error" in err


def test_lyndon_listing(capsys):
    code, out, _ = run(capsys, "lyndon", "-r", "2", "-n", "4")
    assert code == 0
    assert out.split() == ["aaab", "aabb", "abbb"]
    code, out, _ = run(capsys, "lyndon", "-r", "2", "-n", "3", "--format", "json")
    assert json.loads(out) == ["aab", "abb"]


def test_mul_heisenberg(capsys):
    code, out, _ = run(capsys, "mul", "-r", "2", "-c", "2", "b", "a")
    assert code == 0
    assert out.strip() == "a * b * [ab]^-1"


def test_mul_with_oracle(capsys):
    code, out, _ = run(capsys, "mul", "-r", "2", "-c", "2", "--oracle", "b", "a")
    assert code == 0
    assert out.strip() == "a * b * [ab]^-1"


def test_inv_and_comm(capsys):
    code, out, _ = run(capsys, "inv", "-r", "2", "-c", "2", "a")
    assert code == 0 and out.strip() == "a^-1"
    code, out, _ = run(capsys, "comm", "-r", "2", "-c", "2", "a", "b")
    assert code == 0 and out.strip() == "[ab]"


def test_element_json_format(capsys):
    code, out, _ = run(capsys, "comm", "-r", "2", "-c", "2", "--format", "json", "a", "b")
    assert code == 0
    assert json.loads(out) == {"class": 2, "exponents": [["ab", 1]], "rank": 2}


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "mul", "-r", "2", "-c", "2", "a *", "b")
    assert code == 2
    assert "error" in err


def test_element_round_trip_through_cli_syntax():
    rng = random.Random(71)
    for _ in range(10):
        g = random_group_element(rng, 3, 3)
        assert parse_element(element_to_text(g), 3, 3) == g


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "-r", "2", "-c", "2", "--seed", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)


def test_verify_usage_error(capsys):
    code, _, err = run(capsys, "verify", "-r", "0", "-c", "1")
    assert code == 2
    assert "rank" in err


def test_class_bound_guard_and_env(capsys, monkeypatch):
    code, _, err = run(capsys, "verify", "-r", "2", "-c", "7")
    assert code == 2 and "class" in err
    monkeypatch.setenv("NILSTAB_MAX_CLASS", "7")
    code, out, _ = run(capsys, "lyndon", "-r", "2", "-n", "2")
    assert code == 0  # env var parsed without complaint
    code, _, err = run(capsys, "mul", "-r", "2", "-c", "7", "1", "1")
    assert code == 0
    monkeypatch.delenv("NILSTAB_MAX_CLASS")
    code, _, err = run(capsys, "mul", "-r", "2", "-c", "7", "1", "1")
    assert code == 2


def test_unsafe_bounds_flag(capsys):
    code, out, _ = run(capsys, "mul", "-r", "2", "-c", "7", "--unsafe-bounds", "a", "b")
    assert code == 0
    assert out.strip() == "a * b"


def test_scan_json_deterministic(capsys):
    code1, out1, _ = run(capsys, "scan", "--spec", "std", "-c", "1", "-r", "1..4", "--format", "json")
    code2, out2, _ = run(capsys, "scan", "--spec", "std", "-c", "1", "-r", "1..4", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    rows = json.loads(out1)
    assert [row["invariant_factors"] for row in rows] == [[2], [], [], []]


def test_scan_text_and_exit_codes(capsys):
    code, out, _ = run(capsys, "scan", "--spec", "const", "-c", "3", "-r", "1..3")
    assert code == 0
    assert "stabilized from r = 1" in out
    # a single failing pair cannot stabilize
    code, out, _ = run(capsys, "scan", "--spec", "std", "-c", "1", "-r", "1..2")
    assert code == 1
    code, out, _ = run(
        capsys, "scan", "--spec", "std", "-c", "1", "-r", "1..2", "--allow-unstable"
    )
    assert code == 0


def test_scan_bad_spec(capsys):
    code, _, err = run(capsys, "scan", "--spec", "frob(std)", "-c", "1", "-r", "1..3")
    assert code == 2
    assert "module spec" in err


def test_snf_json(capsys):
    code, out, _ = run(capsys, "snf", "[[2, 0], [0, 3]]", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["invariant_factors"] == [1, 6]
    code, out, _ = run(capsys, "snf", "[[-2]]")
    assert code == 0
    assert "[2]" in out


def test_aut_lift_round_trip(capsys):
    endo = {
        "rank": 2,
        "class": 1,
        "images": [
            {"rank": 2, "class": 1, "exponents": [["b", 1]]},
            {"rank": 2, "class": 1, "exponents": [["a", 1]]},
        ],
    }
    code, out, _ = run(capsys, "aut-lift", json.dumps(endo), "--to-class", "3")
    assert code == 0
    lifted = json.loads(out)
    assert lifted["class"] == 3
    assert lifted["images"][0]["exponents"] == [["b", 1]]


def test_aut_lift_text_images(capsys):
    code, out, _ = run(
        capsys, "aut-lift", "--images", "b", "a * [ab]", "-r", "2", "-c", "2", "--to-class", "3"
    )
    assert code == 0
    lifted = json.loads(out)
    assert lifted["class"] == 3
    assert lifted["images"][1]["exponents"] == [["a", 1], ["ab", 1]]
    code, _, err = run(capsys, "aut-lift", "--images", "b", "-r", "2", "-c", "2")
    assert code == 2  # one image per generator


def test_aut_lift_rejects_non_automorphism(capsys):
    endo = {
        "rank": 2,
        "class": 1,
        "images": [
            {"rank": 2, "class": 1, "exponents": [["a", 2]]},
            {"rank": 2, "class": 1, "exponents": [["b", 1]]},
        ],
    }
    code, _, err = run(capsys, "aut-lift", json.dumps(endo))
    assert code == 1
    assert "not an automorphism" in err


def test_kernel_iso(capsys):
    code, out, _ = run(capsys, "kernel-iso", "-r", "2", "-c", "2", "--seed", "3")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.strip().splitlines())


def test_kernel_iso_needs_class_two(capsys):
    code, _, err = run(capsys, "kernel-iso", "-r", "2", "-c", "1")
    assert code == 2


def test_verify_deterministic_output(capsys):
    _, out1, _ = run(capsys, "verify", "-r", "2", "-c", "2", "--seed", "9")
    _, out2, _ = run(capsys, "verify", "-r", "2", "-c", "2", "--seed", "9")
    assert out1 == out2
