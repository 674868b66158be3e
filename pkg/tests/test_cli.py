import json

import pytest
from click.testing import CliRunner

from pseudospace.cli import cli

SCRIPT = json.dumps(
    {
        "n": 2,
        "ops": [
            {"letter": "[0,2]", "lo": "bottom", "hi": "top"},
            {"letter": "[1]", "lo": 0, "hi": 2},
        ],
    }
)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def space_file(tmp_path):
    script = tmp_path / "script.json"
    script.write_text(SCRIPT)
    return str(script)


def run(runner, *args, **kw):
    result = runner.invoke(cli, args, standalone_mode=False, **kw)
    if result.exception is not None:
        raise result.exception
    return result.output.strip()


def test_reduce(runner):
    assert run(runner, "reduce", "--n", "3", "[0].[2,3].[0,1]") == "[2,3].[0,1]"


def test_nf(runner):
    assert run(runner, "nf", "--n", "3", "[2,3].[0]") == "[0].[2,3]"


def test_product(runner):
    assert run(runner, "product", "--n", "3", "[2].[0,1]", "[0].[3]") == "[2].[0,1].[3]"


def test_inverse(runner):
    assert run(runner, "inverse", "--n", "3", "[0].[1,2]") == "[1,2].[0]"


def test_stab(runner):
    assert run(runner, "stab", "--right", "--n", "2", "[0,1].[1,2]") == "{1,2}"
    assert run(runner, "stab", "--left", "--n", "3", "[1,2].[0,3]") == "{1,2}"


def test_decompose_json(runner):
    out = run(runner, "decompose", "--n", "3", "--json", "[2].[0,1]", "[0].[3]")
    data = json.loads(out)
    assert data == {
        "u1": "[2].[0,1]",
        "u_prime": "1",
        "v_prime": "[0]",
        "v1": "[3]",
        "reduct": "[2].[0,1].[3]",
    }


def test_wobble(runner):
    assert run(runner, "wobble", "--n", "2", "[0,1]", "[1,2]") == "{1}"


def test_rank(runner):
    data = json.loads(run(runner, "rank", "--n", "3", "--json", "[0,1].[1,3]"))
    assert data == {"u_rank": None, "ord_bound": "w^2+w"}


def test_strong(runner):
    out = run(runner, "strong", "--n", "2", "--split-len", "2", "[0,1].[0,1]")
    assert set(out.splitlines()) == {"1", "[0,1]", "[0]", "[1]", "[0].[1]", "[1].[0]"}


def test_build_flags_word(runner, space_file):
    space_json = run(runner, "build", space_file)
    data = json.loads(space_json)
    assert len(data["vertices"]) == 4
    with CliRunner().isolated_filesystem():
        with open("space.json", "w") as fh:
            fh.write(space_json)
        flags_out = run(runner, "flags", "space.json")
        assert flags_out.splitlines() == ["0: [0,1,2]", "1: [0,3,2]"]
        assert run(runner, "word", "space.json", "0", "1") == "[1]"
        assert run(runner, "word", "space.json", "[0,1,2]", "[0,3,2]") == "[1]"
        assert run(runner, "indep", "space.json", "0", "1", "1") == "true"
        base = json.loads(
            run(runner, "basepoint", "space.json", "1", "--set", "[0,1,2]", "--json")
        )
        assert base == {"basepoint": [0, 1, 2], "word": "[1]"}
        cls = json.loads(
            run(runner, "canbase", "space.json", "1", "--set", "[0,1,2]", "--json")
        )
        assert cls["modulus"] == [1]


def test_export_dot_roundtrip_deterministic(runner, space_file):
    one = run(runner, "build", space_file)
    two = run(runner, "build", space_file)
    assert one == two
    with CliRunner().isolated_filesystem():
        with open("space.json", "w") as fh:
            fh.write(one)
        dot1 = run(runner, "export-dot", "space.json")
        dot2 = run(runner, "export-dot", "space.json")
    assert dot1 == dot2
    assert "v3@1" in dot1


def test_realize(runner, space_file):
    with CliRunner().isolated_filesystem():
        with open("script.json", "w") as fh:
            fh.write(SCRIPT)
        built = run(runner, "build", "script.json")
        with open("space.json", "w") as fh:
            fh.write(built)
        out = json.loads(
            run(
                runner,
                "realize",
                "space.json",
                "0",
                "[0,1].[1,2]",
                "-o",
                "bigger.json",
                "--json",
            )
        )
        assert out["flag"] == [6, 7, 5]
        assert run(runner, "word", "bigger.json", "[6,7,5]", "[0,1,2]") == "[0,1].[1,2]"


def test_ample(runner):
    out = run(runner, "ample", "--n", "3")
    assert out.splitlines() == [
        "PASS sr([0,1].[2,3]) = [0,0]u[2,3]",
        "PASS sr([0,2].[3]) = [0,1]u[3,3]",
        "PASS sr([0,2].[1,3]) = [1,3]",
    ]


def test_verify_command(runner):
    out = run(runner, "verify", "--suite", "ample", "--seed", "1", "--cases", "1", "--json")
    data = json.loads(out)
    assert data["pass"] is True


def test_exit_codes():
    import subprocess, sys

    bad = subprocess.run(
        [sys.executable, "-m", "pseudospace.cli", "reduce", "--n", "2", "[0,5]"],
        capture_output=True,
        text=True,
    )
    assert bad.returncode == 1
    assert json.loads(bad.stderr)["error"] == "dimension-mismatch"
    usage = subprocess.run(
        [sys.executable, "-m", "pseudospace.cli", "reduce", "--n", "2"],
        capture_output=True,
        text=True,
    )
    assert usage.returncode == 2
