import json

import pytest
from click.testing import CliRunner

from classtwo.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, args, **kw):
    return runner.invoke(main, args, catch_exceptions=False, **kw)


def test_help_all_subcommands(runner):
    result = invoke(runner, ["--help"])
    assert result.exit_code == 0
    for sub in ("list", "show", "classes", "aut", "curve", "gp", "dp",
                "verify", "selftest"):
        assert sub in result.output
        sub_result = invoke(runner, [sub, "--help"])
        assert sub_result.exit_code == 0


def test_list_census(runner):
    result = invoke(runner, ["list"])
    assert result.exit_code == 0
    assert "order p^8: 43 groups" in result.output
    assert "total: 70" in result.output


def test_show_entry(runner):
    result = invoke(runner, ["show", "6.4.4"])
    assert result.exit_code == 0
    assert "p^4+p^2-1" in result.output
    assert "[d,c]=[b,a]^omega" in result.output


def test_show_unknown_exits_2(runner):
    result = runner.invoke(main, ["show", "nonexistent"])
    assert result.exit_code == 2


def test_classes_command(runner):
    result = invoke(runner, ["classes", "3.2.1", "-p", "3"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "11"


def test_classes_brute_method(runner):
    result = invoke(runner, ["classes", "4.3.1", "-p", "3", "--method", "brute"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "33"


def test_classes_rejects_even_prime(runner):
    result = runner.invoke(main, ["classes", "3.2.1", "-p", "4"])
    assert result.exit_code == 2


def test_aut_command(runner):
    result = invoke(runner, ["aut", "4.3.1", "-p", "3"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "23328"


def test_aut_b_order_backtrack(runner):
    result = invoke(runner, ["aut", "4.3.1", "-p", "3", "--method", "backtrack",
                             "--b-order"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "864"


def test_aut_recipe_method(runner):
    result = invoke(runner, ["aut", "8.5.9", "-p", "3", "--method", "recipe",
                             "--b-order"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "48"


def test_curve_command(runner):
    result = invoke(runner, ["curve", "-p", "5"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "E=8 V=0"


def test_dp_command(runner):
    result = invoke(runner, ["dp", "-p", "7"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "34"


def test_dp_rejects_three(runner):
    result = runner.invoke(main, ["dp", "-p", "3"])
    assert result.exit_code == 2


def test_gp_command(runner):
    result = invoke(runner, ["gp", "-p", "5"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["gp"][0]["E"] == 8
    assert data["gp"][0]["class_match"] is True


def test_verify_two_entries_json(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("PORC_CACHE_DIR", str(tmp_path / "cache"))
    result = invoke(runner, [
        "verify", "--ids", "3.2.1,4.3.1", "--primes", "3", "--aut-primes", "3",
        "--small-k-primes", "", "--gp-primes", "",
    ])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["schema"] == 1
    assert [r["id"] for r in data["entries"]] == ["3.2.1", "4.3.1"]
    assert all(r["ok"] for r in data["entries"])


def test_verify_csv_output(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("PORC_CACHE_DIR", str(tmp_path / "cache"))
    out = tmp_path / "report.csv"
    result = invoke(runner, [
        "verify", "--ids", "3.2.1", "--primes", "3", "--aut-primes", "3",
        "--small-k-primes", "", "--gp-primes", "", "--format", "csv",
        "--out", str(out),
    ])
    assert result.exit_code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("id,p,class_computed")
    assert len(lines) == 2


def test_verify_unknown_id_exits_2(runner):
    result = runner.invoke(main, ["verify", "--ids", "bogus"])
    assert result.exit_code == 2


def test_verify_bad_prime_exits_2(runner):
    result = runner.invoke(main, ["verify", "--primes", "6"])
    assert result.exit_code == 2


def test_catalog_override_flag(runner, tmp_path):
    import json as js
    from importlib import resources

    raw = js.loads(resources.files("classtwo.data").joinpath("catalog.json").read_text())
    raw["entries"] = raw["entries"][:1]
    path = tmp_path / "cat.json"
    path.write_text(js.dumps(raw))
    result = invoke(runner, ["--catalog", str(path), "list"])
    assert result.exit_code == 0
    assert "total: 1" in result.output


def test_stdout_is_exactly_the_datum(runner):
    # diagnostics go to stderr, the datum alone to stdout
    result = runner.invoke(main, ["aut", "3.2.1", "-p", "3"], catch_exceptions=False)
    assert result.stdout.strip().isdigit()
