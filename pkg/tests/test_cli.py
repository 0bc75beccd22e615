import csv
import json

import pytest

from fixture_util import make_git_repo, metadata_doc, write_metadata_fixture
from gitrank.cli import EXIT_FATAL_CONFIG, EXIT_NO_MEASURED, EXIT_OK, main

SRC = "int f(int a){ if (a) { return 1; } return 0; }\n"


@pytest.fixture
def setup(tmp_path):
    urls = []
    fixtures = tmp_path / "fixtures"
    for i in range(3):
        name = f"org/repo{i}"
        origin = make_git_repo(tmp_path / "origins" / name, {"a.c": SRC})
        write_metadata_fixture(
            fixtures, name, metadata_doc(stargazers=100 * (i + 1), total_commits=50 * i)
        )
        urls.append(f"file://{origin}")
    listing = tmp_path / "repos.txt"
    listing.write_text("".join(u + "\n" for u in urls))
    return {
        "tmp": tmp_path,
        "listing": listing,
        "fixtures": fixtures,
        "metrics": tmp_path / "metrics",
        "work": tmp_path / "work",
    }


def common_args(s):
    return [
        "--input", str(s["listing"]),
        "--out", str(s["metrics"]),
        "--workdir", str(s["work"]),
        "--fixtures", str(s["fixtures"]),
        "--evaluated-at", "2024-06-01T00:00:00Z",
    ]


def test_measure_then_rank(setup, capsys):
    assert main(["measure", *common_args(setup)]) == EXIT_OK
    records = list(setup["metrics"].glob("*.json"))
    assert len(records) == 3
    csv_out = setup["tmp"] / "out.csv"
    html_out = setup["tmp"] / "out.html"
    code = main([
        "rank", "--metrics", str(setup["metrics"]),
        "--csv", str(csv_out), "--html", str(html_out), "-vv",
    ])
    assert code == EXIT_OK
    with open(csv_out, newline="") as handle:
        rows = list(csv.reader(handle))
    assert len(rows) == 4
    assert len(rows[0]) == 20
    assert html_out.exists()


def test_run_subcommand(setup):
    csv_out = setup["tmp"] / "out.csv"
    code = main(["run", *common_args(setup), "--csv", str(csv_out), "-v"])
    assert code == EXIT_OK
    with open(csv_out, newline="") as handle:
        rows = list(csv.reader(handle))
    assert len(rows[0]) == 6


def test_rank_prints_table_without_outputs(setup, capsys):
    assert main(["measure", *common_args(setup)]) == EXIT_OK
    assert main(["rank", "--metrics", str(setup["metrics"])]) == EXIT_OK
    out = capsys.readouterr().out
    assert "rank" in out and "org/repo0" in out


def test_bad_shard_is_fatal_config(setup):
    assert main(["measure", *common_args(setup), "--shard", "9/3"]) == EXIT_FATAL_CONFIG


def test_missing_input_is_fatal_config(tmp_path):
    assert main(["measure", "--out", str(tmp_path / "m")]) == EXIT_FATAL_CONFIG


def test_rank_empty_metrics_exit_2(tmp_path):
    metrics = tmp_path / "metrics"
    metrics.mkdir()
    assert main(["rank", "--metrics", str(metrics)]) == EXIT_NO_MEASURED


def test_config_file_supplies_defaults(setup):
    config_path = setup["tmp"] / "gitrank.toml"
    config_path.write_text(
        f"""
[run]
input = "{setup['listing']}"
workdir = "{setup['work']}"
metrics = "{setup['metrics']}"
fixtures = "{setup['fixtures']}"
verbosity = 1
evaluated_at = "2024-06-01T00:00:00Z"
"""
    )
    csv_out = setup["tmp"] / "out.csv"
    code = main(["--config", str(config_path), "run", "--csv", str(csv_out)])
    assert code == EXIT_OK
    with open(csv_out, newline="") as handle:
        rows = list(csv.reader(handle))
    assert len(rows[0]) == 6  # verbosity 1 from the file


def test_dropped_repo_listed_in_html(setup):
    # add an input with no analyzable sources
    name = "org/empty"
    origin = make_git_repo(setup["tmp"] / "origins" / name, {"notes.txt": "x\n"})
    write_metadata_fixture(setup["fixtures"], name, metadata_doc())
    listing = setup["listing"]
    listing.write_text(listing.read_text() + f"file://{origin}\n")
    html_out = setup["tmp"] / "out.html"
    code = main(["run", *common_args(setup), "--html", str(html_out)])
    assert code == EXIT_OK
    text = html_out.read_text()
    assert "org/empty" in text
    assert "no analyzable source" in text
    record = json.loads((setup["metrics"] / "org__empty.json").read_text())
    assert record["status"] == "dropped"
