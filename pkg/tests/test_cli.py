import json

import pytest

from distlab import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_cohomology_json_report(capsys):
    code, out = run(["cohomology", "--m", "12", "--format", "json"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == 1
    assert rep["suite"] == "cohomology"
    assert rep["levels"] == [12]
    assert set(rep["assumptions"]) == {"w", "Q", "S"}
    assert rep["pass"] is True
    by_name = {c["name"]: c for c in rep["checks"]}
    assert by_name["h1_rank"]["computed"] == 2
    assert by_name["h1_rank"]["pass"] is True


def test_checks_sorted_and_timings_opt_in(capsys):
    code, out = run(["detphi", "--m-list", "12,5", "--format", "json"], capsys)
    assert code == 0
    rep = json.loads(out)
    keys = [(c["m"], c["name"]) for c in rep["checks"]]
    assert keys == sorted(keys)
    assert all("runtime_ms" not in c for c in rep["checks"])

    code, out = run(["detphi", "--m", "5", "--format", "json", "--timings"], capsys)
    rep = json.loads(out)
    assert all(isinstance(c["runtime_ms"], int) for c in rep["checks"])


def test_json_deterministic(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code = cli.main(
            ["verify", "--suite", "hminus", "--m-list", "5,8", "--format", "json",
             "--out", str(path)]
        )
        assert code == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_forbidden_level_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["cohomology", "--m", "10"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert "twice an odd number" in err


def test_missing_levels_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["cohomology"])
    assert exc.value.code == 2


def test_bad_list_entry_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["cohomology", "--m-list", "5,x"])
    assert exc.value.code == 2


def test_small_level_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["hminus", "--m", "1"])
    assert exc.value.code == 2


def test_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(cli, "h_minus", lambda m: 0)
    code, out = run(["hminus", "--m", "5", "--format", "json"], capsys)
    assert code == 1
    rep = json.loads(out)
    assert rep["pass"] is False
    by_name = {c["name"]: c for c in rep["checks"]}
    assert by_name["h_minus"]["pass"] is False
    assert by_name["l1_float_crosscheck"]["pass"] is True


def test_spectral_page_table(capsys):
    code, out = run(
        ["spectral", "--m", "12", "--d", "d1", "--qmax", "6", "--page", "2",
         "--format", "json"],
        capsys,
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] is True
    (table,) = rep["tables"]
    assert table["d"] == "d1"
    cells = {(c["p"], c["q"]): c["group"] for c in table["cells"]}
    # binomial pattern on odd rows at a two-prime level
    assert cells[(0, 1)] == "Z/2"
    assert cells[(-1, 1)] == "Z/2 + Z/2"
    assert cells[(-2, 1)] == "Z/2"
    assert cells[(-1, 2)] == "0"


def test_spectral_text_table(capsys):
    code, out = run(["spectral", "--m", "12", "--d", "d1", "--page", "2"], capsys)
    assert code == 0
    assert "page 2 of (12, d1):" in out
    assert "Z/2 + Z/2" in out


def test_randomized_index_suite_no_levels_needed(capsys):
    code, out = run(
        ["index", "--trials", "4", "--seed", "11", "--format", "json"], capsys
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["levels"] == []
    assert len(rep["checks"]) == 4
    assert all(c["m"] == 0 for c in rep["checks"])


def test_randomized_index_suite_is_seeded(capsys):
    _, out1 = run(["index", "--trials", "3", "--seed", "5", "--format", "json"], capsys)
    _, out2 = run(["index", "--trials", "3", "--seed", "5", "--format", "json"], capsys)
    assert out1 == out2


def test_verify_aggregates_suites(capsys):
    code, out = run(
        ["verify", "--suite", "cohomology", "--m-list", "5,8", "--format", "json"],
        capsys,
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["suite"] == "verify:cohomology"
    assert rep["levels"] == [5, 8]
    assert {c["m"] for c in rep["checks"]} == {5, 8}


def test_m_max_sweep_skips_forbidden(capsys):
    code, out = run(["hminus", "--m-max", "9", "--format", "json"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["levels"] == [3, 4, 5, 7, 8, 9]


def test_text_format_summary_line(capsys):
    code, out = run(["cohomology", "--m", "5"], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "2 checks, 2 passed, 0 failed"
