import json

import pytest

from grocermind.cli import (
    EXIT_OK,
    EXIT_SCENARIO,
    EXIT_USAGE,
    main,
    scenario_path,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestScenarioPath:
    def test_bundled_names_resolve_to_files(self):
        for name in ("experiment1", "experiment2", "experiment3"):
            assert scenario_path(name).is_file()

    def test_plain_paths_pass_through(self, tmp_path):
        p = tmp_path / "custom.json"
        assert scenario_path(str(p)) == p


class TestRun:
    def test_prints_one_table_row_per_window(self, capsys):
        code, out, _ = run_cli(capsys, "run", "experiment1")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0].startswith("Day")
        assert len(lines) == 4  # header + three windows

    def test_report_file_contains_all_windows(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        code, _, _ = run_cli(capsys, "run", "experiment1",
                             "--out", str(out_path))
        assert code == EXIT_OK
        payload = json.loads(out_path.read_text())
        assert [r["windowEndDay"] for r in payload["reports"]] == [2, 4, 6]
        assert payload["reports"][2]["missingList"] == ["cereal", "milk"]

    def test_seed_override_lands_in_the_report_file(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        run_cli(capsys, "run", "experiment1", "--seed", "99",
                "--out", str(out_path))
        assert json.loads(out_path.read_text())["rngSeed"] == 99

    def test_same_seed_writes_identical_bytes(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run_cli(capsys, "run", "experiment2", "--out", str(a))
        run_cli(capsys, "run", "experiment2", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_state_file_is_loadable_and_carries_the_list(self, capsys,
                                                         tmp_path):
        from grocermind import load_state

        state_path = tmp_path / "state.json"
        code, _, _ = run_cli(capsys, "run", "experiment1",
                             "--state", str(state_path))
        assert code == EXIT_OK
        snapshot = load_state(state_path)
        assert snapshot.missing_list.items == {"cereal", "milk"}
        assert snapshot.network.n_clusters == 4

    def test_missing_scenario_file_is_a_data_error(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "run", str(tmp_path / "nope.json"))
        assert code == EXIT_SCENARIO
        assert "error" in err

    def test_malformed_scenario_file_is_a_data_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, _ = run_cli(capsys, "run", str(bad))
        assert code == EXIT_SCENARIO


class TestDiff:
    @pytest.fixture
    def state_path(self, capsys, tmp_path):
        path = tmp_path / "state.json"
        run_cli(capsys, "run", "experiment1", "--state", str(path))
        return path

    def test_reports_items_the_user_list_lacks(self, capsys, state_path):
        code, out, _ = run_cli(capsys, "diff", "--list", "milk,banana",
                               "--state", str(state_path))
        assert code == EXIT_OK
        assert json.loads(out) == {"difference": ["cereal"]}

    def test_covered_list_diffs_to_nothing(self, capsys, state_path):
        code, out, _ = run_cli(capsys, "diff", "--list",
                               "cereal, milk ,banana",
                               "--state", str(state_path))
        assert code == EXIT_OK
        assert json.loads(out) == {"difference": []}

    def test_missing_state_file_is_a_data_error(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "diff", "--list", "milk",
                             "--state", str(tmp_path / "nope.json"))
        assert code == EXIT_SCENARIO


class TestInspect:
    def test_summarizes_the_snapshot(self, capsys, tmp_path):
        path = tmp_path / "state.json"
        run_cli(capsys, "run", "experiment3", "--state", str(path))
        code, out, _ = run_cli(capsys, "inspect", str(path))
        assert code == EXIT_OK
        assert "clusters       : 4" in out
        assert "storage_space (storage)" in out
        assert "missing list" in out

    def test_corrupt_snapshot_is_a_data_error(self, capsys, tmp_path):
        path = tmp_path / "state.json"
        path.write_text("[]")
        code, _, _ = run_cli(capsys, "inspect", str(path))
        assert code == EXIT_SCENARIO


class TestUsageErrors:
    def test_unknown_subcommand_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["conjure"])
        assert exc.value.code == EXIT_USAGE

    def test_no_subcommand_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == EXIT_USAGE

    def test_diff_without_list_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["diff"])
        assert exc.value.code == EXIT_USAGE

    def test_run_rejects_non_integer_seed(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["run", "experiment1", "--seed", "pi"])
        assert exc.value.code == EXIT_USAGE
