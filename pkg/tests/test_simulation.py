import json

import numpy as np
import pytest

from grocermind import (
    Environment,
    NoiseProfile,
    ScenarioError,
    ScenarioEvent,
    ScenarioScript,
    SustainNetwork,
    UnknownContextError,
    UnknownInstanceError,
    apply_event,
    prepare_scenario,
    run_scenario,
    schedule_day,
    teach_network,
)

BASE_CONTEXTS = {
    "kitchen": {
        "storage": False,
        "items": {"milk1": "milk", "apple1": "apple", "banana1": "banana"},
    },
    "office": {"storage": False, "items": {"book1": "book"}},
    "cupboard": {"storage": True, "items": {"apple2": "apple"}},
}


def make_script(**overrides):
    base = dict(
        duration_days=4,
        contexts=json.loads(json.dumps(BASE_CONTEXTS)),
        visits_per_day=2,
        window_days=2,
        rng_seed=5,
        visit_plan={d: ["kitchen", "office"] for d in range(1, 9)},
    )
    base.update(overrides)
    base["visit_plan"] = {
        d: plan for d, plan in base["visit_plan"].items()
        if d <= base["duration_days"]
    }
    return ScenarioScript(**base)


def run(script):
    _, env, model, classifier, net = prepare_scenario(script)
    return run_scenario(script, net, classifier, env, model)


class TestEnvironment:
    def test_items_listed_in_instance_id_order(self):
        env = Environment(BASE_CONTEXTS)
        assert env.items_in("kitchen") == [
            ("apple1", "apple"), ("banana1", "banana"), ("milk1", "milk")]

    def test_duplicate_instance_ids_rejected(self):
        with pytest.raises(ScenarioError):
            Environment({
                "a": {"items": {"x1": "milk"}},
                "b": {"items": {"x1": "apple"}},
            })

    def test_regular_and_storage_split(self):
        env = Environment(BASE_CONTEXTS)
        assert env.regular_contexts() == ["kitchen", "office"]
        assert env.storage_contexts() == ["cupboard"]

    def test_remove_takes_instance_out_of_the_world(self):
        env = Environment(BASE_CONTEXTS)
        env.remove_instance("milk1")
        assert env.locate("milk1") is None
        assert "milk" not in env.categories_in("kitchen")

    def test_remove_unknown_instance_rejected(self):
        env = Environment(BASE_CONTEXTS)
        with pytest.raises(UnknownInstanceError):
            env.remove_instance("ghost1")

    def test_move_keeps_instance_unique(self):
        env = Environment(BASE_CONTEXTS)
        env.move_instance("apple1", "office")
        assert env.locate("apple1") == "office"
        homes = [name for name in env.context_names()
                 if "apple1" in env.contexts[name]["items"]]
        assert homes == ["office"]

    def test_move_to_unknown_context_rejected(self):
        env = Environment(BASE_CONTEXTS)
        with pytest.raises(UnknownContextError):
            env.move_instance("apple1", "garage")

    def test_replace_restores_a_removed_instance(self):
        env = Environment(BASE_CONTEXTS)
        env.remove_instance("milk1")
        env.replace_instance("milk1", "kitchen")
        assert env.locate("milk1") == "kitchen"
        assert env.catalog["milk1"] == "milk"

    def test_replace_while_present_rejected(self):
        env = Environment(BASE_CONTEXTS)
        with pytest.raises(UnknownInstanceError):
            env.replace_instance("milk1", "kitchen")

    def test_replace_of_never_known_instance_rejected(self):
        env = Environment(BASE_CONTEXTS)
        with pytest.raises(UnknownInstanceError):
            env.replace_instance("ghost1", "kitchen")

    def test_copy_is_independent(self):
        env = Environment(BASE_CONTEXTS)
        clone = env.copy()
        clone.remove_instance("milk1")
        assert env.locate("milk1") == "kitchen"


class TestScenarioEvent:
    def test_remove_must_not_carry_target(self):
        with pytest.raises(ScenarioError):
            ScenarioEvent(day=1, action="remove", instance_id="milk1",
                          target_context="kitchen")

    def test_move_requires_target(self):
        with pytest.raises(ScenarioError):
            ScenarioEvent(day=1, action="move", instance_id="milk1")

    def test_unknown_action_rejected(self):
        with pytest.raises(ScenarioError):
            ScenarioEvent(day=1, action="teleport", instance_id="milk1")

    def test_round_trip(self):
        e = ScenarioEvent(day=3, action="move", instance_id="milk1",
                          target_context="office")
        assert ScenarioEvent.from_dict(e.to_dict()) == e

    def test_apply_event_dispatch(self):
        env = Environment(BASE_CONTEXTS)
        apply_event(env, ScenarioEvent(day=1, action="remove",
                                       instance_id="milk1"))
        assert env.locate("milk1") is None
        apply_event(env, ScenarioEvent(day=2, action="replace",
                                       instance_id="milk1",
                                       target_context="office"))
        assert env.locate("milk1") == "office"


class TestScheduleDay:
    def test_explicit_plan_wins(self):
        script = make_script(visit_plan={1: ["office", "office"]})
        env = script.build_environment()
        rng = np.random.default_rng(0)
        assert schedule_day(script, 1, rng, env) == ["office", "office"]

    def test_plan_with_unknown_context_rejected(self):
        script = make_script(visit_plan={1: ["garage"]})
        env = script.build_environment()
        with pytest.raises(UnknownContextError):
            schedule_day(script, 1, np.random.default_rng(0), env)

    def test_unplanned_day_draws_from_regular_contexts(self):
        script = make_script(visit_plan={})
        env = script.build_environment()
        rng = np.random.default_rng(3)
        plan = schedule_day(script, 2, rng, env)
        assert len(plan) == script.visits_per_day
        assert set(plan) <= {"kitchen", "office"}

    def test_storage_contexts_never_drawn(self):
        script = make_script(visit_plan={}, visits_per_day=6)
        env = script.build_environment()
        for seed in range(20):
            plan = schedule_day(script, 1, np.random.default_rng(seed), env)
            assert "cupboard" not in plan

    def test_same_seed_same_schedule(self):
        script = make_script(visit_plan={})
        env = script.build_environment()
        a = schedule_day(script, 1, np.random.default_rng(9), env)
        b = schedule_day(script, 1, np.random.default_rng(9), env)
        assert a == b

    def test_day_outside_duration_rejected(self):
        script = make_script()
        env = script.build_environment()
        with pytest.raises(ScenarioError):
            schedule_day(script, 9, np.random.default_rng(0), env)


class TestTeachNetwork:
    def test_one_cluster_per_context(self):
        env = Environment(BASE_CONTEXTS)
        script = make_script()
        net = SustainNetwork(script.build_vocabulary())
        assert teach_network(net, env) == 3
        assert net.n_clusters == 3

    def test_second_pass_recruits_nothing(self):
        env = Environment(BASE_CONTEXTS)
        net = SustainNetwork(make_script().build_vocabulary())
        teach_network(net, env)
        assert teach_network(net, env) == 0

    def test_storage_context_flagged(self):
        env = Environment(BASE_CONTEXTS)
        net = SustainNetwork(make_script().build_vocabulary())
        teach_network(net, env)
        flags = {label: is_storage
                 for _, label, is_storage in net.clusters()}
        assert flags["cupboard"] is True
        assert flags["kitchen"] is False


class TestRunScenario:
    def test_stable_household_reports_nothing_missing(self):
        reports = run(make_script())
        assert [r.window_end_day for r in reports] == [2, 4]
        assert all(r.predicted == set() for r in reports)
        assert all(r.missing_list == set() for r in reports)

    def test_removed_item_flagged_in_its_window(self):
        script = make_script(events=[
            ScenarioEvent(day=3, action="remove", instance_id="milk1")])
        reports = run(script)
        assert reports[0].predicted == set()
        assert reports[1].predicted == {"milk"}
        assert reports[1].missing_list == {"milk"}

    def test_item_seen_early_in_window_is_not_flagged_yet(self):
        # removal on the window's second day: one sighting on day 1 keeps
        # the item off that report; the next full window flags it
        script = make_script(events=[
            ScenarioEvent(day=2, action="remove", instance_id="banana1")])
        reports = run(script)
        assert "banana" not in reports[0].predicted
        assert reports[1].predicted == {"banana"}

    def test_moved_item_is_still_observed(self):
        script = make_script(
            events=[ScenarioEvent(day=1, action="move",
                                  instance_id="apple1",
                                  target_context="office")])
        reports = run(script)
        assert all("apple" not in r.predicted for r in reports)
        assert all("apple" not in r.missing_list for r in reports)

    def test_replaced_item_drops_off_the_missing_list(self):
        script = make_script(events=[
            ScenarioEvent(day=1, action="remove", instance_id="milk1"),
            ScenarioEvent(day=3, action="replace", instance_id="milk1",
                          target_context="kitchen"),
        ])
        reports = run(script)
        assert reports[0].predicted == {"milk"}
        assert reports[0].missing_list == {"milk"}
        assert "milk" in reports[1].observed
        assert reports[1].missing_list == set()

    def test_storage_sighting_reroutes_a_candidate(self):
        script = make_script(
            events=[ScenarioEvent(day=1, action="remove",
                                  instance_id="apple1")],
            storage_visits=[1],
        )
        reports = run(script)
        assert reports[0].predicted == set()
        assert reports[0].storage_items == {"apple"}
        assert "apple" not in reports[0].missing_list

    def test_partial_trailing_window_is_not_reported(self):
        script = make_script(duration_days=5)
        reports = run(script)
        assert [r.window_end_day for r in reports] == [2, 4]

    def test_identical_runs_are_identical(self):
        script = make_script(noise=NoiseProfile(), rng_seed=21)
        a = [r.to_dict() for r in run(script)]
        b = [r.to_dict() for r in run(script)]
        assert a == b

    def test_noisy_run_still_produces_one_report_per_window(self):
        script = make_script(noise=NoiseProfile(), rng_seed=2,
                             duration_days=6)
        reports = run(script)
        assert [r.window_end_day for r in reports] == [2, 4, 6]


class TestScenarioScript:
    def test_dict_round_trip(self):
        script = make_script(
            events=[ScenarioEvent(day=2, action="remove",
                                  instance_id="milk1")],
            storage_visits=[2, 4],
            noise=NoiseProfile(0.1, 0.05, 0.2),
        )
        clone = ScenarioScript.from_dict(script.to_dict())
        assert clone == script

    def test_vocabulary_defaults_to_sorted_categories(self):
        vocab = make_script().build_vocabulary()
        assert vocab.labels == ("apple", "banana", "book", "milk")

    def test_explicit_vocabulary_wins(self):
        script = make_script(vocabulary=["milk", "apple", "banana", "book",
                                         "caviar"])
        assert script.build_vocabulary().labels[-1] == "caviar"

    def test_noise_defaults_to_noise_free_when_absent(self):
        data = make_script().to_dict()
        del data["noise"]
        script = ScenarioScript.from_dict(data)
        assert script.noise == NoiseProfile.noise_free()

    def test_missing_duration_rejected(self):
        data = make_script().to_dict()
        del data["durationDays"]
        with pytest.raises(ScenarioError):
            ScenarioScript.from_dict(data)

    def test_nonpositive_duration_rejected(self):
        with pytest.raises(ScenarioError):
            make_script(duration_days=0)

    def test_json_file_round_trip(self, tmp_path):
        script = make_script()
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(script.to_dict()))
        assert ScenarioScript.from_json_file(path) == script

    def test_invalid_json_file_rejected(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ScenarioError):
            ScenarioScript.from_json_file(path)

    def test_bundled_scenarios_load(self, experiment_script):
        for name in ("experiment1", "experiment2", "experiment3"):
            script = experiment_script(name)
            assert script.duration_days == 6
            assert script.window_days == 2
