import numpy as np
import pytest

from grocermind import (
    ScenarioScript,
    SustainNetwork,
    SustainParams,
    Vocabulary,
    encode,
)
from grocermind.cli import scenario_path

HOUSEHOLD_LABELS = [
    "book",
    "mouse",
    "keyboard",
    "stapler",
    "milk",
    "apple",
    "banana",
    "cereal",
    "orange",
    "honey",
]

HOUSEHOLD_CONTEXTS = {
    "home_office": ["book", "mouse", "keyboard", "stapler"],
    "kitchen": ["milk", "apple", "banana", "cereal", "orange", "honey"],
    "dining_area": [],
    "storage_space": ["cereal", "stapler", "honey"],
}


@pytest.fixture
def fruit_vocab():
    return Vocabulary(["milk", "apple", "banana"])


@pytest.fixture
def household_vocab():
    return Vocabulary(HOUSEHOLD_LABELS)


@pytest.fixture
def household_net(household_vocab):
    """Network taught one noise-free exemplar of each household context,
    storage last."""
    net = SustainNetwork(household_vocab, SustainParams())
    for name, items in HOUSEHOLD_CONTEXTS.items():
        lv = encode(items, household_vocab, day=0, context_label=name)
        net.learn_example(lv, name, is_storage=(name == "storage_space"))
    return net


@pytest.fixture
def experiment_script():
    def load(name):
        return ScenarioScript.from_json_file(scenario_path(name))

    return load


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.fspath.basename == "test_acceptance.py":
        tr = item.config.pluginmanager.get_plugin("terminalreporter")
        if tr is not None:
            verdict = "PASS" if rep.passed else "FAIL"
            tr.write_line(f"[acceptance] {item.name}: {verdict}")
