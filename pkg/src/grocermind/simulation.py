"""Scriptable discrete-event household simulation.

An Environment is a set of named contexts (kitchen, home_office, ...) each
holding item instances. A ScenarioScript adds a timeline: how many days to
run, which contexts get visited each day, and timed remove/move/replace
events. run_scenario drives the full loop: events, visits through the
perception channel into short-term memory, storage checks, and a missing
report at every window boundary. Identical script + seed always reproduce
an identical report sequence.

Days are 1-based, as in "milk was removed on day 5". Within a day the
order is fixed: events fire first, then the visits happen.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from .errors import (
    ScenarioError,
    UnknownContextError,
    UnknownInstanceError,
)
from .perception import (
    DEFAULT_FEATURE_DIM,
    DEFAULT_SIGMA,
    NcmClassifier,
    NoiseProfile,
    SyntheticFeatureModel,
    detected_labels,
    sense_context,
    train_ncm,
)
from .reasoner import MissingList, MissingReport, window_report
from .stcm import StcmBuffer
from .sustain import SustainNetwork, SustainParams
from .vocab import Vocabulary, encode

REMOVE = "remove"
MOVE = "move"
REPLACE = "replace"


class Environment:
    """Contexts and the item instances they currently hold.

    Every instance id is unique across the whole environment and lives in
    at most one context. The catalog remembers the category of every
    instance ever placed so a removed item can be re-created by a replace
    event.
    """

    def __init__(self, contexts: Dict[str, dict]):
        self.contexts: Dict[str, dict] = {}
        self.catalog: Dict[str, str] = {}
        seen_ids: Set[str] = set()
        for name, spec in contexts.items():
            items = dict(spec.get("items", {}))
            for instance_id, category in items.items():
                if instance_id in seen_ids:
                    raise ScenarioError(
                        f"duplicate instance id {instance_id!r} in environment"
                    )
                seen_ids.add(instance_id)
                self.catalog[instance_id] = category
            self.contexts[name] = {
                "storage": bool(spec.get("storage", False)),
                "items": items,
            }

    def context_names(self) -> List[str]:
        return list(self.contexts.keys())

    def regular_contexts(self) -> List[str]:
        return sorted(
            name for name, c in self.contexts.items() if not c["storage"]
        )

    def storage_contexts(self) -> List[str]:
        return sorted(name for name, c in self.contexts.items() if c["storage"])

    def is_storage(self, name: str) -> bool:
        self._require_context(name)
        return self.contexts[name]["storage"]

    def items_in(self, name: str) -> List[Tuple[str, str]]:
        """(instance_id, category) pairs in a context, id-sorted so that
        perception draws are reproducible."""
        self._require_context(name)
        return sorted(self.contexts[name]["items"].items())

    def categories_in(self, name: str) -> Set[str]:
        return {cat for _, cat in self.items_in(name)}

    def locate(self, instance_id: str) -> Optional[str]:
        for name, c in self.contexts.items():
            if instance_id in c["items"]:
                return name
        return None

    def _require_context(self, name: str) -> None:
        if name not in self.contexts:
            raise UnknownContextError(f"unknown context: {name!r}")

    def remove_instance(self, instance_id: str) -> None:
        home = self.locate(instance_id)
        if home is None:
            raise UnknownInstanceError(
                f"instance {instance_id!r} is not present anywhere"
            )
        del self.contexts[home]["items"][instance_id]

    def move_instance(self, instance_id: str, target: str) -> None:
        self._require_context(target)
        home = self.locate(instance_id)
        if home is None:
            raise UnknownInstanceError(
                f"instance {instance_id!r} is not present anywhere"
            )
        del self.contexts[home]["items"][instance_id]
        self.contexts[target]["items"][instance_id] = self.catalog[instance_id]

    def replace_instance(self, instance_id: str, target: str) -> None:
        self._require_context(target)
        if instance_id not in self.catalog:
            raise UnknownInstanceError(
                f"instance {instance_id!r} was never part of this environment"
            )
        if self.locate(instance_id) is not None:
            raise UnknownInstanceError(
                f"instance {instance_id!r} is still present; cannot replace"
            )
        self.contexts[target]["items"][instance_id] = self.catalog[instance_id]

    def to_dict(self) -> dict:
        return {
            name: {
                "storage": c["storage"],
                "items": dict(sorted(c["items"].items())),
            }
            for name, c in self.contexts.items()
        }

    def copy(self) -> "Environment":
        env = Environment(self.to_dict())
        env.catalog = dict(self.catalog)
        return env


@dataclass
class ScenarioEvent:
    """A timed change to the environment."""

    day: int
    action: str
    instance_id: str
    target_context: Optional[str] = None

    def __post_init__(self):
        if self.action not in (REMOVE, MOVE, REPLACE):
            raise ScenarioError(f"unknown event action: {self.action!r}")
        if self.action in (MOVE, REPLACE) and not self.target_context:
            raise ScenarioError(f"{self.action} event needs a target context")
        if self.action == REMOVE and self.target_context is not None:
            raise ScenarioError("remove event must not carry a target context")

    def to_dict(self) -> dict:
        data = {"day": self.day, "action": self.action, "instance": self.instance_id}
        if self.target_context is not None:
            data["to"] = self.target_context
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioEvent":
        return cls(
            day=int(data["day"]),
            action=data["action"],
            instance_id=data["instance"],
            target_context=data.get("to"),
        )


def apply_event(env: Environment, event: ScenarioEvent) -> Environment:
    """Apply one event in place and return the environment."""
    if event.action == REMOVE:
        env.remove_instance(event.instance_id)
    elif event.action == MOVE:
        env.move_instance(event.instance_id, event.target_context)
    else:
        env.replace_instance(event.instance_id, event.target_context)
    return env


@dataclass
class ScenarioScript:
    """Declarative description of one simulated stretch of days."""

    duration_days: int
    contexts: Dict[str, dict]
    visits_per_day: int = 3
    window_days: int = 2
    rng_seed: int = 0
    noise: NoiseProfile = field(default_factory=NoiseProfile.noise_free)
    events: List[ScenarioEvent] = field(default_factory=list)
    visit_plan: Dict[int, List[str]] = field(default_factory=dict)
    storage_visits: List[int] = field(default_factory=list)
    vocabulary: Optional[List[str]] = None
    feature_dim: int = DEFAULT_FEATURE_DIM
    feature_sigma: float = DEFAULT_SIGMA
    feature_seed: int = 0
    samples_per_class: int = 20

    def __post_init__(self):
        if self.duration_days < 1:
            raise ScenarioError("durationDays must be positive")
        if self.visits_per_day < 1:
            raise ScenarioError("visitsPerDay must be positive")
        self.events = sorted(self.events, key=lambda e: e.day)

    def events_for(self, day: int) -> List[ScenarioEvent]:
        return [e for e in self.events if e.day == day]

    def build_vocabulary(self) -> Vocabulary:
        if self.vocabulary is not None:
            return Vocabulary(self.vocabulary)
        categories = sorted(
            {
                cat
                for spec in self.contexts.values()
                for cat in spec.get("items", {}).values()
            }
        )
        if not categories:
            raise ScenarioError("scenario has no items and no vocabulary")
        return Vocabulary(categories)

    def build_environment(self) -> Environment:
        return Environment(self.contexts)

    def to_dict(self) -> dict:
        data = {
            "durationDays": self.duration_days,
            "visitsPerDay": self.visits_per_day,
            "windowDays": self.window_days,
            "rngSeed": self.rng_seed,
            "noise": self.noise.to_dict(),
            "contexts": self.contexts,
            "events": [e.to_dict() for e in self.events],
            "visitPlan": {str(d): v for d, v in self.visit_plan.items()},
            "storageVisits": list(self.storage_visits),
            "featureModel": {
                "featureDim": self.feature_dim,
                "sigma": self.feature_sigma,
                "seed": self.feature_seed,
                "samplesPerClass": self.samples_per_class,
            },
        }
        if self.vocabulary is not None:
            data["vocabulary"] = list(self.vocabulary)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioScript":
        try:
            feature = data.get("featureModel", {})
            noise = (
                NoiseProfile.from_dict(data["noise"])
                if "noise" in data
                else NoiseProfile.noise_free()
            )
            return cls(
                duration_days=int(data["durationDays"]),
                contexts=data["contexts"],
                visits_per_day=int(data.get("visitsPerDay", 3)),
                window_days=int(data.get("windowDays", 2)),
                rng_seed=int(data.get("rngSeed", 0)),
                noise=noise,
                events=[ScenarioEvent.from_dict(e) for e in data.get("events", [])],
                visit_plan={
                    int(day): list(plan)
                    for day, plan in data.get("visitPlan", {}).items()
                },
                storage_visits=[int(d) for d in data.get("storageVisits", [])],
                vocabulary=data.get("vocabulary"),
                feature_dim=int(feature.get("featureDim", DEFAULT_FEATURE_DIM)),
                feature_sigma=float(feature.get("sigma", DEFAULT_SIGMA)),
                feature_seed=int(feature.get("seed", 0)),
                samples_per_class=int(feature.get("samplesPerClass", 20)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"malformed scenario: {exc}") from exc

    @classmethod
    def from_json_file(cls, path) -> "ScenarioScript":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"scenario file {path} is not valid JSON: {exc}")
        return cls.from_dict(data)


def schedule_day(
    script: ScenarioScript,
    day: int,
    rng: np.random.Generator,
    env: Environment,
) -> List[str]:
    """Contexts to visit on one day.

    An explicit visit plan wins; otherwise visits_per_day contexts are drawn
    uniformly with replacement from the regular (non-storage) contexts.
    """
    if not 1 <= day <= script.duration_days:
        raise ScenarioError(f"day {day} outside scenario duration")
    if day in script.visit_plan:
        plan = script.visit_plan[day]
        for name in plan:
            if name not in env.contexts:
                raise UnknownContextError(f"visit plan names unknown context {name!r}")
        return list(plan)
    pool = env.regular_contexts()
    if not pool:
        raise ScenarioError("environment has no regular contexts to visit")
    picks = rng.integers(len(pool), size=script.visits_per_day)
    return [pool[int(i)] for i in picks]


def teach_network(
    net: SustainNetwork,
    env: Environment,
    passes: int = 1,
) -> int:
    """Train the network on noise-free exemplars of every context's current
    contents; returns the number of clusters recruited.

    Mirrors the user walking the robot through the house once before
    day-to-day operation starts.
    """
    recruited = 0
    for _ in range(max(1, passes)):
        for name in env.context_names():
            lv = encode(
                sorted(env.categories_in(name)), net.vocab, day=0, context_label=name
            )
            if net.learn_example(lv, name, is_storage=env.is_storage(name)):
                recruited += 1
    return recruited


def build_perception(
    script: ScenarioScript, vocab: Vocabulary
) -> Tuple[SyntheticFeatureModel, NcmClassifier]:
    """Feature model and trained NCM classifier for a scenario."""
    model = SyntheticFeatureModel.random(
        vocab,
        feature_dim=script.feature_dim,
        sigma=script.feature_sigma,
        seed=script.feature_seed,
    )
    train_rng = np.random.default_rng(script.feature_seed + 1)
    classifier = train_ncm(
        model.training_set(script.samples_per_class, train_rng), vocab
    )
    return model, classifier


def run_scenario(
    script: ScenarioScript,
    net: SustainNetwork,
    classifier: NcmClassifier,
    env: Environment,
    model: SyntheticFeatureModel,
) -> List[MissingReport]:
    """Run the whole scripted timeline and return one report per window.

    Each day: apply the day's events in order, perform the scheduled visits
    (sense -> encode -> short-term store), run any scripted storage check
    (routed to the window's storage-observed set, not short-term memory),
    and at every window boundary drain the buffer and report.
    """
    vocab = net.vocab
    rng = np.random.default_rng(script.rng_seed)
    stcm = StcmBuffer(script.window_days, window_start_day=1)
    missing = MissingList()
    storage_observed: Set[str] = set()
    reports: List[MissingReport] = []
    for day in range(1, script.duration_days + 1):
        for event in script.events_for(day):
            apply_event(env, event)
        for context in schedule_day(script, day, rng, env):
            detections = sense_context(
                env, context, script.noise, model, classifier, rng
            )
            lv = encode(
                detected_labels(detections), vocab, day=day, context_label=context
            )
            stcm.store(lv)
        if day in script.storage_visits:
            for context in env.storage_contexts():
                detections = sense_context(
                    env, context, script.noise, model, classifier, rng
                )
                storage_observed.update(d.predicted_label for d in detections)
        if day == stcm.window_end_day:
            window_lvs = stcm.drain_window()
            report, missing = window_report(
                window_lvs, net, vocab, missing, storage_observed, day
            )
            storage_observed = set()
            reports.append(report)
    return reports


def prepare_scenario(
    script: ScenarioScript,
) -> Tuple[Vocabulary, Environment, SyntheticFeatureModel, NcmClassifier, SustainNetwork]:
    """One-stop setup: vocabulary, fresh environment, perception stack and a
    network taught on the initial context contents."""
    vocab = script.build_vocabulary()
    env = script.build_environment()
    model, classifier = build_perception(script, vocab)
    net = SustainNetwork(vocab, SustainParams())
    teach_network(net, env)
    return vocab, env, model, classifier, net
