"""One live simulation session and its command surface.

A Session owns the single agent timeline: environment, perception stack,
SUSTAIN network, short-term buffer and missing list. Every interaction
(teach, learn, visit, event, report, grocery-diff, reset, state) goes
through handle_command, which validates the payload and applies the verb
atomically under a lock, so concurrent callers always observe a consistent
snapshot.

Day accounting mirrors the simulated-week protocol: visits_per_day regular
visits make up one day, storage checks are extra and never consume a visit
slot. Draining a report advances the window and snaps the day cursor to
the new window start.
"""

from __future__ import annotations

import threading
from typing import Dict, List, Optional, Set

import numpy as np

from .errors import CommandError, GrocermindError
from .perception import detected_labels, sense_context
from .persistence import StateSnapshot, rng_state_of, save_state
from .reasoner import (
    MissingList,
    MissingReport,
    diff_with_user_list,
    reset_list,
    window_report,
)
from .simulation import ScenarioScript, ScenarioEvent, apply_event, build_perception
from .stcm import StcmBuffer
from .sustain import SustainNetwork, SustainParams
from .vocab import encode

VERBS = (
    "teach",
    "learn",
    "visit",
    "event",
    "report",
    "grocery-diff",
    "reset",
    "state",
)


class Session:
    """Single-writer simulation session driven by commands."""

    def __init__(self, script: ScenarioScript, pretrain: bool = False):
        self.script = script
        self.vocab = script.build_vocabulary()
        self.env = script.build_environment()
        self.model, self.classifier = build_perception(script, self.vocab)
        self.net = SustainNetwork(self.vocab, SustainParams())
        self.noise = script.noise
        self.rng = np.random.default_rng(script.rng_seed)
        self.stcm = StcmBuffer(script.window_days, window_start_day=1)
        self.missing = MissingList()
        self.storage_observed: Set[str] = set()
        self.teach_buffer: List[tuple] = []
        self.reports: List[MissingReport] = []
        self.day = 1
        self.visits_today = 0
        self.current_context: Optional[str] = None
        self.latest_detections: List[str] = []
        self._lock = threading.Lock()
        if pretrain:
            from .simulation import teach_network

            teach_network(self.net, self.env)

    # -- command dispatch ------------------------------------------------

    def handle_command(self, verb: str, payload: Optional[dict] = None) -> dict:
        """Validate and execute one command; returns a JSON-able response.

        Raises CommandError with a 4xx status for bad requests and a 5xx
        status for internal failures.
        """
        payload = payload or {}
        if not isinstance(payload, dict):
            raise CommandError("payload must be a JSON object", status=400)
        handler = {
            "teach": self._cmd_teach,
            "learn": self._cmd_learn,
            "visit": self._cmd_visit,
            "event": self._cmd_event,
            "report": self._cmd_report,
            "grocery-diff": self._cmd_grocery_diff,
            "reset": self._cmd_reset,
            "state": self._cmd_state,
        }.get(verb)
        if handler is None:
            raise CommandError(f"unknown verb: {verb!r}", status=400)
        with self._lock:
            try:
                return handler(payload)
            except CommandError:
                raise
            except GrocermindError as exc:
                raise CommandError(str(exc), status=400) from exc
            except Exception as exc:  # noqa: BLE001 - surface as 5xx
                raise CommandError(f"internal failure: {exc}", status=500) from exc

    # -- verbs -----------------------------------------------------------

    def _require(self, payload: dict, key: str) -> object:
        if key not in payload:
            raise CommandError(f"payload missing required field {key!r}", status=400)
        return payload[key]

    def _sense(self, context: str) -> List[str]:
        detections = sense_context(
            self.env, context, self.noise, self.model, self.classifier, self.rng
        )
        labels = detected_labels(detections)
        self.current_context = context
        self.latest_detections = labels
        return labels

    def _cmd_teach(self, payload: dict) -> dict:
        context = str(self._require(payload, "context"))
        label = str(payload.get("label", context))
        labels = self._sense(context)
        lv = encode(labels, self.vocab, day=self.day, context_label=label)
        self.teach_buffer.append((lv, label, self.env.is_storage(context)))
        return {
            "staged": len(self.teach_buffer),
            "context": context,
            "label": label,
            "detections": labels,
        }

    def _cmd_learn(self, payload: dict) -> dict:
        if not self.teach_buffer:
            return {"learned": 0, "recruited": 0, "clusters": self.net.n_clusters}
        recruited = 0
        learned = 0
        for lv, label, is_storage in self.teach_buffer:
            if self.net.learn_example(lv, label, is_storage=is_storage):
                recruited += 1
            learned += 1
        self.teach_buffer = []
        return {
            "learned": learned,
            "recruited": recruited,
            "clusters": self.net.n_clusters,
        }

    def _cmd_visit(self, payload: dict) -> dict:
        context = str(self._require(payload, "context"))
        labels = self._sense(context)
        routed = "storage"
        if not self.env.is_storage(context):
            lv = encode(labels, self.vocab, day=self.day, context_label=context)
            self.stcm.store(lv)
            routed = "stcm"
            self.visits_today += 1
            if self.visits_today >= self.script.visits_per_day:
                self.day += 1
                self.visits_today = 0
        else:
            self.storage_observed.update(labels)
        return {
            "context": context,
            "detections": labels,
            "routed": routed,
            "day": self.day,
        }

    def _cmd_event(self, payload: dict) -> dict:
        event = ScenarioEvent(
            day=int(payload.get("day", self.day)),
            action=str(self._require(payload, "action")),
            instance_id=str(self._require(payload, "instance")),
            target_context=payload.get("to"),
        )
        apply_event(self.env, event)
        return {"applied": event.to_dict()}

    def _cmd_report(self, payload: dict) -> dict:
        window_end = self.stcm.window_end_day
        window_lvs = self.stcm.drain_window()
        report, self.missing = window_report(
            window_lvs,
            self.net,
            self.vocab,
            self.missing,
            self.storage_observed,
            window_end,
        )
        self.storage_observed = set()
        self.reports.append(report)
        self.day = max(self.day, self.stcm.window_start_day)
        self.visits_today = 0
        return report.to_dict()

    def _cmd_grocery_diff(self, payload: dict) -> dict:
        user_list = self._require(payload, "items")
        if not isinstance(user_list, (list, tuple, set)):
            raise CommandError("'items' must be an array of labels", status=400)
        user_set = set(map(str, user_list))
        difference = diff_with_user_list(self.missing, user_set)
        return {"difference": sorted(difference), "userList": sorted(user_set)}

    def _cmd_reset(self, payload: dict) -> dict:
        self.missing = reset_list(self.missing)
        return {"missingList": []}

    def _cmd_state(self, payload: dict) -> dict:
        return self.state_dict()

    # -- snapshots -------------------------------------------------------

    def state_dict(self) -> dict:
        """Full observable state, the payload behind GET /state."""
        last = self.reports[-1] if self.reports else None
        return {
            "day": self.day,
            "visitsToday": self.visits_today,
            "windowStartDay": self.stcm.window_start_day,
            "windowEndDay": self.stcm.window_end_day,
            "windowEntries": len(self.stcm),
            "currentContext": self.current_context,
            "latestDetections": list(self.latest_detections),
            "teachBufferCount": len(self.teach_buffer),
            "missingList": self.missing.to_list(),
            "storageItems": sorted(last.storage_items) if last else [],
            "pendingStorageObserved": sorted(self.storage_observed),
            "vocabulary": self.vocab.to_json(),
            "contexts": self.env.to_dict(),
            "clusters": [
                {"label": label, "isStorage": is_storage}
                for _, label, is_storage in self.net.clusters()
            ],
            "reportCount": len(self.reports),
            "lastReport": last.to_dict() if last else None,
        }

    def snapshot(self) -> StateSnapshot:
        return StateSnapshot(
            vocabulary=self.vocab,
            network=self.net,
            stcm=self.stcm,
            missing_list=self.missing,
            day_cursor=self.day,
            rng_state=rng_state_of(self.rng),
        )

    def save(self, path) -> None:
        with self._lock:
            save_state(self.snapshot(), path)


def script_to_commands(script: ScenarioScript) -> List[tuple]:
    """Translate a fully visit-planned script into the equivalent command
    stream: (verb, payload) pairs that reproduce run_scenario exactly.

    Requires an explicit visit plan with exactly visits_per_day entries for
    every day so the command path consumes the RNG in the same order as the
    scripted path.
    """
    commands: List[tuple] = []
    env = script.build_environment()
    storage = env.storage_contexts()
    for day in range(1, script.duration_days + 1):
        plan = script.visit_plan.get(day)
        if plan is None or len(plan) != script.visits_per_day:
            raise ValueError(
                "script_to_commands needs a full visit plan "
                f"({script.visits_per_day} visits) for day {day}"
            )
        for event in script.events_for(day):
            commands.append(("event", event.to_dict()))
        for context in plan:
            commands.append(("visit", {"context": context}))
        if day in script.storage_visits:
            for context in storage:
                commands.append(("visit", {"context": context}))
        if day % script.window_days == 0:
            commands.append(("report", {}))
    return commands
