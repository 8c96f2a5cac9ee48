"""Versioned JSON snapshots of the full reasoning state.

A snapshot bundles everything needed to resume: vocabulary, SUSTAIN
network, the short-term buffer, the persistent missing list, the day
cursor, and the RNG state. Files are written atomically (temp file +
rename) and gated on a format version at load. Floats survive the round
trip exactly: Python serializes them via repr, which is shortest-exact.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import (
    DimensionError,
    StateConsistencyError,
    StateParseError,
    VersionMismatchError,
)
from .reasoner import MissingList
from .stcm import StcmBuffer
from .sustain import SustainNetwork
from .vocab import Vocabulary

FORMAT_VERSION = 1


@dataclass(eq=False)
class StateSnapshot:
    """Complete serializable system state."""

    vocabulary: Vocabulary
    network: SustainNetwork
    stcm: StcmBuffer
    missing_list: MissingList
    day_cursor: int
    rng_state: Optional[dict] = None
    format_version: int = FORMAT_VERSION

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StateSnapshot)
            and self.format_version == other.format_version
            and self.vocabulary == other.vocabulary
            and self.network == other.network
            and self.stcm == other.stcm
            and self.missing_list == other.missing_list
            and self.day_cursor == other.day_cursor
            and self.rng_state == other.rng_state
        )

    def to_dict(self) -> dict:
        return {
            "formatVersion": self.format_version,
            "vocabulary": self.vocabulary.to_json(),
            "network": self.network.to_dict(),
            "stcm": self.stcm.to_dict(),
            "missingList": self.missing_list.to_dict(),
            "dayCursor": self.day_cursor,
            "rngState": self.rng_state,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StateSnapshot":
        try:
            version = int(data["formatVersion"])
        except (KeyError, TypeError, ValueError) as exc:
            raise StateParseError(f"missing or malformed formatVersion: {exc}")
        if version != FORMAT_VERSION:
            raise VersionMismatchError(
                f"state format version {version}, this reader expects {FORMAT_VERSION}"
            )
        try:
            vocab = Vocabulary.from_json(data["vocabulary"])
            network = SustainNetwork.from_dict(data["network"], vocab)
            stcm = StcmBuffer.from_dict(data["stcm"])
            missing = MissingList.from_dict(data["missingList"])
            day_cursor = int(data["dayCursor"])
            rng_state = data.get("rngState")
        except (KeyError, TypeError) as exc:
            raise StateParseError(f"malformed snapshot field: {exc}")
        except (ValueError, DimensionError) as exc:
            raise StateConsistencyError(str(exc))
        snapshot = cls(
            vocabulary=vocab,
            network=network,
            stcm=stcm,
            missing_list=missing,
            day_cursor=day_cursor,
            rng_state=rng_state,
        )
        _validate(snapshot)
        return snapshot


def _validate(snapshot: StateSnapshot) -> None:
    d = snapshot.vocabulary.dimension
    if snapshot.network.lambda_.shape != (d,):
        raise StateConsistencyError("network lambda does not match vocabulary")
    for centroid, _, _ in snapshot.network.clusters():
        if centroid.shape != (d,):
            raise StateConsistencyError(
                "cluster centroid dimension does not match vocabulary"
            )
    for lv in snapshot.stcm.entries:
        if lv.dimension != d:
            raise StateConsistencyError(
                "short-term entry dimension does not match vocabulary"
            )
    unknown = snapshot.missing_list.items - set(snapshot.vocabulary.labels)
    if unknown:
        raise StateConsistencyError(
            f"missing list contains labels outside the vocabulary: {sorted(unknown)}"
        )


def dumps_state(snapshot: StateSnapshot) -> str:
    """Canonical JSON text: sorted keys, stable separators."""
    return json.dumps(snapshot.to_dict(), sort_keys=True, separators=(",", ": "))


def save_state(snapshot: StateSnapshot, path) -> None:
    """Write a snapshot atomically: full temp file first, then rename."""
    path = Path(path)
    text = dumps_state(snapshot)
    fd, tmp = tempfile.mkstemp(
        dir=str(path.parent) or ".", prefix=path.name, suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
            handle.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_state(path) -> StateSnapshot:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise StateParseError(f"cannot read state file {path}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateParseError(f"state file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise StateParseError(f"state file {path} does not hold a JSON object")
    return StateSnapshot.from_dict(data)


def rng_state_of(rng: np.random.Generator) -> dict:
    """JSON-able state of a numpy Generator."""
    return rng.bit_generator.state


def rng_from_state(state: dict) -> np.random.Generator:
    """Rebuild a Generator from a stored bit-generator state."""
    name = state.get("bit_generator", "PCG64")
    bitgen_cls = getattr(np.random, name)
    bitgen = bitgen_cls()
    bitgen.state = state
    return np.random.Generator(bitgen)
