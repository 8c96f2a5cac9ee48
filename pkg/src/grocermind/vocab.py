"""Object vocabulary and latent-variable encoding.

A context observation is represented as a point in a conceptual space with
one dimension per object category: the latent variable (LV). Observation
LVs are binary presence vectors; prediction LVs (see ``reasoner``) carry
graded missingness scores in [0, 1].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DimensionError

logger = logging.getLogger(__name__)

OBSERVATION = "observation"
PREDICTION = "prediction"


class Vocabulary:
    """Ordered, immutable list of object-category names.

    The position of a label defines its LV dimension, so the order is fixed
    for the lifetime of the system: every stored LV and cluster centroid is
    indexed against it.
    """

    def __init__(self, labels: Sequence[str]):
        labels = list(labels)
        if not labels:
            raise ValueError("vocabulary must contain at least one label")
        if len(set(labels)) != len(labels):
            raise ValueError("vocabulary labels must be unique")
        self._labels = tuple(labels)
        self._index = {label: j for j, label in enumerate(labels)}

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def dimension(self) -> int:
        return len(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def __iter__(self):
        return iter(self._labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self._labels == other._labels

    def __repr__(self) -> str:
        return f"Vocabulary({list(self._labels)!r})"

    def index(self, label: str) -> int:
        return self._index[label]

    def to_json(self) -> list:
        return list(self._labels)

    @classmethod
    def from_json(cls, data: list) -> "Vocabulary":
        return cls(data)


@dataclass(eq=False)
class LatentVariable:
    """One encoded context observation (or prediction) in conceptual space.

    values -- length-d vector with components in [0, 1]; observation LVs
              are binary presence indicators.
    day    -- non-negative logical day index supplied by the scheduler.
    context_label -- context name if known (teaching, scripted visits).
    kind   -- OBSERVATION or PREDICTION.
    """

    values: np.ndarray
    day: int = 0
    context_label: Optional[str] = None
    kind: str = OBSERVATION

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1:
            raise DimensionError("LV values must be a 1-d vector")
        if np.any(self.values < 0.0) or np.any(self.values > 1.0):
            raise ValueError("LV components must lie in [0, 1]")
        if self.day < 0:
            raise ValueError("day index must be non-negative")
        if self.kind not in (OBSERVATION, PREDICTION):
            raise ValueError(f"unknown LV kind: {self.kind!r}")
        if self.kind == OBSERVATION and not np.all(
            (self.values == 0.0) | (self.values == 1.0)
        ):
            raise ValueError("observation LV components must be binary")

    @property
    def dimension(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LatentVariable)
            and np.array_equal(self.values, other.values)
            and self.day == other.day
            and self.context_label == other.context_label
            and self.kind == other.kind
        )

    def to_dict(self) -> dict:
        return {
            "values": self.values.tolist(),
            "day": self.day,
            "context": self.context_label,
            "kind": self.kind,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LatentVariable":
        return cls(
            values=np.asarray(data["values"], dtype=np.float64),
            day=int(data["day"]),
            context_label=data.get("context"),
            kind=data.get("kind", OBSERVATION),
        )


def encode(
    detections: Iterable[str],
    vocab: Vocabulary,
    day: int = 0,
    context_label: Optional[str] = None,
) -> LatentVariable:
    """Encode a bag of detected category labels into a binary observation LV.

    Component j is 1 iff label j was detected at least once; duplicate
    detections never change the result. Labels outside the vocabulary are
    dropped and counted in a single warning.
    """
    values = np.zeros(vocab.dimension, dtype=np.float64)
    skipped = 0
    for label in detections:
        if label in vocab:
            values[vocab.index(label)] = 1.0
        else:
            skipped += 1
    if skipped:
        logger.warning(
            "encode: skipped %d out-of-vocabulary detection(s) at context %r",
            skipped,
            context_label,
        )
    return LatentVariable(values=values, day=day, context_label=context_label)


def decode(mask: np.ndarray, threshold: float, vocab: Vocabulary) -> set:
    """Invert the encoding: labels whose mask component strictly exceeds
    ``threshold``.
    """
    mask = np.asarray(mask, dtype=np.float64)
    if mask.shape != (vocab.dimension,):
        raise DimensionError(
            f"mask has length {mask.shape}, vocabulary dimension is {vocab.dimension}"
        )
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    return {vocab.labels[j] for j in np.nonzero(mask > threshold)[0]}
