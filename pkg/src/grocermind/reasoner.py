"""Missing-item reasoning over short-term observations and learned clusters.

Per visit, every observation LV x is compared against the household's
non-storage cluster centroids:

    z_i[j] = exp(lambda_j * (x_j - c_i[j]))     then z_i[j] := 0 where x_j > 0
    v[j]   = min(1, mean_i z_i[j])

The clamp makes v exactly zero on every dimension the visit observed, and
strictly positive elsewhere (exponentials never vanish). Multiplying the
per-visit prediction LVs across a window therefore yields a vector that is
positive exactly on the dimensions never observed in the whole window: one
sighting anywhere, on any day, clears an item. Candidates are restricted to
items some household cluster actually contains, items seen in the storage
context are reported separately instead of as missing, and the persistent
missing list is maintained across windows as M' = (M \\ observed) u predicted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Set, Tuple

import numpy as np

from .errors import DimensionError, EmptyNetworkError
from .stcm import StcmBuffer
from .sustain import SustainNetwork
from .vocab import PREDICTION, LatentVariable, Vocabulary

# Minimum centroid strength for a dimension to count as a household item.
# Below this no cluster ever really contained the item, and its prediction
# score would stay positive forever.
PRESENCE_THETA = 0.5

# exp(-700) ~ 1e-304: the floor keeps a mathematically-positive product of
# many small factors from underflowing to an exact zero, which would be
# read as "observed".
_LOG_FLOOR = -700.0


@dataclass(eq=False)
class PredictionLV:
    """Per-visit missingness scores; zero exactly on observed dimensions."""

    values: np.ndarray
    source_day: int

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)

    @property
    def dimension(self) -> int:
        return int(self.values.shape[0])

    def as_lv(self) -> LatentVariable:
        return LatentVariable(
            values=self.values, day=self.source_day, kind=PREDICTION
        )


@dataclass
class MissingList:
    """Persistent set of item labels currently believed missing."""

    items: Set[str] = field(default_factory=set)

    def to_list(self) -> List[str]:
        return sorted(self.items)

    def to_dict(self) -> dict:
        return {"items": self.to_list()}

    @classmethod
    def from_dict(cls, data: dict) -> "MissingList":
        return cls(items=set(data["items"]))


@dataclass
class MissingReport:
    """One reporting-window outcome.

    predicted     -- items newly flagged missing this window (P), after
                     storage exclusion.
    observed      -- items seen at least once in the window's visits (O).
    storage_items -- flagged candidates that turned out to sit in storage.
    missing_list  -- snapshot of the persistent list after the update.
    """

    window_end_day: int
    predicted: Set[str]
    observed: Set[str]
    storage_items: Set[str]
    missing_list: Set[str] = field(default_factory=set)

    def __post_init__(self):
        if self.predicted & self.observed:
            raise ValueError("predicted and observed sets must be disjoint")
        if self.predicted & self.storage_items:
            raise ValueError("storage exclusion left an overlap with predicted")

    def to_dict(self) -> dict:
        return {
            "windowEndDay": self.window_end_day,
            "predicted": sorted(self.predicted),
            "observed": sorted(self.observed),
            "storageItems": sorted(self.storage_items),
            "missingList": sorted(self.missing_list),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MissingReport":
        return cls(
            window_end_day=int(data["windowEndDay"]),
            predicted=set(data["predicted"]),
            observed=set(data["observed"]),
            storage_items=set(data["storageItems"]),
            missing_list=set(data.get("missingList", [])),
        )


def prediction_lv(x: LatentVariable, net: SustainNetwork) -> PredictionLV:
    """Score the missingness of every dimension of one observation.

    Only non-storage clusters participate; the storage context vetoes
    candidates afterwards (apply_storage) instead of shaping the scores.
    """
    household = net.household_clusters()
    if not household:
        raise EmptyNetworkError(
            "prediction requires at least one non-storage cluster"
        )
    if x.dimension != net.vocab.dimension:
        raise DimensionError("observation LV does not match network dimension")
    centroids = np.stack([c.centroid for c in household])
    z = np.exp(net.lambda_[None, :] * (x.values[None, :] - centroids))
    z[:, x.values > 0] = 0.0
    v = np.minimum(z.mean(axis=0), 1.0)
    return PredictionLV(values=v, source_day=x.day)


def aggregate_window(vs: Sequence[PredictionLV]) -> np.ndarray:
    """Per-dimension product of a window's prediction LVs.

    The result is exactly zero wherever any visit scored zero, and strictly
    positive elsewhere: long products are floored at exp(-700) rather than
    allowed to underflow into a false "observed".
    """
    if not vs:
        raise ValueError("cannot aggregate an empty window")
    dims = {v.dimension for v in vs}
    if len(dims) != 1:
        raise DimensionError("prediction LVs have mismatched dimensions")
    stacked = np.stack([v.values for v in vs])
    product = np.prod(stacked, axis=0)
    all_positive = np.all(stacked > 0.0, axis=0)
    underflowed = all_positive & (product <= 0.0)
    if np.any(underflowed):
        logs = np.sum(np.log(stacked[:, underflowed]), axis=0)
        product[underflowed] = np.exp(np.maximum(logs, _LOG_FLOOR))
    return product


def decode_missing(
    v_final: np.ndarray, net: SustainNetwork, vocab: Vocabulary
) -> Set[str]:
    """Candidate missing items: positive final score and known to the
    household.

    The household mask keeps only dimensions some non-storage centroid holds
    at >= PRESENCE_THETA, so vocabulary entries the network never learned
    cannot be flagged.
    """
    v_final = np.asarray(v_final, dtype=np.float64)
    if v_final.shape != (vocab.dimension,):
        raise DimensionError("final LV does not match vocabulary dimension")
    household = net.household_clusters()
    if household:
        strength = np.max(np.stack([c.centroid for c in household]), axis=0)
    else:
        strength = np.zeros(vocab.dimension)
    mask = (v_final > 0.0) & (strength >= PRESENCE_THETA)
    return {vocab.labels[j] for j in np.nonzero(mask)[0]}


def observed_set(
    window_lvs: Iterable[LatentVariable], vocab: Vocabulary
) -> Set[str]:
    """Items seen at least once across a window's observation LVs."""
    seen: Set[str] = set()
    for lv in window_lvs:
        if lv.dimension != vocab.dimension:
            raise DimensionError("observation LV does not match vocabulary")
        seen.update(vocab.labels[j] for j in np.nonzero(lv.values > 0)[0])
    return seen


def apply_storage(
    candidates: Set[str], storage_observed: Set[str]
) -> Tuple[Set[str], Set[str]]:
    """Split candidates into truly-missing and merely-in-storage."""
    return candidates - storage_observed, candidates & storage_observed


def update_missing_list(
    m: MissingList, predicted: Set[str], observed: Set[str]
) -> MissingList:
    """Window update of the persistent list: drop re-observed items, add the
    newly predicted ones.
    """
    return MissingList(items=(m.items - observed) | predicted)


def diff_with_user_list(m: MissingList, user_list: Set[str]) -> Set[str]:
    """Missing items the user's own grocery list does not already cover."""
    return m.items - set(user_list)


def reset_list(m: MissingList) -> MissingList:
    """Fresh empty list (after the user restocks)."""
    return MissingList(items=set())


def window_report(
    window_lvs: Sequence[LatentVariable],
    net: SustainNetwork,
    vocab: Vocabulary,
    missing_list: MissingList,
    storage_observed: Set[str],
    window_end_day: int,
) -> Tuple[MissingReport, MissingList]:
    """Full reporting step for one drained window.

    Empty windows (no visits) predict nothing: with no evidence either way
    the persistent list is left as it stands.
    """
    if window_lvs:
        vs = [prediction_lv(lv, net) for lv in window_lvs]
        candidates = decode_missing(aggregate_window(vs), net, vocab)
    else:
        candidates = set()
    observed = observed_set(window_lvs, vocab)
    predicted, storage_items = apply_storage(candidates, storage_observed)
    updated = update_missing_list(missing_list, predicted, observed)
    report = MissingReport(
        window_end_day=window_end_day,
        predicted=predicted,
        observed=observed,
        storage_items=storage_items,
        missing_list=set(updated.items),
    )
    return report, updated
