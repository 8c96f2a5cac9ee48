"""Long-term contextual memory: an incremental SUSTAIN clustering network.

The network holds one or more labeled clusters per household context plus a
shared per-dimension attention vector lambda. Training is supervised and
incremental: a labeled observation either recruits a new cluster (when the
winning cluster predicts the wrong label, or the label is new) or pulls the
winner toward the observation and sharpens the attention weights.

Cluster activation for an observation x:

    H_i = sum_j lambda_j^r * exp(-lambda_j * |x_j - c_i[j]|) / sum_j lambda_j^r

Lateral inhibition rescales activations by H_i^beta / sum_m H_m^beta before
category read-out; the rescaling is monotone so the winning cluster is
unchanged, which predict_category asserts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import DimensionError, EmptyNetworkError
from .vocab import LatentVariable, Vocabulary

LAMBDA_FLOOR = 1e-6


@dataclass
class SustainParams:
    """Hyperparameters of the network.

    r    -- attentional focus exponent (weights lambda_j^r in activation).
    beta -- lateral inhibition exponent.
    eta  -- learning rate for centroid and lambda updates.
    lambda_init -- initial per-dimension tuning.
    """

    r: float = 2.0
    beta: float = 1.0
    eta: float = 0.1
    lambda_init: float = 1.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be non-negative")
        if self.beta < 0:
            raise ValueError("beta must be non-negative")
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must be in (0, 1]")
        if self.lambda_init <= 0:
            raise ValueError("lambda_init must be positive")

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "beta": self.beta,
            "eta": self.eta,
            "lambdaInit": self.lambda_init,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SustainParams":
        return cls(
            r=float(data["r"]),
            beta=float(data["beta"]),
            eta=float(data["eta"]),
            lambda_init=float(data["lambdaInit"]),
        )


@dataclass(eq=False)
class Cluster:
    """One learned context prototype."""

    centroid: np.ndarray
    label: str
    is_storage: bool = False

    def __post_init__(self):
        self.centroid = np.asarray(self.centroid, dtype=np.float64)
        if not self.label:
            raise ValueError("cluster label must be non-empty")
        if np.any(self.centroid < 0.0) or np.any(self.centroid > 1.0):
            raise ValueError("centroid components must lie in [0, 1]")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cluster)
            and np.array_equal(self.centroid, other.centroid)
            and self.label == other.label
            and self.is_storage == other.is_storage
        )

    def to_dict(self) -> dict:
        return {
            "centroid": self.centroid.tolist(),
            "label": self.label,
            "isStorage": self.is_storage,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Cluster":
        return cls(
            centroid=np.asarray(data["centroid"], dtype=np.float64),
            label=data["label"],
            is_storage=bool(data["isStorage"]),
        )


class SustainNetwork:
    """Supervised incremental clustering over observation LVs.

    Single-writer: learn_example mutates the network; predict_category and
    clusters are read-only.
    """

    def __init__(self, vocab: Vocabulary, params: Optional[SustainParams] = None):
        self.vocab = vocab
        self.params = params or SustainParams()
        self.lambda_ = np.full(
            vocab.dimension, self.params.lambda_init, dtype=np.float64
        )
        self._clusters: List[Cluster] = []

    # -- read-only access ------------------------------------------------

    @property
    def n_clusters(self) -> int:
        return len(self._clusters)

    def clusters(self) -> List[Tuple[np.ndarray, str, bool]]:
        """Snapshot of (centroid copy, label, is_storage) in recruitment order."""
        return [
            (c.centroid.copy(), c.label, c.is_storage) for c in self._clusters
        ]

    def household_clusters(self) -> List[Cluster]:
        """Clusters of regular (non-storage) contexts."""
        return [c for c in self._clusters if not c.is_storage]

    def labels(self) -> List[str]:
        return [c.label for c in self._clusters]

    def activations(self, x: LatentVariable) -> np.ndarray:
        """Raw activation H_i of every cluster for observation x."""
        self._check_dimension(x)
        if not self._clusters:
            return np.zeros(0)
        centroids = np.stack([c.centroid for c in self._clusters])
        mu = np.abs(x.values[None, :] - centroids)
        weights = self.lambda_ ** self.params.r
        return (weights[None, :] * np.exp(-self.lambda_[None, :] * mu)).sum(
            axis=1
        ) / weights.sum()

    # -- learning --------------------------------------------------------

    def learn_example(
        self, x: LatentVariable, label: str, is_storage: bool = False
    ) -> bool:
        """Train on one supervised example; return True iff a cluster was
        recruited.

        Recruitment happens when no cluster carries ``label`` yet or the
        most-activated cluster carries a different label (category
        prediction failure). Otherwise the winner moves toward x by eta and
        the shared lambda sharpens around the winner's match.
        """
        self._check_dimension(x)
        existing_labels = {c.label for c in self._clusters}
        if label not in existing_labels:
            self._recruit(x, label, is_storage)
            return True
        h = self.activations(x)
        winner = int(np.argmax(h))
        if self._clusters[winner].label != label:
            self._recruit(x, label, is_storage)
            return True
        cluster = self._clusters[winner]
        eta = self.params.eta
        mu = np.abs(x.values - cluster.centroid)
        cluster.centroid += eta * (x.values - cluster.centroid)
        lam_mu = self.lambda_ * mu
        self.lambda_ += eta * np.exp(-lam_mu) * (1.0 - lam_mu)
        np.maximum(self.lambda_, LAMBDA_FLOOR, out=self.lambda_)
        return False

    def _recruit(self, x: LatentVariable, label: str, is_storage: bool) -> None:
        self._clusters.append(
            Cluster(centroid=x.values.copy(), label=label, is_storage=is_storage)
        )

    # -- prediction ------------------------------------------------------

    def predict_category(self, x: LatentVariable) -> str:
        """Context label of the most-activated cluster after lateral
        inhibition.
        """
        if not self._clusters:
            raise EmptyNetworkError("cannot predict with an empty network")
        h = self.activations(x)
        hb = h ** self.params.beta
        h_out = hb / hb.sum() * h
        winner = int(np.argmax(h_out))
        # Monotone reweighting cannot move the argmax; guard the invariant.
        assert winner == int(np.argmax(h))
        return self._clusters[winner].label

    # -- plumbing --------------------------------------------------------

    def _check_dimension(self, x: LatentVariable) -> None:
        if x.dimension != self.vocab.dimension:
            raise DimensionError(
                f"LV dimension {x.dimension} != vocabulary dimension "
                f"{self.vocab.dimension}"
            )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SustainNetwork)
            and self.vocab == other.vocab
            and self.params == other.params
            and np.array_equal(self.lambda_, other.lambda_)
            and self._clusters == other._clusters
        )

    def to_dict(self) -> dict:
        return {
            "lambda": self.lambda_.tolist(),
            "params": self.params.to_dict(),
            "clusters": [c.to_dict() for c in self._clusters],
        }

    @classmethod
    def from_dict(cls, data: dict, vocab: Vocabulary) -> "SustainNetwork":
        net = cls(vocab, SustainParams.from_dict(data["params"]))
        net.lambda_ = np.asarray(data["lambda"], dtype=np.float64)
        if net.lambda_.shape != (vocab.dimension,):
            raise DimensionError("lambda length does not match vocabulary")
        if np.any(net.lambda_ <= 0):
            raise ValueError("lambda components must be strictly positive")
        net._clusters = [Cluster.from_dict(c) for c in data["clusters"]]
        for c in net._clusters:
            if c.centroid.shape != (vocab.dimension,):
                raise DimensionError("cluster centroid does not match vocabulary")
        return net
