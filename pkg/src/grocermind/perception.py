"""Synthetic perception channel: feature model, NCM classifier, noise.

Stands in for the camera -> detector -> feature-extractor stack of a real
robot. Each object category owns a true feature mean; a visit to a context
draws noisy features for the items present and classifies them with a
nearest-class-mean (NCM) classifier. Detection errors (misses, feature-level
misclassifications, spurious clutter detections) are injected with
configurable rates so scenario runs can reproduce realistic error regimes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import UnknownContextError
from .vocab import Vocabulary

DEFAULT_FEATURE_DIM = 32
DEFAULT_SIGMA = 0.1

# Default error rates reproduce the measured channel of the reference
# deployment: P(miss or misclassify) = 0.3 + 0.7 * 0.2 = 0.44, and a mean
# of 0.65 spurious detections per visit.
DEFAULT_P_MISS = 0.3
DEFAULT_P_MISCLASSIFY = 0.2
DEFAULT_SPURIOUS_RATE = 0.65


@dataclass
class NoiseProfile:
    """Error rates of the perception channel.

    p_miss_detect    -- probability an item produces no detection at all.
    p_misclassify    -- probability a detection's feature is drawn from a
                        uniformly-random wrong class's mean.
    spurious_rate    -- Poisson mean of extra clutter detections per visit.
    """

    p_miss_detect: float = DEFAULT_P_MISS
    p_misclassify: float = DEFAULT_P_MISCLASSIFY
    spurious_rate: float = DEFAULT_SPURIOUS_RATE

    def __post_init__(self):
        if not 0.0 <= self.p_miss_detect <= 1.0:
            raise ValueError("p_miss_detect must be in [0, 1]")
        if not 0.0 <= self.p_misclassify <= 1.0:
            raise ValueError("p_misclassify must be in [0, 1]")
        if self.spurious_rate < 0.0:
            raise ValueError("spurious_rate must be non-negative")

    @classmethod
    def noise_free(cls) -> "NoiseProfile":
        return cls(0.0, 0.0, 0.0)

    def to_dict(self) -> dict:
        return {
            "pMissDetect": self.p_miss_detect,
            "pMisclassify": self.p_misclassify,
            "spuriousRate": self.spurious_rate,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NoiseProfile":
        return cls(
            p_miss_detect=float(data.get("pMissDetect", DEFAULT_P_MISS)),
            p_misclassify=float(data.get("pMisclassify", DEFAULT_P_MISCLASSIFY)),
            spurious_rate=float(data.get("spuriousRate", DEFAULT_SPURIOUS_RATE)),
        )


@dataclass
class SyntheticFeatureModel:
    """Ground-truth feature distribution of the simulated world.

    Every category c emits features from N(class_means_true[c], sigma^2 I).
    """

    feature_dim: int
    class_means_true: Dict[str, np.ndarray]
    sigma: float = DEFAULT_SIGMA

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        for label, mean in self.class_means_true.items():
            mean = np.asarray(mean, dtype=np.float64)
            if mean.shape != (self.feature_dim,):
                raise ValueError(f"mean for {label!r} has wrong dimension")
            self.class_means_true[label] = mean

    @classmethod
    def random(
        cls,
        vocab: Vocabulary,
        feature_dim: int = DEFAULT_FEATURE_DIM,
        sigma: float = DEFAULT_SIGMA,
        seed: int = 0,
    ) -> "SyntheticFeatureModel":
        """Draw one standard-normal mean per category.

        In feature_dim >= 8 the expected pairwise separation is tens of
        sigmas for the default sigma, so classes are well separated.
        """
        rng = np.random.default_rng(seed)
        means = {
            label: rng.standard_normal(feature_dim) for label in vocab.labels
        }
        return cls(feature_dim=feature_dim, class_means_true=means, sigma=sigma)

    def min_separation(self) -> float:
        """Smallest pairwise Euclidean distance between class means."""
        means = list(self.class_means_true.values())
        best = np.inf
        for i in range(len(means)):
            for j in range(i + 1, len(means)):
                best = min(best, float(np.linalg.norm(means[i] - means[j])))
        return best

    def sample_feature(self, label: str, rng: np.random.Generator) -> np.ndarray:
        mean = self.class_means_true[label]
        return mean + self.sigma * rng.standard_normal(self.feature_dim)

    def training_set(
        self, samples_per_class: int, rng: np.random.Generator
    ) -> List[Tuple[np.ndarray, str]]:
        """Labeled feature draws for classifier training, in label order."""
        out = []
        for label in self.class_means_true:
            for _ in range(samples_per_class):
                out.append((self.sample_feature(label, rng), label))
        return out

    def to_dict(self) -> dict:
        return {
            "featureDim": self.feature_dim,
            "sigma": self.sigma,
            "classMeans": {
                label: mean.tolist()
                for label, mean in self.class_means_true.items()
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SyntheticFeatureModel":
        return cls(
            feature_dim=int(data["featureDim"]),
            sigma=float(data["sigma"]),
            class_means_true={
                label: np.asarray(mean, dtype=np.float64)
                for label, mean in data["classMeans"].items()
            },
        )


@dataclass
class Detection:
    """One classified detection emitted by a context visit.

    ground_truth_label is None for spurious (clutter) detections; it exists
    only so experiments can score the channel, the reasoner never sees it.
    """

    feature: np.ndarray
    predicted_label: str
    ground_truth_label: Optional[str]


class NcmClassifier:
    """Nearest-class-mean classifier over feature vectors.

    Class means are running arithmetic means of the training features; the
    per-class sample counts make incremental updates exact. Prediction is
    the class whose mean is Euclidean-closest to the input, ties broken by
    the position of the class in the training order (vocabulary order when
    a vocabulary is supplied at training time).
    """

    def __init__(self, feature_dim: int, class_order: Sequence[str]):
        self.feature_dim = feature_dim
        self.class_order: List[str] = list(class_order)
        self.class_means: Dict[str, np.ndarray] = {}
        self.counts: Dict[str, int] = {}

    @property
    def n_classes(self) -> int:
        return len(self.class_means)

    def add_sample(self, feature: np.ndarray, label: str) -> None:
        """Fold one labeled feature into the running class mean."""
        feature = np.asarray(feature, dtype=np.float64)
        if feature.shape != (self.feature_dim,):
            raise ValueError("feature has wrong dimension")
        if label not in self.class_means:
            if label not in self.class_order:
                self.class_order.append(label)
            self.class_means[label] = feature.copy()
            self.counts[label] = 1
        else:
            n = self.counts[label] + 1
            self.class_means[label] += (feature - self.class_means[label]) / n
            self.counts[label] = n

    def classify(self, feature: np.ndarray) -> str:
        """Label of the Euclidean-nearest class mean."""
        if not self.class_means:
            raise ValueError("classifier has no trained classes")
        feature = np.asarray(feature, dtype=np.float64)
        ordered = [c for c in self.class_order if c in self.class_means]
        means = np.stack([self.class_means[c] for c in ordered])
        dists = np.linalg.norm(means - feature, axis=1)
        return ordered[int(np.argmin(dists))]

    def classify_batch(self, features: np.ndarray) -> List[str]:
        """Vectorized classify for an (n, feature_dim) array."""
        if not self.class_means:
            raise ValueError("classifier has no trained classes")
        features = np.asarray(features, dtype=np.float64)
        ordered = [c for c in self.class_order if c in self.class_means]
        means = np.stack([self.class_means[c] for c in ordered])
        d2 = ((features[:, None, :] - means[None, :, :]) ** 2).sum(axis=2)
        return [ordered[i] for i in np.argmin(d2, axis=1)]

    def to_dict(self) -> dict:
        return {
            "featureDim": self.feature_dim,
            "classOrder": list(self.class_order),
            "classMeans": {c: m.tolist() for c, m in self.class_means.items()},
            "counts": dict(self.counts),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NcmClassifier":
        clf = cls(int(data["featureDim"]), data["classOrder"])
        clf.class_means = {
            c: np.asarray(m, dtype=np.float64)
            for c, m in data["classMeans"].items()
        }
        clf.counts = {c: int(n) for c, n in data["counts"].items()}
        return clf


def train_ncm(
    samples: Sequence[Tuple[np.ndarray, str]],
    vocab: Optional[Vocabulary] = None,
) -> NcmClassifier:
    """Fit an NCM classifier from (feature, label) pairs.

    When a vocabulary is given, its label order fixes the tie-break order;
    otherwise first appearance in the sample stream does.
    """
    if not samples:
        raise ValueError("cannot train NCM classifier on an empty sample list")
    feature_dim = int(np.asarray(samples[0][0]).shape[0])
    order = list(vocab.labels) if vocab is not None else []
    clf = NcmClassifier(feature_dim, order)
    for feature, label in samples:
        clf.add_sample(feature, label)
    return clf


def sense_context(
    env,
    context_id: str,
    noise: NoiseProfile,
    model: SyntheticFeatureModel,
    classifier: NcmClassifier,
    rng: np.random.Generator,
) -> List[Detection]:
    """Simulate one visit: emit classified detections for a context's items.

    Per item instance (in instance-id order so draws are reproducible):
    skip it with probability p_miss_detect; otherwise draw its feature from
    the true class mean, or from a uniformly-random wrong class's mean with
    probability p_misclassify, then classify. Finally emit
    Poisson(spurious_rate) clutter detections with uniformly random class
    features. All randomness comes from ``rng``.
    """
    if context_id not in env.contexts:
        raise UnknownContextError(f"unknown context: {context_id!r}")
    labels = list(model.class_means_true.keys())
    detections: List[Detection] = []
    for instance_id, category in env.items_in(context_id):
        if rng.random() < noise.p_miss_detect:
            continue
        source = category
        if len(labels) > 1 and rng.random() < noise.p_misclassify:
            wrong = [c for c in labels if c != category]
            source = wrong[int(rng.integers(len(wrong)))]
        feature = model.sample_feature(source, rng)
        detections.append(
            Detection(
                feature=feature,
                predicted_label=classifier.classify(feature),
                ground_truth_label=category,
            )
        )
    n_spurious = int(rng.poisson(noise.spurious_rate)) if noise.spurious_rate > 0 else 0
    for _ in range(n_spurious):
        source = labels[int(rng.integers(len(labels)))]
        feature = model.sample_feature(source, rng)
        detections.append(
            Detection(
                feature=feature,
                predicted_label=classifier.classify(feature),
                ground_truth_label=None,
            )
        )
    return detections


def detected_labels(detections: Sequence[Detection]) -> List[str]:
    """Predicted labels of a detection list, in emission order."""
    return [d.predicted_label for d in detections]
