"""
The synthetic perception channel
================================

Instead of a real camera the simulator draws Gaussian feature vectors
around per-category prototypes and classifies them with a nearest-class-
mean (NCM) classifier. Detection errors are injected at configurable
rates. This demo trains the channel and then measures the error rates
back out of it.
"""

import numpy as np

from grocermind import (
    Environment,
    NoiseProfile,
    SyntheticFeatureModel,
    sense_context,
    train_ncm,
    Vocabulary,
)

vocab = Vocabulary(["milk", "apple", "banana", "cereal", "book"])

# One 32-dimensional prototype per category. Standard-normal prototypes in
# 32 dimensions sit far apart compared to the sigma=0.1 sample scatter.
model = SyntheticFeatureModel.random(vocab, feature_dim=32, sigma=0.1, seed=7)
print(f"smallest prototype separation: {model.min_separation():.2f} "
      f"(sample scatter sigma = {model.sigma})")

# Train the classifier on 20 labeled draws per category.
rng = np.random.default_rng(8)
classifier = train_ncm(model.training_set(samples_per_class=20, rng=rng), vocab)

# A small world: one shelf holding one milk carton.
env = Environment({"shelf": {"storage": False, "items": {"milk1": "milk"}}})

# The default noise profile: 30% outright misses, 20% misclassifications
# of the detections that do happen, 0.65 expected clutter detections per
# visit. Together 44% of items fail to produce a correct detection.
noise = NoiseProfile()
print("\nnoise profile:", noise.to_dict())

visits = 20000
misses = 0
wrong = 0
clutter = 0
for _ in range(visits):
    detections = sense_context(env, "shelf", noise, model, classifier, rng)
    real = [d for d in detections if d.ground_truth_label is not None]
    clutter += len(detections) - len(real)
    if not real:
        misses += 1
    elif real[0].predicted_label != "milk":
        wrong += 1

print(f"\nover {visits} visits to the shelf:")
print(f"  missed entirely      : {misses / visits:.3f}   (configured 0.300)")
print(f"  detected but wrong   : {wrong / visits:.3f}   (expect ~0.7*0.2 = 0.140)")
print(f"  clutter per visit    : {clutter / visits:.3f}   (configured 0.650)")

# Noise-free perception is exact, which the scenario oracles rely on.
clean = sense_context(env, "shelf", NoiseProfile.noise_free(), model,
                      classifier, rng)
print("\nnoise-free visit sees:", [d.predicted_label for d in clean])
