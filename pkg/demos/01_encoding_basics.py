"""
Items, vocabularies, and presence vectors
=========================================

The system describes "what is in a room" as a binary presence vector over
a fixed vocabulary of object categories. This demo builds a vocabulary,
encodes a couple of camera sightings, and decodes a vector back to labels.
"""

import numpy as np

from grocermind import Vocabulary, decode, encode

# A vocabulary fixes the dimension and the meaning of every component.
vocab = Vocabulary(["milk", "apple", "banana", "cereal"])
print("vocabulary:", ", ".join(vocab.labels))
print("dimension :", vocab.dimension)

# Encoding a visit: the detector reported milk and two apples. Counts do
# not matter, only presence, so both apples collapse into one component.
lv = encode(["milk", "apple", "apple"], vocab, day=1, context_label="kitchen")
print("\nkitchen observation on day", lv.day)
for label, value in zip(vocab.labels, lv.values):
    print(f"  {label:<7} {value:.0f}")

# Unknown labels are skipped (with a log warning), not an error: a clutter
# detection of a category outside the vocabulary cannot crash a visit.
lv2 = encode(["milk", "unicorn"], vocab, day=1, context_label="kitchen")
print("\nwith an out-of-vocabulary detection:", lv2.values)

# Decoding turns any score vector back into labels. The threshold is
# strict, so exact zeros never decode to a sighting.
scores = np.array([0.0, 0.9, 0.4, 0.0])
print("\nscores", scores, "decode above 0.5 ->",
      sorted(decode(scores, 0.5, vocab)))
print("scores", scores, "decode above 0.0 ->",
      sorted(decode(scores, 0.0, vocab)))
