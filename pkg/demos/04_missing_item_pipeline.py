"""
From visits to a missing-item report
====================================

One reporting window, step by step: visits produce observation vectors,
each is scored against the learned clusters, the scores multiply across
the window, and the positive survivors decode into missing candidates.
The key property: a single sighting anywhere in the window zeroes an
item's score for good, so only items seen in no visit at all survive.
"""

import numpy as np

from grocermind import (
    MissingList,
    SustainNetwork,
    Vocabulary,
    aggregate_window,
    decode_missing,
    encode,
    prediction_lv,
    window_report,
)

vocab = Vocabulary(["milk", "apple", "banana", "cereal"])
net = SustainNetwork(vocab)
net.learn_example(encode(["milk", "apple", "banana", "cereal"], vocab,
                         day=0, context_label="kitchen"), "kitchen")

# Two days of kitchen visits; the milk ran out before the first one and
# the banana was eaten after day 1.
day1 = encode(["apple", "banana", "cereal"], vocab, day=1,
              context_label="kitchen")
day2 = encode(["apple", "cereal"], vocab, day=2, context_label="kitchen")

np.set_printoptions(precision=3, suppress=True)
v1 = prediction_lv(day1, net)
v2 = prediction_lv(day2, net)
print("labels         :", list(vocab.labels))
print("day-1 scores   :", v1.values, " (zero = seen, positive = not seen)")
print("day-2 scores   :", v2.values)

# Multiplying across the window keeps only items unseen on every day:
# banana was seen on day 1, so its day-2 score cannot bring it back.
v_final = aggregate_window([v1, v2])
print("window product :", v_final)

candidates = decode_missing(v_final, net, vocab)
print("missing        :", sorted(candidates))

# window_report wraps the same steps and maintains the persistent list.
report, missing = window_report([day1, day2], net, vocab, MissingList(),
                                storage_observed=set(), window_end_day=2)
print("\nreport:", report.to_dict())

# Next window: milk is restocked and seen again, so the update rule
# (drop what was observed, add what was predicted) clears it.
day3 = encode(["milk", "apple", "banana", "cereal"], vocab, day=3,
              context_label="kitchen")
report2, missing = window_report([day3], net, vocab, missing,
                                 storage_observed=set(), window_end_day=4)
print("after restock :", report2.to_dict()["missingList"])
