"""
Learning what belongs where
===========================

Long-term memory is an incremental supervised clustering network. Each
labeled observation either recruits a new cluster (new context, or the
current clusters predicted the wrong context) or refines the winning
cluster's centroid and the shared attention weights. This demo teaches a
four-context household and pokes at what the network learned.
"""

from grocermind import SustainNetwork, SustainParams, Vocabulary, encode

vocab = Vocabulary(["book", "mouse", "keyboard", "stapler", "milk",
                    "apple", "banana", "cereal", "orange", "honey"])

contexts = {
    "home_office": ["book", "mouse", "keyboard", "stapler"],
    "kitchen": ["milk", "apple", "banana", "cereal", "orange", "honey"],
    "dining_area": [],
    "storage_space": ["cereal", "stapler", "honey"],
}

net = SustainNetwork(vocab, SustainParams())
for name, items in contexts.items():
    lv = encode(items, vocab, day=0, context_label=name)
    recruited = net.learn_example(lv, name,
                                  is_storage=(name == "storage_space"))
    print(f"teach {name:<13} -> {'new cluster' if recruited else 'updated'}")

print(f"\n{net.n_clusters} clusters:")
for centroid, label, is_storage in net.clusters():
    held = [vocab.labels[j] for j in range(len(centroid)) if centroid[j] >= 0.5]
    kind = "storage" if is_storage else "regular"
    print(f"  {label:<13} ({kind:<7}) holds: {', '.join(held) or '(nothing)'}")

# Recognition: most of the kitchen in view reads as the kitchen.
partial = encode(["milk", "banana", "orange", "honey"], vocab, day=1,
                 context_label="?")
print("\nfour kitchen items look like:", net.predict_category(partial))
print("activations:",
      ", ".join(f"{label}={h:.3f}"
                for (_, label, _), h in zip(net.clusters(),
                                            net.activations(partial))))

# A mostly-empty view is a different story: with only two items visible,
# the empty dining area explains the vector better than a kitchen with
# four of its six items unaccounted for. Matching absences counts too.
sparse = encode(["milk", "banana"], vocab, day=1, context_label="?")
print("\nbut just milk + banana look like:", net.predict_category(sparse))

# Re-teaching an already-correct context recruits nothing; it only
# sharpens attention (lambda grows on perfectly matching dimensions).
before = net.lambda_.copy()
net.learn_example(encode(contexts["kitchen"], vocab, day=1,
                         context_label="kitchen"), "kitchen")
print("\nre-teaching the kitchen: clusters still", net.n_clusters,
      "| lambda grew by", (net.lambda_ - before).round(3).tolist())
