"""
Storage checks and the grocery-list diff
========================================

Two quality-of-life behaviors on top of the core tracker. First, items
that vanish from their room but sit in a storage context (cupboard,
basement) are reported as "in storage", not "missing". Second, the
persistent missing list can be diffed against the user's own grocery
list to show what they forgot, and reset once they restock.

This demo drives a live session through its command interface, the same
verbs the HTTP service and the web UI speak.
"""

from grocermind import ScenarioScript, Session

script = ScenarioScript(
    duration_days=2,
    contexts={
        "kitchen": {"storage": False,
                    "items": {"milk1": "milk", "apple1": "apple",
                              "cereal1": "cereal"}},
        "office": {"storage": False, "items": {"book1": "book"}},
        "cupboard": {"storage": True, "items": {"cereal2": "cereal"}},
    },
    visits_per_day=2,
    window_days=2,
    rng_seed=11,
)

session = Session(script, pretrain=True)

# Someone finishes the milk and takes the cereal box to the cupboard.
session.handle_command("event", {"action": "remove", "instance": "milk1"})
session.handle_command("event", {"action": "move", "instance": "cereal1",
                                 "to": "cupboard"})

# Two days of visits, plus one storage check.
for _ in range(2):
    session.handle_command("visit", {"context": "kitchen"})
    session.handle_command("visit", {"context": "office"})
session.handle_command("visit", {"context": "cupboard"})

report = session.handle_command("report")
print("missing      :", report["missingList"])
print("in storage   :", report["storageItems"])

# The user drafts a grocery list; the diff shows what it fails to cover.
diff = session.handle_command("grocery-diff", {"items": ["apple", "bread"]})
print("user list    :", diff["userList"])
print("still needed :", diff["difference"])

# After shopping, reset clears the persistent list.
session.handle_command("reset")
print("after reset  :", session.handle_command("state")["missingList"])
