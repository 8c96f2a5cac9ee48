"""grocermind: dual-memory contextual reasoning for household grocery tracking.

The package pairs a long-term contextual memory (an incremental SUSTAIN
clustering network over object-presence vectors) with a short-term window
buffer of per-visit observations. Comparing the two predicts which items
have gone missing from a simulated household over multi-day horizons,
tolerating moved items, replaced items, storage stock, and perception
errors. A scriptable discrete-event simulator, a persistence layer, a CLI
and an HTTP/JSON service round out the system.
"""

from .errors import (
    CommandError,
    DimensionError,
    EmptyNetworkError,
    GrocermindError,
    PersistenceError,
    ScenarioError,
    StateConsistencyError,
    StateParseError,
    UnknownContextError,
    UnknownInstanceError,
    VersionMismatchError,
    WindowError,
)
from .perception import (
    Detection,
    NcmClassifier,
    NoiseProfile,
    SyntheticFeatureModel,
    detected_labels,
    sense_context,
    train_ncm,
)
from .persistence import (
    StateSnapshot,
    dumps_state,
    load_state,
    rng_from_state,
    rng_state_of,
    save_state,
)
from .reasoner import (
    PRESENCE_THETA,
    MissingList,
    MissingReport,
    PredictionLV,
    aggregate_window,
    apply_storage,
    decode_missing,
    diff_with_user_list,
    observed_set,
    prediction_lv,
    reset_list,
    update_missing_list,
    window_report,
)
from .session import Session, script_to_commands
from .simulation import (
    Environment,
    ScenarioEvent,
    ScenarioScript,
    apply_event,
    build_perception,
    prepare_scenario,
    run_scenario,
    schedule_day,
    teach_network,
)
from .stcm import StcmBuffer
from .sustain import Cluster, SustainNetwork, SustainParams
from .vocab import LatentVariable, Vocabulary, decode, encode

__version__ = "0.1.0"

__all__ = [
    "CommandError",
    "DimensionError",
    "EmptyNetworkError",
    "GrocermindError",
    "PersistenceError",
    "ScenarioError",
    "StateConsistencyError",
    "StateParseError",
    "UnknownContextError",
    "UnknownInstanceError",
    "VersionMismatchError",
    "WindowError",
    "Detection",
    "NcmClassifier",
    "NoiseProfile",
    "SyntheticFeatureModel",
    "detected_labels",
    "sense_context",
    "train_ncm",
    "StateSnapshot",
    "dumps_state",
    "load_state",
    "rng_from_state",
    "rng_state_of",
    "save_state",
    "PRESENCE_THETA",
    "MissingList",
    "MissingReport",
    "PredictionLV",
    "aggregate_window",
    "apply_storage",
    "decode_missing",
    "diff_with_user_list",
    "observed_set",
    "prediction_lv",
    "reset_list",
    "update_missing_list",
    "window_report",
    "Session",
    "script_to_commands",
    "Environment",
    "ScenarioEvent",
    "ScenarioScript",
    "apply_event",
    "build_perception",
    "prepare_scenario",
    "run_scenario",
    "schedule_day",
    "teach_network",
    "StcmBuffer",
    "Cluster",
    "SustainNetwork",
    "SustainParams",
    "LatentVariable",
    "Vocabulary",
    "decode",
    "encode",
]
