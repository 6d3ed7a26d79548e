"""
SR episode event types + reference descriptions explaining their role.
"""

from dataclasses import dataclass


@dataclass
class Fault:
    """A fault starts on a sensor (reported by the detection oracle)."""

    sensor_id: str
    fault_type: str
    permanent: bool


@dataclass
class Remove:
    """The failed sensor is dropped from the array."""

    sensor_id: str


@dataclass
class BeginRepair:
    """A replacement unit is plugged in; its features are quarantined."""

    sensor_id: str
    replacement_id: str


@dataclass
class Ready:
    """The SR pool is full and the reservoir completely renewed."""

    sensor_id: str
    samples_collected: int


@dataclass
class Merge:
    """The replacement's features join the UOS model."""

    sensor_id: str
    n_features: int
    n_preselected: int


EventBody = Fault | Remove | BeginRepair | Ready | Merge

# CSV event names, keyed by type.
EVENT_NAMES: dict[type, str] = {
    Fault: "fault",
    Remove: "remove",
    BeginRepair: "begin_repair",
    Ready: "ready",
    Merge: "merge",
}


def event_detail(body: EventBody) -> str:
    """Free-text detail column of the SR episode CSV."""
    match body:
        case Fault(_, fault_type, permanent):
            return f"{fault_type}/{'permanent' if permanent else 'temporary'}"
        case Remove():
            return ""
        case BeginRepair(_, replacement_id):
            return f"replacement={replacement_id}"
        case Ready(_, samples_collected):
            return f"samples={samples_collected}"
        case Merge(_, n_features, n_preselected):
            return f"features={n_features};preselected={n_preselected}"
        case _:
            raise ValueError(f"No detail mapped to type for event: {body}")
